#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sandboxgame/best_response.hpp"
#include "sandboxgame/pattern.hpp"
#include "sandboxgame/types.hpp"

namespace sandboxgame {

struct SolverConfig {
  int restarts = 10;                   // random starts per pattern
  int max_iterations = 500;            // ascent iterations per start
  double violation_tolerance = 1e-4;   // max accepted constraint violation
  double best_response_slack = 0.01;   // max accepted attacker regret
  std::uint64_t rng_seed = 0;
};

// One pattern's nonconvex subproblem: maximize utility_am over the naive pi
// (nonnegative, sum at most 1) and the free attack probabilities, subject to
// the pattern's pins and stationarity equalities.
struct SubproblemSpec {
  ConstraintPattern pattern;
  std::vector<int> interior;     // indices with a stationarity equality
  std::vector<double> fixed_rho; // pinned coordinates; NaN where interior

  int types() const { return pattern.size(); }
  int pi_variables() const { return pattern.size(); }
  int rho_variables() const { return static_cast<int>(interior.size()); }
  int equalities() const { return static_cast<int>(interior.size()); }
};

SubproblemSpec build_subproblem(const WorldSetting& s, const ConstraintPattern& c);

struct Candidate {
  std::vector<double> pi;
  MStrategy rho;
  double u_am = 0.0;
};

// Multi-start local search for one subproblem. Each start does projected
// gradient ascent on pi over the capped simplex, with the free attack
// probabilities recovered from the stationarity system at every step.
// Deterministic given cfg.rng_seed. Patterns with no interior coordinate
// reduce to a linear program over pi and are solved exactly.
std::optional<Candidate> solve_subproblem(const WorldSetting& s, const SubproblemSpec& sub,
                                          const SolverConfig& cfg);

struct VerificationReport {
  double violation = 0.0;  // worst constraint violation (pattern + boxes + simplex cap)
  double br_gap = 0.0;     // u_m(exact best response) - u_m(candidate)
  bool feasible = false;
  bool accepted = false;   // feasible and br_gap within cfg.best_response_slack
};

VerificationReport verify_candidate(const WorldSetting& s, const std::vector<double>& pi,
                                    const MStrategy& rho, const SolverConfig& cfg,
                                    const ConstraintPattern* pattern = nullptr);

// Full sweep: every pattern is searched, candidates are kept only when they
// pass verification, and each accepted commitment pi is scored by its honest
// equilibrium value (utility_am under an exact, defender-favoring best
// response) so the returned utilities never ride on the acceptance slack.
// A pattern's unconstrained optimum often sits where the attacker would
// rather switch patterns, so the sweep is followed by a refinement stage: a
// derivative-free ascent directly on the honest value, seeded from the
// natural strategies, the best raw pattern candidates, and random points.
// When nothing is certified anywhere the best natural strategy under an exact
// best response is returned with the fallback flag set.
EquilibriumSolution solve_am_optimal(const WorldSetting& s, const SolverConfig& cfg);

}  // namespace sandboxgame
