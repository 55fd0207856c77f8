#include "sandboxgame/qcqp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "sandboxgame/errors.hpp"
#include "sandboxgame/linear_system.hpp"
#include "sandboxgame/natural.hpp"
#include "sandboxgame/rng.hpp"
#include "sandboxgame/utility.hpp"

namespace sandboxgame {

namespace {

constexpr double kInfeasible = -1e30;
constexpr double kPenaltyWeight = 10.0;
constexpr double kGradStep = 1e-6;
constexpr double kMinStep = 1e-9;

long pattern_ordinal(const ConstraintPattern& c) {
  long ord = 0;
  long base = 1;
  for (int i = 0; i < c.size(); ++i, base *= 3) ord += static_cast<long>(c.binds[i]) * base;
  return ord;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// utility_am for a naive commitment, on raw vectors so that slightly
// out-of-simplex finite-difference probes stay evaluable.
double raw_u_am(const std::vector<double>& d, const std::vector<double>& pi,
                const std::vector<double>& rho) {
  double protected_mass = 0.0;
  for (size_t k = 0; k < d.size(); ++k) protected_mass += d[k] * (1.0 - rho[k]);
  return protected_mass + dot(d, rho) * dot(pi, rho);
}

// Euclidean projection onto { x >= 0, sum(x) <= 1 }. When clamping negatives
// already satisfies the cap that clamp is the projection; otherwise the cap
// binds and this is the usual sorted-threshold simplex projection.
std::vector<double> project_capped_simplex(std::vector<double> x) {
  std::vector<double> clamped = x;
  double sum = 0.0;
  for (double& v : clamped) {
    v = std::max(v, 0.0);
    sum += v;
  }
  if (sum <= 1.0) return clamped;

  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (size_t k = 0; k < sorted.size(); ++k) {
    running += sorted[k];
    double candidate = (running - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  for (double& v : x) v = std::max(v - tau, 0.0);
  return x;
}

struct CommitmentEval {
  bool defined = false;
  double violation = std::numeric_limits<double>::infinity();
  double value = kInfeasible;
  std::vector<double> rho;

  double penalized() const {
    return defined ? value - kPenaltyWeight * violation : kInfeasible;
  }
};

// Recovers the pattern's attack profile under commitment pi: pins are taken as
// given and the interior coordinates solve the stationarity equations
// sum_m (d_k pi_m + d_m pi_k) rho_m = e_k restricted to the free block.
CommitmentEval evaluate_commitment(const WorldSetting& s, const SubproblemSpec& sub,
                                   const std::vector<double>& pi) {
  const int n = sub.types();
  const auto& e = s.existence();
  const auto& d = s.defended();
  const int p = sub.rho_variables();

  CommitmentEval ev;
  ev.rho = sub.fixed_rho;

  if (p > 0) {
    LinearSystem sys;
    sys.n = p;
    sys.a.assign(static_cast<size_t>(p) * p, 0.0);
    sys.b.assign(p, 0.0);
    for (int i = 0; i < p; ++i) {
      const int k = sub.interior[i];
      double rhs = e[k];
      for (int m = 0; m < n; ++m) {
        const double q = d[k] * pi[m] + d[m] * pi[k];
        if (sub.pattern.binds[m] == Bind::Interior) continue;
        rhs -= q * sub.fixed_rho[m];
      }
      sys.b[i] = rhs;
      for (int j = 0; j < p; ++j) {
        const int m = sub.interior[j];
        sys.at(i, j) = d[k] * pi[m] + d[m] * pi[k];
      }
    }

    const LinearSolution sol = solve_linear_system(sys);
    std::optional<std::vector<double>> interior;
    if (sol.outcome == SolveOutcome::Unique)
      interior = sol.x;
    else if (sol.outcome == SolveOutcome::Family)
      interior = family_box_point(sol);
    if (!interior) return ev;
    for (int i = 0; i < p; ++i) ev.rho[sub.interior[i]] = (*interior)[i];
  }

  ev.defined = true;
  ev.violation = 0.0;
  for (int i = 0; i < p; ++i) {
    const double v = ev.rho[sub.interior[i]];
    ev.violation = std::max({ev.violation, -v, v - 1.0});
  }
  for (double& v : ev.rho) v = std::clamp(v, 0.0, 1.0);
  for (int i = 0; i < p; ++i) {
    const int k = sub.interior[i];
    double residual = e[k];
    for (int m = 0; m < n; ++m) residual -= (d[k] * pi[m] + d[m] * pi[k]) * ev.rho[m];
    ev.violation = std::max(ev.violation, std::abs(residual));
  }
  ev.value = raw_u_am(d, pi, ev.rho);
  return ev;
}

struct Tracked {
  bool any = false;
  double value = kInfeasible;
  std::vector<double> pi;
  std::vector<double> rho;
};

void consider(Tracked& best, const CommitmentEval& ev, const std::vector<double>& pi,
              double violation_tol) {
  if (!ev.defined || ev.violation > violation_tol) return;
  if (best.any && ev.value <= best.value) return;
  best.any = true;
  best.value = ev.value;
  best.pi = pi;
  best.rho = ev.rho;
}

// Projected gradient ascent on pi with the pattern's rho recovered at every
// probe. The returned progress lands in `best`; only iterates feasible for the
// pattern are eligible.
void ascend(const WorldSetting& s, const SubproblemSpec& sub, const SolverConfig& cfg,
            std::vector<double> pi, Tracked& best) {
  const int n = sub.types();
  pi = project_capped_simplex(std::move(pi));
  CommitmentEval ev = evaluate_commitment(s, sub, pi);
  consider(best, ev, pi, cfg.violation_tolerance);
  double current = ev.penalized();

  double step = 0.25;
  std::vector<double> grad(n), probe;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    double grad_max = 0.0;
    for (int i = 0; i < n; ++i) {
      probe = pi;
      probe[i] += kGradStep;
      const double up = evaluate_commitment(s, sub, probe).penalized();
      probe[i] = pi[i] - kGradStep;
      const double down = evaluate_commitment(s, sub, probe).penalized();
      grad[i] = (up <= kInfeasible || down <= kInfeasible)
                    ? 0.0
                    : (up - down) / (2.0 * kGradStep);
      grad_max = std::max(grad_max, std::abs(grad[i]));
    }
    if (grad_max < 1e-10) break;

    bool improved = false;
    while (step >= kMinStep) {
      probe = pi;
      for (int i = 0; i < n; ++i) probe[i] += step * grad[i];
      probe = project_capped_simplex(std::move(probe));
      CommitmentEval trial = evaluate_commitment(s, sub, probe);
      if (trial.penalized() > current + 1e-15) {
        pi = std::move(probe);
        current = trial.penalized();
        consider(best, trial, pi, cfg.violation_tolerance);
        step = std::min(step * 2.0, 1.0);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
}

struct Refined {
  std::vector<double> pi;
  StackelbergResponse resp;
};

// Compass search on the certified value g(pi) = utility_am under the exact,
// defender-favoring best response. g jumps where the attacker's optimal
// pattern switches, which defeats gradients but not coordinate probes; every
// iterate is feasible and certified by construction.
Refined refine_commitment(const WorldSetting& s, const SolverConfig& cfg,
                          std::vector<double> pi) {
  const int n = s.size();
  pi = project_capped_simplex(std::move(pi));
  StackelbergResponse resp = best_response_favoring_am(s, AMStrategy::naive(pi));

  double delta = 0.25;
  for (int it = 0; it < cfg.max_iterations && delta >= 1e-6; ++it) {
    bool improved = false;
    std::vector<double> best_trial;
    StackelbergResponse best_resp;
    for (int i = 0; i < n; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> trial = pi;
        trial[i] += sign * delta;
        trial = project_capped_simplex(std::move(trial));
        StackelbergResponse t = best_response_favoring_am(s, AMStrategy::naive(trial));
        if (t.u_am > (improved ? best_resp.u_am : resp.u_am) + 1e-15) {
          improved = true;
          best_trial = std::move(trial);
          best_resp = std::move(t);
        }
      }
    }
    if (improved) {
      pi = std::move(best_trial);
      resp = std::move(best_resp);
    } else {
      delta *= 0.5;
    }
  }
  return Refined{std::move(pi), std::move(resp)};
}

// Warm starts shared by every pattern. Mirroring the undefended mass leads so
// that value ties in the linear patterns resolve toward the commitment with
// the most cooperative exact best response.
std::vector<std::vector<double>> warm_starts(const WorldSetting& s) {
  std::vector<std::vector<double>> starts;
  auto add = [&](NaturalStrategy which) {
    try {
      starts.push_back(natural_strategy(s, which).naive_row());
    } catch (const ValidationError&) {
    }
  };
  add(NaturalStrategy::Undefended);
  for (NaturalStrategy which : kAllNaturalStrategies)
    if (which != NaturalStrategy::Undefended) add(which);
  return starts;
}

}  // namespace

SubproblemSpec build_subproblem(const WorldSetting& s, const ConstraintPattern& c) {
  if (c.size() != s.size())
    throw ValidationError(Errc::DimensionMismatch, "pattern size does not match setting");
  SubproblemSpec sub;
  sub.pattern = c;
  sub.fixed_rho.assign(c.size(), std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k < c.size(); ++k) {
    switch (c.binds[k]) {
      case Bind::Zero:
        sub.fixed_rho[k] = 0.0;
        break;
      case Bind::One:
        sub.fixed_rho[k] = 1.0;
        break;
      case Bind::Interior:
        sub.interior.push_back(k);
        break;
    }
  }
  return sub;
}

std::optional<Candidate> solve_subproblem(const WorldSetting& s, const SubproblemSpec& sub,
                                          const SolverConfig& cfg) {
  const int n = sub.types();
  if (n != s.size())
    throw ValidationError(Errc::DimensionMismatch, "subproblem size does not match setting");

  Tracked best;

  if (sub.rho_variables() == 0) {
    // utility_am is linear in pi here: constant + sum_m pi_m rho_m (d . rho),
    // and every coefficient is nonnegative. The exact maximizer is a vertex,
    // but ties are everywhere, so the warm starts get first claim.
    std::vector<std::vector<double>> pool = warm_starts(s);
    pool.emplace_back(n, 0.0);
    const double weight = dot(s.defended(), sub.fixed_rho);
    int top = 0;
    for (int m = 1; m < n; ++m)
      if (sub.fixed_rho[m] * weight > sub.fixed_rho[top] * weight) top = m;
    std::vector<double> vertex(n, 0.0);
    if (sub.fixed_rho[top] * weight > 0.0) vertex[top] = 1.0;
    pool.push_back(std::move(vertex));

    for (const auto& pi : pool)
      consider(best, evaluate_commitment(s, sub, pi), pi, cfg.violation_tolerance);
  } else {
    const long ordinal = pattern_ordinal(sub.pattern);
    for (const auto& pi : warm_starts(s)) ascend(s, sub, cfg, pi, best);
    for (int r = 0; r < cfg.restarts; ++r) {
      SplitMix64 rng(derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(ordinal),
                                 static_cast<std::uint64_t>(r)));
      ascend(s, sub, cfg, sample_capped_simplex(rng, n), best);
    }
  }

  if (!best.any) return std::nullopt;
  return Candidate{std::move(best.pi), MStrategy{std::move(best.rho)}, best.value};
}

VerificationReport verify_candidate(const WorldSetting& s, const std::vector<double>& pi,
                                    const MStrategy& rho, const SolverConfig& cfg,
                                    const ConstraintPattern* pattern) {
  if (static_cast<int>(pi.size()) != s.size() || rho.size() != s.size())
    throw ValidationError(Errc::DimensionMismatch, "candidate size does not match setting");
  const auto& e = s.existence();
  const auto& d = s.defended();

  VerificationReport report;
  double pi_violation = 0.0;
  double sum = 0.0;
  for (double v : pi) {
    pi_violation = std::max(pi_violation, -v);
    sum += v;
  }
  pi_violation = std::max(pi_violation, sum - 1.0);
  report.violation = pi_violation;
  for (double v : rho.rho)
    report.violation = std::max({report.violation, -v, v - 1.0});

  if (pattern) {
    if (pattern->size() != s.size())
      throw ValidationError(Errc::DimensionMismatch, "pattern size does not match setting");
    for (int k = 0; k < s.size(); ++k) {
      switch (pattern->binds[k]) {
        case Bind::Zero:
          report.violation = std::max(report.violation, std::abs(rho.rho[k]));
          break;
        case Bind::One:
          report.violation = std::max(report.violation, std::abs(rho.rho[k] - 1.0));
          break;
        case Bind::Interior: {
          double residual = e[k];
          for (int m = 0; m < s.size(); ++m)
            residual -= (d[k] * pi[m] + d[m] * pi[k]) * rho.rho[m];
          report.violation = std::max(report.violation, std::abs(residual));
          break;
        }
      }
    }
  }

  report.feasible = report.violation <= cfg.violation_tolerance;
  if (pi_violation > 1e-9) {
    // Too far outside the commitment simplex to even form a strategy; the
    // regret of an unplayable candidate is meaningless.
    report.br_gap = std::numeric_limits<double>::infinity();
    return report;
  }
  const AMStrategy am = AMStrategy::naive(pi);
  report.br_gap = std::max(0.0, best_response(s, am).u_m - utility_m(s, am, rho));
  report.accepted = report.feasible && report.br_gap <= cfg.best_response_slack;
  return report;
}

EquilibriumSolution solve_am_optimal(const WorldSetting& s, const SolverConfig& cfg) {
  const int n = s.size();
  const long count = pattern_count(n);

  bool have = false;
  double best_value = kInfeasible;
  AMStrategy best_am;
  StackelbergResponse best_resp;

  std::vector<std::pair<double, std::vector<double>>> raw_candidates;  // (value, pi)
  for (long k = 1; k <= count; ++k) {
    const ConstraintPattern pattern = pattern_from_index(k, s.size());
    const SubproblemSpec sub = build_subproblem(s, pattern);
    auto cand = solve_subproblem(s, sub, cfg);
    if (!cand) continue;
    raw_candidates.emplace_back(cand->u_am, cand->pi);
    if (!verify_candidate(s, cand->pi, cand->rho, cfg, &pattern).accepted) continue;

    // Score the commitment by what it actually earns against an exact,
    // defender-favoring best response, so acceptance slack never leaks into
    // the reported value.
    AMStrategy am = AMStrategy::naive(cand->pi);
    StackelbergResponse resp = best_response_favoring_am(s, am);
    if (!have || resp.u_am > best_value) {
      have = true;
      best_value = resp.u_am;
      best_am = std::move(am);
      best_resp = std::move(resp);
    }
  }

  // Refinement: a raw pattern optimum often lies past the point where the
  // attacker would abandon the pattern, so chase the certified value itself
  // from the most promising commitments.
  std::vector<std::vector<double>> seeds = warm_starts(s);
  std::stable_sort(raw_candidates.begin(), raw_candidates.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  constexpr size_t kSeedCap = 8;
  for (size_t i = 0; i < raw_candidates.size() && i < kSeedCap; ++i)
    seeds.push_back(std::move(raw_candidates[i].second));
  for (int r = 0; r < cfg.restarts; ++r) {
    SplitMix64 rng(derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(count) + 1,
                               static_cast<std::uint64_t>(r)));
    seeds.push_back(sample_capped_simplex(rng, n));
  }
  for (const auto& seed : seeds) {
    Refined ref = refine_commitment(s, cfg, seed);
    if (!have || ref.resp.u_am > best_value) {
      have = true;
      best_value = ref.resp.u_am;
      best_am = AMStrategy::naive(ref.pi);
      best_resp = std::move(ref.resp);
    }
  }

  EquilibriumSolution sol;
  sol.provenance = Provenance::Qcqp;
  if (!have) {
    // Nothing certified anywhere: fall back to the best natural strategy
    // under the exact best response.
    for (NaturalStrategy which : kAllNaturalStrategies) {
      AMStrategy am;
      try {
        am = natural_strategy(s, which);
      } catch (const ValidationError&) {
        continue;
      }
      StackelbergResponse resp = best_response_favoring_am(s, am);
      if (!have || resp.u_am > best_value) {
        have = true;
        best_value = resp.u_am;
        best_am = std::move(am);
        best_resp = std::move(resp);
      }
    }
    sol.fallback = true;
  }

  sol.am = std::move(best_am);
  sol.m = std::move(best_resp.rho);
  sol.u_am = utility_am(s, sol.am, sol.m);
  sol.u_m = utility_m(s, sol.am, sol.m);
  sol.br_gap = std::max(0.0, best_response(s, sol.am).u_m - sol.u_m);
  sol.verified = sol.br_gap <= cfg.best_response_slack;
  return sol;
}

}  // namespace sandboxgame
