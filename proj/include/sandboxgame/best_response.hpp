#pragma once

#include <optional>

#include "sandboxgame/linear_system.hpp"
#include "sandboxgame/pattern.hpp"
#include "sandboxgame/types.hpp"
#include "sandboxgame/utility.hpp"

namespace sandboxgame {

// The attacker's utility is quadratic in rho, so its maximizer over the box
// pins every coordinate at 0, at 1, or at a stationary interior point.
// Sweeping all 3^n - 1 such patterns and solving the induced linear system per
// pattern yields the exact best response.

// Rows: rho_k = 0 / rho_k = 1 for bound coordinates, stationarity
// sum_m (d_k Pi[k][m] + d_m Pi[m][k]) rho_m = e_k for interior ones.
LinearSystem build_pattern_system(const WorldSetting& s, const AMStrategy& am,
                                  const ConstraintPattern& c);

// Solves the pattern's system. Unique solutions are kept when they lie in the
// box (1e-9 slack, then clamped). Consistent rank-deficient systems describe a
// solution family along which the attacker's utility is constant, so any
// box point of the family is returned as its representative. Inconsistent or
// box-infeasible patterns yield nothing. Bound coordinates come back exact.
std::optional<MStrategy> solve_pattern(const WorldSetting& s, const AMStrategy& am,
                                       const ConstraintPattern& c);

struct BestResponse {
  MStrategy rho;
  double u_m = 0.0;
  long pattern_index = 0;  // 0 = the never-attack guard candidate
};

// Exact best response: max utility_m over every feasible pattern solution plus
// rho = 0. Ties go to the first pattern in enumeration order. The parallel
// and serial versions return identical results.
BestResponse best_response(const WorldSetting& s, const AMStrategy& am);
BestResponse best_response_serial(const WorldSetting& s, const AMStrategy& am);

struct StackelbergResponse {
  MStrategy rho;
  double u_m = 0.0;
  double u_am = 0.0;
};

// Same sweep, but among attacker-optimal candidates (within tie_tol of the
// best u_m) picks the one the defender prefers. This is the standard
// commitment-game convention: an indifferent attacker breaks ties favorably.
StackelbergResponse best_response_favoring_am(const WorldSetting& s, const AMStrategy& am,
                                              double tie_tol = 1e-9);

// Brute-force oracle for the same maximization: evaluates utility_m on the
// lattice {0, step, 2*step, ..., 1}^n. Throws SolveError{GridTooLarge} when
// the lattice would exceed max_points.
BestResponse best_response_grid(const WorldSetting& s, const AMStrategy& am, double step,
                                long max_points = 20'000'000);
BestResponse best_response_grid_serial(const WorldSetting& s, const AMStrategy& am,
                                       double step, long max_points = 20'000'000);

}  // namespace sandboxgame
