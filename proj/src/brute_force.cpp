#include "sandboxgame/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sandboxgame/best_response.hpp"
#include "sandboxgame/errors.hpp"
#include "sandboxgame/utility.hpp"

namespace sandboxgame {

namespace {

long checked_pow(long base, int exp, long cap) {
  long total = 1;
  for (int i = 0; i < exp; ++i) {
    if (total > cap / base)
      throw SolveError(Errc::GridTooLarge, "commitment lattice exceeds the point cap");
    total *= base;
  }
  return total;
}

struct GridBest {
  bool any = false;
  double u_am = 0.0;
  double u_m = 0.0;
  long index = 0;
  AMStrategy am;
  MStrategy rho;
};

bool improves(const GridBest& incumbent, double u_am, long index) {
  if (!incumbent.any) return true;
  return u_am > incumbent.u_am || (u_am == incumbent.u_am && index < incumbent.index);
}

EquilibriumSolution run(const WorldSetting& s, double step, bool grid_attacker,
                        long max_points, bool parallel) {
  if (step <= 0.0 || step > 1.0)
    throw ValidationError(Errc::ProbabilityOutOfRange, "step must be in (0, 1]");
  const long steps = std::llround(1.0 / step);
  if (steps < 1 || std::abs(steps * step - 1.0) > 1e-9)
    throw ValidationError(Errc::ProbabilityOutOfRange, "step must divide 1");

  const int n = s.size();
  const long axis = steps + 1;
  long budget = max_points;
  if (grid_attacker) {
    const long attacker_points = checked_pow(axis, n, max_points);
    budget = max_points / attacker_points;
    if (budget < 1)
      throw SolveError(Errc::GridTooLarge, "commitment lattice exceeds the point cap");
  }
  const long total = checked_pow(axis, n, budget);

  GridBest best;
#pragma omp parallel if (parallel)
  {
    GridBest local;
    std::vector<double> pi(n);
#pragma omp for nowait schedule(dynamic, 64)
    for (long idx = 0; idx < total; ++idx) {
      long rest = idx;
      long mass = 0;
      for (int i = 0; i < n; ++i) {
        const long ticks = rest % axis;
        mass += ticks;
        pi[i] = static_cast<double>(ticks) / static_cast<double>(steps);
        rest /= axis;
      }
      if (mass > steps) continue;  // outside the commitment simplex

      AMStrategy am = AMStrategy::naive(pi);
      double u_am, u_m;
      MStrategy rho;
      if (grid_attacker) {
        BestResponse resp = best_response_grid_serial(s, am, step);
        rho = std::move(resp.rho);
        u_m = resp.u_m;
        u_am = utility_am(s, am, rho);
      } else {
        StackelbergResponse resp = best_response_favoring_am(s, am);
        rho = std::move(resp.rho);
        u_m = resp.u_m;
        u_am = resp.u_am;
      }
      if (improves(local, u_am, idx)) {
        local.any = true;
        local.u_am = u_am;
        local.u_m = u_m;
        local.index = idx;
        local.am = std::move(am);
        local.rho = std::move(rho);
      }
    }
#pragma omp critical(sandboxgame_bf_merge)
    {
      if (local.any && improves(best, local.u_am, local.index)) best = std::move(local);
    }
  }

  EquilibriumSolution sol;
  sol.am = std::move(best.am);
  sol.m = std::move(best.rho);
  sol.u_am = utility_am(s, sol.am, sol.m);
  sol.u_m = utility_m(s, sol.am, sol.m);
  sol.provenance = Provenance::BruteForce;
  sol.br_gap = std::max(0.0, best_response(s, sol.am).u_m - sol.u_m);
  sol.verified = !grid_attacker && sol.br_gap <= 1e-9;
  return sol;
}

}  // namespace

EquilibriumSolution brute_force_spne(const WorldSetting& s, double step, bool grid_attacker,
                                     long max_points) {
  return run(s, step, grid_attacker, max_points, true);
}

EquilibriumSolution brute_force_spne_serial(const WorldSetting& s, double step,
                                            bool grid_attacker, long max_points) {
  return run(s, step, grid_attacker, max_points, false);
}

}  // namespace sandboxgame
