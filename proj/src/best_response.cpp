#include "sandboxgame/best_response.hpp"

#include <algorithm>
#include <cmath>

#include "sandboxgame/errors.hpp"

namespace sandboxgame {

namespace {

constexpr double kBoxSlack = 1e-9;        // accepted overshoot before clamping
constexpr double kResidualTol = 1e-8;     // accepted stationarity residual
constexpr double kGridStepDrift = 1e-9;   // accepted |round(1/step)*step - 1|

// The quadratic structure of utility_m in rho, shared by every pattern of one
// (setting, strategy) pair: utility_m = e . rho - rho^T Q rho / 2 with
// Q[k][m] = d_k Pi[k][m] + d_m Pi[m][k].
struct QuadraticForm {
  int n = 0;
  std::vector<double> q;  // row-major n*n, symmetric

  double at(int r, int c) const { return q[static_cast<size_t>(r) * n + c]; }
};

QuadraticForm make_quadratic(const WorldSetting& s, const AMStrategy& am) {
  if (am.size() != s.size())
    throw ValidationError(Errc::DimensionMismatch, "strategy size does not match setting");
  const int n = s.size();
  const auto& d = s.defended();
  QuadraticForm form;
  form.n = n;
  form.q.resize(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const auto& row_k = am.row(k);
    for (int m = 0; m < n; ++m)
      form.q[static_cast<size_t>(k) * n + m] = d[k] * row_k[m] + d[m] * am.row(m)[k];
  }
  return form;
}

LinearSystem assemble_system(const WorldSetting& s, const QuadraticForm& form,
                             const ConstraintPattern& c) {
  const int n = form.n;
  LinearSystem sys;
  sys.n = n;
  sys.a.assign(static_cast<size_t>(n) * n, 0.0);
  sys.b.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    switch (c.binds[k]) {
      case Bind::Zero:
        sys.at(k, k) = 1.0;
        sys.b[k] = 0.0;
        break;
      case Bind::One:
        sys.at(k, k) = 1.0;
        sys.b[k] = 1.0;
        break;
      case Bind::Interior:
        for (int m = 0; m < n; ++m) sys.at(k, m) = form.at(k, m);
        sys.b[k] = s.existence()[k];
        break;
    }
  }
  return sys;
}

std::optional<MStrategy> solve_assembled(const WorldSetting& s, const QuadraticForm& form,
                                         const ConstraintPattern& c) {
  const LinearSystem sys = assemble_system(s, form, c);
  const LinearSolution sol = solve_linear_system(sys);
  std::optional<std::vector<double>> rho;

  if (sol.outcome == SolveOutcome::Unique) {
    for (double v : sol.x)
      if (v < -kBoxSlack || v > 1.0 + kBoxSlack) return std::nullopt;
    rho = sol.x;
    for (double& v : *rho) v = std::clamp(v, 0.0, 1.0);
  } else if (sol.outcome == SolveOutcome::Family) {
    // utility_m is constant across the family (the free directions live in
    // the interior coordinates, where the gradient vanishes), so any box
    // point represents the whole pattern.
    rho = family_box_point(sol, 0.0, 1.0, kBoxSlack);
  }
  if (!rho) return std::nullopt;

  for (int k = 0; k < form.n; ++k) {
    if (c.binds[k] == Bind::Zero) (*rho)[k] = 0.0;
    if (c.binds[k] == Bind::One) (*rho)[k] = 1.0;
  }
  // Guard against near-singular garbage: the interior rows must actually hold.
  for (int k = 0; k < form.n; ++k) {
    if (c.binds[k] != Bind::Interior) continue;
    double residual = s.existence()[k];
    for (int m = 0; m < form.n; ++m) residual -= form.at(k, m) * (*rho)[m];
    if (std::abs(residual) > kResidualTol) return std::nullopt;
  }
  return MStrategy{std::move(*rho)};
}

struct SweepBest {
  double u_m = 0.0;
  long index = 0;  // 0 is the never-attack guard
  MStrategy rho;
};

// Lower index wins ties so the sweep result is independent of visit order.
bool improves(const SweepBest& incumbent, double u, long index) {
  return u > incumbent.u_m || (u == incumbent.u_m && index < incumbent.index);
}

SweepBest sweep_patterns(const WorldSetting& s, const AMStrategy& am, bool parallel) {
  const QuadraticForm form = make_quadratic(s, am);
  const long count = pattern_count(s.size());

  SweepBest best;
  best.rho = MStrategy{std::vector<double>(s.size(), 0.0)};
  best.u_m = utility_m(s, am, best.rho);  // exactly 0, kept as the guard candidate

#pragma omp parallel if (parallel)
  {
    SweepBest local = best;
    bool touched = false;
#pragma omp for nowait schedule(static)
    for (long k = 1; k <= count; ++k) {
      auto rho = solve_assembled(s, form, pattern_from_index(k, s.size()));
      if (!rho) continue;
      double u = utility_m(s, am, *rho);
      if (improves(local, u, k)) {
        local.u_m = u;
        local.index = k;
        local.rho = std::move(*rho);
        touched = true;
      }
    }
#pragma omp critical(sandboxgame_br_merge)
    {
      if (touched && improves(best, local.u_m, local.index)) best = std::move(local);
    }
  }
  return best;
}

}  // namespace

LinearSystem build_pattern_system(const WorldSetting& s, const AMStrategy& am,
                                  const ConstraintPattern& c) {
  if (c.size() != s.size())
    throw ValidationError(Errc::DimensionMismatch, "pattern size does not match setting");
  return assemble_system(s, make_quadratic(s, am), c);
}

std::optional<MStrategy> solve_pattern(const WorldSetting& s, const AMStrategy& am,
                                       const ConstraintPattern& c) {
  if (c.size() != s.size())
    throw ValidationError(Errc::DimensionMismatch, "pattern size does not match setting");
  return solve_assembled(s, make_quadratic(s, am), c);
}

BestResponse best_response(const WorldSetting& s, const AMStrategy& am) {
  SweepBest best = sweep_patterns(s, am, true);
  return BestResponse{std::move(best.rho), best.u_m, best.index};
}

BestResponse best_response_serial(const WorldSetting& s, const AMStrategy& am) {
  SweepBest best = sweep_patterns(s, am, false);
  return BestResponse{std::move(best.rho), best.u_m, best.index};
}

StackelbergResponse best_response_favoring_am(const WorldSetting& s, const AMStrategy& am,
                                              double tie_tol) {
  const BestResponse exact = best_response(s, am);
  const double cutoff = exact.u_m - tie_tol;

  StackelbergResponse pick{exact.rho, utility_m(s, am, exact.rho),
                           utility_am(s, am, exact.rho)};
  // Revisit every attacker-optimal candidate and keep the defender's favorite.
  const QuadraticForm form = make_quadratic(s, am);
  const long count = pattern_count(s.size());
  for (long k = 1; k <= count; ++k) {
    auto rho = solve_assembled(s, form, pattern_from_index(k, s.size()));
    if (!rho) continue;
    if (utility_m(s, am, *rho) < cutoff) continue;
    double u_am = utility_am(s, am, *rho);
    if (u_am > pick.u_am) {
      pick.rho = std::move(*rho);
      pick.u_m = utility_m(s, am, pick.rho);
      pick.u_am = u_am;
    }
  }
  MStrategy zero{std::vector<double>(s.size(), 0.0)};
  if (utility_m(s, am, zero) >= cutoff) {
    double u_am = utility_am(s, am, zero);
    if (u_am > pick.u_am) {
      pick.u_m = utility_m(s, am, zero);
      pick.u_am = u_am;
      pick.rho = std::move(zero);
    }
  }
  return pick;
}

namespace {

BestResponse grid_search(const WorldSetting& s, const AMStrategy& am, double step,
                         long max_points, bool parallel) {
  if (step <= 0.0 || step > 1.0)
    throw ValidationError(Errc::ProbabilityOutOfRange, "step must be in (0, 1]");
  const long steps = std::llround(1.0 / step);
  if (steps < 1 || std::abs(steps * step - 1.0) > kGridStepDrift)
    throw ValidationError(Errc::ProbabilityOutOfRange, "step must divide 1");
  const int n = s.size();
  const long axis = steps + 1;

  long total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > max_points / axis)
      throw SolveError(Errc::GridTooLarge, "attacker lattice exceeds the point cap");
    total *= axis;
  }

  SweepBest best;
  best.rho = MStrategy{std::vector<double>(n, 0.0)};
  best.u_m = utility_m(s, am, best.rho);
  best.index = 0;

#pragma omp parallel if (parallel)
  {
    MStrategy probe{std::vector<double>(n, 0.0)};
    SweepBest local = best;
    bool touched = false;
#pragma omp for nowait schedule(static)
    for (long idx = 1; idx < total; ++idx) {
      long rest = idx;
      for (int i = 0; i < n; ++i) {
        probe.rho[i] = static_cast<double>(rest % axis) / static_cast<double>(steps);
        rest /= axis;
      }
      double u = utility_m(s, am, probe);
      if (improves(local, u, idx)) {
        local.u_m = u;
        local.index = idx;
        local.rho = probe;
        touched = true;
      }
    }
#pragma omp critical(sandboxgame_grid_merge)
    {
      if (touched && improves(best, local.u_m, local.index)) best = std::move(local);
    }
  }
  return BestResponse{std::move(best.rho), best.u_m, best.index};
}

}  // namespace

BestResponse best_response_grid(const WorldSetting& s, const AMStrategy& am, double step,
                                long max_points) {
  return grid_search(s, am, step, max_points, true);
}

BestResponse best_response_grid_serial(const WorldSetting& s, const AMStrategy& am,
                                       double step, long max_points) {
  return grid_search(s, am, step, max_points, false);
}

}  // namespace sandboxgame
