#include "sandboxgame/linear_system.hpp"

#include <algorithm>
#include <cmath>

namespace sandboxgame {

namespace {

constexpr double kConsistencyTol = 1e-9;

}  // namespace

LinearSolution solve_linear_system(const LinearSystem& sys, double pivot_tol) {
  const int n = sys.n;
  std::vector<double> a = sys.a;
  std::vector<double> b = sys.b;
  auto at = [&](int r, int c) -> double& { return a[static_cast<size_t>(r) * n + c]; };

  std::vector<int> pivot_col;   // pivot column of row i, in elimination order
  std::vector<int> free_cols;
  int rank = 0;

  for (int col = 0; col < n; ++col) {
    int best = -1;
    double best_abs = pivot_tol;
    for (int r = rank; r < n; ++r) {
      double v = std::abs(at(r, col));
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (best < 0) {
      free_cols.push_back(col);
      continue;
    }
    if (best != rank) {
      for (int c = 0; c < n; ++c) std::swap(at(best, c), at(rank, c));
      std::swap(b[best], b[rank]);
    }
    for (int r = rank + 1; r < n; ++r) {
      double factor = at(r, col) / at(rank, col);
      if (factor == 0.0) continue;
      at(r, col) = 0.0;
      for (int c = col + 1; c < n; ++c) at(r, c) -= factor * at(rank, c);
      b[r] -= factor * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  LinearSolution result;
  for (int r = rank; r < n; ++r)
    if (std::abs(b[r]) > kConsistencyTol) return result;  // Inconsistent

  // Particular solution: free coordinates at zero, pivots by back substitution.
  result.x.assign(n, 0.0);
  auto back_substitute = [&](std::vector<double>& x, const std::vector<double>& rhs) {
    for (int i = rank - 1; i >= 0; --i) {
      int pc = pivot_col[i];
      double acc = rhs[i];
      for (int c = pc + 1; c < n; ++c) acc -= at(i, c) * x[c];
      x[pc] = acc / at(i, pc);
    }
  };
  back_substitute(result.x, b);

  if (free_cols.empty()) {
    result.outcome = SolveOutcome::Unique;
    return result;
  }

  result.outcome = SolveOutcome::Family;
  const std::vector<double> zero(n, 0.0);
  for (int f : free_cols) {
    std::vector<double> v(n, 0.0);
    v[f] = 1.0;
    back_substitute(v, zero);
    result.kernel.push_back(std::move(v));
  }
  // Orthonormalize so projections onto the family are a plain dot-product sum.
  for (size_t i = 0; i < result.kernel.size(); ++i) {
    auto& vi = result.kernel[i];
    for (size_t j = 0; j < i; ++j) {
      const auto& vj = result.kernel[j];
      double dot = 0.0;
      for (int c = 0; c < n; ++c) dot += vi[c] * vj[c];
      for (int c = 0; c < n; ++c) vi[c] -= dot * vj[c];
    }
    double norm = 0.0;
    for (int c = 0; c < n; ++c) norm += vi[c] * vi[c];
    norm = std::sqrt(norm);
    for (int c = 0; c < n; ++c) vi[c] /= norm;
  }
  return result;
}

std::optional<std::vector<double>> family_box_point(const LinearSolution& family, double lo,
                                                    double hi, double tol, int max_rounds) {
  if (family.outcome == SolveOutcome::Inconsistent) return std::nullopt;
  const int n = static_cast<int>(family.x.size());

  auto violation = [&](const std::vector<double>& x) {
    double worst = 0.0;
    for (double v : x) worst = std::max({worst, lo - v, v - hi});
    return worst;
  };

  std::vector<double> x = family.x;
  if (family.outcome == SolveOutcome::Unique || family.kernel.empty()) {
    if (violation(x) > tol) return std::nullopt;
    for (double& v : x) v = std::clamp(v, lo, hi);
    return x;
  }

  std::vector<double> y(n);
  for (int round = 0; round < max_rounds; ++round) {
    if (violation(x) <= tol) {
      for (double& v : x) v = std::clamp(v, lo, hi);
      return x;
    }
    for (int c = 0; c < n; ++c) y[c] = std::clamp(x[c], lo, hi);
    // Project the clamped point back onto the affine family.
    std::vector<double> z = family.x;
    for (const auto& k : family.kernel) {
      double dot = 0.0;
      for (int c = 0; c < n; ++c) dot += k[c] * (y[c] - family.x[c]);
      for (int c = 0; c < n; ++c) z[c] += dot * k[c];
    }
    double moved = 0.0;
    for (int c = 0; c < n; ++c) moved = std::max(moved, std::abs(z[c] - x[c]));
    x = std::move(z);
    if (moved < tol * 1e-3) break;  // stalled short of the box: sets do not meet
  }
  if (violation(x) <= tol) {
    for (double& v : x) v = std::clamp(v, lo, hi);
    return x;
  }
  return std::nullopt;
}

}  // namespace sandboxgame
