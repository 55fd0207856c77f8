#pragma once

#include <optional>
#include <vector>

namespace sandboxgame {

// Dense square system A x = b, row-major.
struct LinearSystem {
  int n = 0;
  std::vector<double> a;
  std::vector<double> b;

  double& at(int row, int col) { return a[static_cast<size_t>(row) * n + col]; }
  double at(int row, int col) const { return a[static_cast<size_t>(row) * n + col]; }
};

enum class SolveOutcome { Unique, Family, Inconsistent };

// For Family, x is one particular solution and kernel spans the solution set
// (orthonormal columns); the full set is { x + kernel * t }.
struct LinearSolution {
  SolveOutcome outcome = SolveOutcome::Inconsistent;
  std::vector<double> x;
  std::vector<std::vector<double>> kernel;
};

// Gaussian elimination with partial pivoting. Pivots below pivot_tol mark the
// column as free; a zero row with nonzero residual makes the system
// inconsistent.
LinearSolution solve_linear_system(const LinearSystem& sys, double pivot_tol = 1e-12);

// A point of { x + kernel * t } inside [lo, hi]^n, found by alternating
// projection between the affine family and the box. Empty if the two sets do
// not meet (within tol).
std::optional<std::vector<double>> family_box_point(const LinearSolution& family,
                                                    double lo = 0.0, double hi = 1.0,
                                                    double tol = 1e-9,
                                                    int max_rounds = 1000);

}  // namespace sandboxgame
