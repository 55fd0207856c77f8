#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "sandboxgame/linear_system.hpp"

using namespace sandboxgame;

namespace {

LinearSystem make(int n, std::vector<double> a, std::vector<double> b) {
  LinearSystem sys;
  sys.n = n;
  sys.a = std::move(a);
  sys.b = std::move(b);
  return sys;
}

double residual(const LinearSystem& sys, const std::vector<double>& x) {
  double worst = 0.0;
  for (int r = 0; r < sys.n; ++r) {
    double acc = -sys.b[r];
    for (int c = 0; c < sys.n; ++c) acc += sys.at(r, c) * x[c];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace

TEST_CASE("a well-conditioned system solves uniquely") {
  // x = 1, y = -1 by construction.
  auto sys = make(2, {2.0, 1.0, 1.0, 3.0}, {1.0, -2.0});
  auto sol = solve_linear_system(sys);
  REQUIRE(sol.outcome == SolveOutcome::Unique);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.x[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(sol.kernel.empty());
}

TEST_CASE("pivoting handles a zero leading entry") {
  auto sys = make(2, {0.0, 1.0, 1.0, 0.0}, {2.0, 3.0});
  auto sol = solve_linear_system(sys);
  REQUIRE(sol.outcome == SolveOutcome::Unique);
  CHECK(sol.x[0] == doctest::Approx(3.0));
  CHECK(sol.x[1] == doctest::Approx(2.0));
}

TEST_CASE("rank-deficient consistent systems come back as a family") {
  // Row 2 is twice row 1: the solution set is a line.
  auto sys = make(2, {1.0, 2.0, 2.0, 4.0}, {3.0, 6.0});
  auto sol = solve_linear_system(sys);
  REQUIRE(sol.outcome == SolveOutcome::Family);
  REQUIRE(sol.kernel.size() == 1);

  CHECK(residual(sys, sol.x) <= 1e-12);

  // The kernel direction must be unit length and stay inside the null space.
  const auto& k = sol.kernel[0];
  CHECK(std::abs(k[0] * k[0] + k[1] * k[1] - 1.0) <= 1e-12);
  std::vector<double> shifted = {sol.x[0] + 5.0 * k[0], sol.x[1] + 5.0 * k[1]};
  CHECK(residual(sys, shifted) <= 1e-10);
}

TEST_CASE("an all-zero row with zero rhs is free, with nonzero rhs inconsistent") {
  auto free_row = make(2, {1.0, 0.0, 0.0, 0.0}, {2.0, 0.0});
  auto sol = solve_linear_system(free_row);
  REQUIRE(sol.outcome == SolveOutcome::Family);
  CHECK(sol.x[0] == doctest::Approx(2.0));

  auto bad = make(2, {1.0, 0.0, 0.0, 0.0}, {2.0, 1.0});
  CHECK(solve_linear_system(bad).outcome == SolveOutcome::Inconsistent);

  auto contradictory = make(2, {1.0, 1.0, 2.0, 2.0}, {1.0, 3.0});
  CHECK(solve_linear_system(contradictory).outcome == SolveOutcome::Inconsistent);
}

TEST_CASE("family_box_point lands on the family inside the box") {
  // Line x + y = 1.4 meets the unit box along a segment.
  auto sys = make(2, {1.0, 1.0, 2.0, 2.0}, {1.4, 2.8});
  auto sol = solve_linear_system(sys);
  REQUIRE(sol.outcome == SolveOutcome::Family);

  auto point = family_box_point(sol);
  REQUIRE(point.has_value());
  CHECK((*point)[0] >= -1e-9);
  CHECK((*point)[0] <= 1.0 + 1e-9);
  CHECK((*point)[1] >= -1e-9);
  CHECK((*point)[1] <= 1.0 + 1e-9);
  CHECK((*point)[0] + (*point)[1] == doctest::Approx(1.4).epsilon(1e-9));
}

TEST_CASE("family_box_point reports a family that misses the box") {
  // Line x + y = 3 never touches [0, 1]^2.
  auto sys = make(2, {1.0, 1.0, 2.0, 2.0}, {3.0, 6.0});
  auto sol = solve_linear_system(sys);
  REQUIRE(sol.outcome == SolveOutcome::Family);
  CHECK_FALSE(family_box_point(sol).has_value());
}

TEST_CASE("unique solutions are reproduced for random invertible systems") {
  // Build A x* and solve back; diagonally dominant matrices stay invertible.
  std::uint64_t state = 99;
  auto next = [&state] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) / 9007199254740992.0;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(state % 5);
    LinearSystem sys;
    sys.n = n;
    sys.a.resize(static_cast<size_t>(n) * n);
    std::vector<double> want(n);
    for (int i = 0; i < n; ++i) {
      want[i] = 2.0 * next() - 1.0;
      for (int j = 0; j < n; ++j) sys.at(i, j) = next() - 0.5;
      sys.at(i, i) += n;
    }
    sys.b.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sys.b[i] += sys.at(i, j) * want[j];

    auto sol = solve_linear_system(sys);
    REQUIRE(sol.outcome == SolveOutcome::Unique);
    for (int i = 0; i < n; ++i) CHECK(sol.x[i] == doctest::Approx(want[i]).epsilon(1e-9));
  }
}
