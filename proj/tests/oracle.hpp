#pragma once

// Reference expectations computed straight from the game tree, kept separate
// from the library so the two derivations can disagree. Everything here is
// written for clarity over speed: enumerate each branch of one machine's
// playout and weight by its probability.
//
//   defended machine of real type r, sandbox shown of type g (w.p. row_r[g]):
//     attacker strikes in the sandbox (rho_g)        -> protected
//     attacker waits, then strikes for real (rho_r)  -> compromised
//     attacker waits twice                           -> protected
//   defended machine, no sandbox (w.p. 1 - sum row_r):
//     strike (rho_r) -> compromised, wait -> protected
//   undefended machine of type r:
//     strike (rho_r) -> compromised, wait -> idle
//
// The defender scores protected defended machines; the attacker scores
// compromised machines of either kind.

#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline double u_am(const std::vector<double>& d, const Matrix& rows,
                   const std::vector<double>& rho) {
  const int n = static_cast<int>(d.size());
  double total = 0.0;
  for (int r = 0; r < n; ++r) {
    double protected_share = 0.0;
    double no_sandbox = 1.0;
    for (int g = 0; g < n; ++g) {
      no_sandbox -= rows[r][g];
      protected_share += rows[r][g] * (rho[g] + (1.0 - rho[g]) * (1.0 - rho[r]));
    }
    protected_share += no_sandbox * (1.0 - rho[r]);
    total += d[r] * protected_share;
  }
  return total;
}

inline double u_m(const std::vector<double>& e, const std::vector<double>& d,
                  const Matrix& rows, const std::vector<double>& rho) {
  const int n = static_cast<int>(e.size());
  double total = 0.0;
  for (int r = 0; r < n; ++r) {
    double evades_sandbox = 1.0;
    for (int g = 0; g < n; ++g) evades_sandbox -= rows[r][g] * rho[g];
    total += (e[r] - d[r]) * rho[r] + d[r] * evades_sandbox * rho[r];
  }
  return total;
}

inline Matrix naive_rows(const std::vector<double>& pi) {
  return Matrix(pi.size(), pi);
}

struct GridPoint {
  std::vector<double> rho;
  double value = 0.0;
};

// Exhaustive attacker search on the lattice {0, 1/steps, ..., 1}^n.
inline GridPoint grid_best_response(const std::vector<double>& e,
                                    const std::vector<double>& d, const Matrix& rows,
                                    int steps) {
  const int n = static_cast<int>(e.size());
  long total = 1;
  for (int i = 0; i < n; ++i) total *= steps + 1;

  GridPoint best;
  best.rho.assign(n, 0.0);
  best.value = u_m(e, d, rows, best.rho);
  std::vector<double> rho(n);
  for (long idx = 1; idx < total; ++idx) {
    long rest = idx;
    for (int i = 0; i < n; ++i) {
      rho[i] = static_cast<double>(rest % (steps + 1)) / steps;
      rest /= steps + 1;
    }
    const double value = u_m(e, d, rows, rho);
    if (value > best.value) {
      best.value = value;
      best.rho = rho;
    }
  }
  return best;
}

}  // namespace oracle
