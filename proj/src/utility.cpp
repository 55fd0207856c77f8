#include "sandboxgame/utility.hpp"

#include "sandboxgame/errors.hpp"

namespace sandboxgame {

namespace {

void check_dims(const WorldSetting& s, const AMStrategy& am, const MStrategy& m) {
  if (am.size() != s.size() || m.size() != s.size())
    throw ValidationError(Errc::DimensionMismatch,
                          "setting has " + std::to_string(s.size()) + " types, strategies have " +
                              std::to_string(am.size()) + "/" + std::to_string(m.size()));
}

// Chance that the attacker strikes inside the sandbox shown on type r.
double sandbox_hit(const AMStrategy& am, const MStrategy& m, int r) {
  const auto& row = am.row(r);
  double hit = 0.0;
  for (int k = 0; k < am.size(); ++k) hit += row[k] * m.rho[k];
  return hit;
}

}  // namespace

double utility_m(const WorldSetting& s, const AMStrategy& am, const MStrategy& m) {
  check_dims(s, am, m);
  const auto& e = s.existence();
  const auto& d = s.defended();
  double u = 0.0;
  for (int r = 0; r < s.size(); ++r)
    u += e[r] * m.rho[r] - d[r] * sandbox_hit(am, m, r) * m.rho[r];
  return u;
}

double utility_am(const WorldSetting& s, const AMStrategy& am, const MStrategy& m) {
  check_dims(s, am, m);
  const auto& d = s.defended();
  double u = 0.0;
  for (int r = 0; r < s.size(); ++r)
    u += d[r] * (1.0 - m.rho[r]) + d[r] * sandbox_hit(am, m, r) * m.rho[r];
  return u;
}

std::vector<double> utility_m_gradient(const WorldSetting& s, const AMStrategy& am,
                                       const MStrategy& m) {
  check_dims(s, am, m);
  const int n = s.size();
  const auto& e = s.existence();
  const auto& d = s.defended();
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) {
    double acc = e[k];
    const auto& row_k = am.row(k);
    for (int l = 0; l < n; ++l)
      acc -= (d[k] * row_k[l] + d[l] * am.row(l)[k]) * m.rho[l];
    g[k] = acc;
  }
  return g;
}

}  // namespace sandboxgame
