#include "sandboxgame/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "sandboxgame/best_response.hpp"
#include "sandboxgame/errors.hpp"
#include "sandboxgame/natural.hpp"
#include "sandboxgame/utility.hpp"

namespace sandboxgame {

namespace {

constexpr double kCertifyTol = 1e-9;

void require_class(const WorldSetting& s, SettingClass expected, const char* what) {
  if (classify_setting(s) != expected)
    throw ValidationError(Errc::WrongClass, what);
}

// Packages a commitment together with a claimed attacker response, then runs
// the exact best response to confirm the attacker really has nothing better.
EquilibriumSolution certified(const WorldSetting& s, AMStrategy am, MStrategy m) {
  EquilibriumSolution sol;
  sol.am = std::move(am);
  sol.m = std::move(m);
  sol.u_am = utility_am(s, sol.am, sol.m);
  sol.u_m = utility_m(s, sol.am, sol.m);
  sol.provenance = Provenance::Analytic;
  const BestResponse br = best_response(s, sol.am);
  sol.br_gap = std::max(0.0, br.u_m - sol.u_m);
  sol.verified = sol.br_gap <= kCertifyTol;
  return sol;
}

}  // namespace

EquilibriumSolution solve_fully_defended_naive(const WorldSetting& s) {
  require_class(s, SettingClass::FullyDefended, "requires a fully defended fleet");
  AMStrategy am = AMStrategy::naive(s.existence());
  MStrategy m{std::vector<double>(s.size(), 0.5)};
  return certified(s, std::move(am), std::move(m));
}

EquilibriumSolution solve_fully_defended_sophisticated(const WorldSetting& s) {
  require_class(s, SettingClass::FullyDefended, "requires a fully defended fleet");
  const int n = s.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (int r = 0; r < n; ++r) rows[r][r] = 1.0;
  AMStrategy am = AMStrategy::sophisticated(std::move(rows));
  MStrategy m{std::vector<double>(n, 0.5)};
  return certified(s, std::move(am), std::move(m));
}

EquilibriumSolution solve_naive_deterministic_am(const WorldSetting& s) {
  require_class(s, SettingClass::FullyDefended, "requires a fully defended fleet");
  const auto& e = s.existence();
  const int j = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());

  std::vector<double> pi(s.size(), 0.0);
  pi[j] = 1.0;
  std::vector<double> rho(s.size(), 1.0);
  rho[j] = e[j] < 0.5 ? 0.0 : 1.0 - 1.0 / (2.0 * e[j]);
  return certified(s, AMStrategy::naive(std::move(pi)), MStrategy{std::move(rho)});
}

EquilibriumSolution solve_at_most_half(const WorldSetting& s) {
  require_class(s, SettingClass::AtMostHalf, "requires defended share at most one half");
  AMStrategy am = natural_strategy(s, NaturalStrategy::Undefended);
  MStrategy m{std::vector<double>(s.size(), 1.0)};
  return certified(s, std::move(am), std::move(m));
}

EquilibriumSolution solve_single_type_defended(const WorldSetting& s) {
  require_class(s, SettingClass::SingleTypeDefended, "requires exactly one defended type");
  const int n = s.size();

  std::vector<std::vector<double>> commitments;
  commitments.emplace_back(n, 0.0);  // never generate a sandbox
  for (int j = 0; j < n; ++j) {
    std::vector<double> pi(n, 0.0);
    pi[j] = 1.0;
    commitments.push_back(std::move(pi));
  }

  EquilibriumSolution best;
  bool have = false;
  for (auto& pi : commitments) {
    AMStrategy am = AMStrategy::naive(std::move(pi));
    StackelbergResponse resp = best_response_favoring_am(s, am);
    if (have && resp.u_am <= best.u_am) continue;
    best.am = std::move(am);
    best.m = std::move(resp.rho);
    best.u_am = resp.u_am;
    best.u_m = resp.u_m;
    have = true;
  }
  best.provenance = Provenance::Analytic;
  const BestResponse br = best_response(s, best.am);
  best.br_gap = std::max(0.0, br.u_m - best.u_m);
  best.verified = best.br_gap <= kCertifyTol;
  return best;
}

EquilibriumSolution solve(const WorldSetting& s, const SolveOptions& opts) {
  switch (classify_setting(s)) {
    case SettingClass::FullyDefended:
      return opts.sophisticated ? solve_fully_defended_sophisticated(s)
                                : solve_fully_defended_naive(s);
    case SettingClass::AtMostHalf:
      return solve_at_most_half(s);
    case SettingClass::SingleTypeDefended: {
      // The deterministic commitments are easy to enumerate but not always
      // optimal; keep whichever of the two routes defends more.
      EquilibriumSolution vertex = solve_single_type_defended(s);
      EquilibriumSolution numeric = solve_am_optimal(s, opts.qcqp);
      if (!numeric.fallback && numeric.u_am > vertex.u_am + kCertifyTol) return numeric;
      return vertex;
    }
    case SettingClass::Hard:
      break;
  }
  return solve_am_optimal(s, opts.qcqp);
}

}  // namespace sandboxgame
