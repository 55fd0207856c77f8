#include "sandboxgame/natural.hpp"

#include <algorithm>

#include "sandboxgame/errors.hpp"

namespace sandboxgame {

namespace {

AMStrategy normalized(std::vector<double> w, const char* name) {
  double sum = 0.0;
  for (double v : w) sum += v;
  if (sum <= 0.0)
    throw ValidationError(Errc::UndefinedStrategy, name);
  for (double& v : w) v /= sum;
  return AMStrategy::naive(std::move(w));
}

}  // namespace

AMStrategy natural_strategy(const WorldSetting& s, NaturalStrategy which) {
  const int n = s.size();
  const auto& e = s.existence();
  const auto& d = s.defended();
  std::vector<double> w(n);

  switch (which) {
    case NaturalStrategy::Existence:
      return AMStrategy::naive(e);
    case NaturalStrategy::Defended:
      return normalized(d, "defended requires some defended machines");
    case NaturalStrategy::Undefended:
      for (int i = 0; i < n; ++i) w[i] = e[i] - d[i];
      return normalized(std::move(w), "undefended requires some undefended machines");
    case NaturalStrategy::PctDefended:
      for (int i = 0; i < n; ++i) w[i] = d[i] / e[i];
      return normalized(std::move(w), "pct-defended requires some defended machines");
    case NaturalStrategy::PctUndefended:
      for (int i = 0; i < n; ++i) w[i] = (e[i] - d[i]) / e[i];
      return normalized(std::move(w), "pct-undefended requires some undefended machines");
    case NaturalStrategy::Majority: {
      int best = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
      w.assign(n, 0.0);
      w[best] = 1.0;
      return AMStrategy::naive(std::move(w));
    }
    case NaturalStrategy::Uniform:
      w.assign(n, 1.0 / n);
      return AMStrategy::naive(std::move(w));
  }
  throw ValidationError(Errc::UndefinedStrategy, "unknown strategy");
}

const char* natural_strategy_name(NaturalStrategy which) {
  switch (which) {
    case NaturalStrategy::Existence: return "existence";
    case NaturalStrategy::Defended: return "defended";
    case NaturalStrategy::Undefended: return "undefended";
    case NaturalStrategy::PctDefended: return "pct-defended";
    case NaturalStrategy::PctUndefended: return "pct-undefended";
    case NaturalStrategy::Majority: return "majority";
    case NaturalStrategy::Uniform: return "uniform";
  }
  return "unknown";
}

std::optional<NaturalStrategy> parse_natural_strategy(const std::string& name) {
  for (NaturalStrategy which : kAllNaturalStrategies)
    if (name == natural_strategy_name(which)) return which;
  return std::nullopt;
}

}  // namespace sandboxgame
