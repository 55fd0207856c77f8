#include <doctest.h>

#include "helpers.hpp"
#include "sandboxgame/natural.hpp"
#include "sandboxgame/setting.hpp"

using namespace sandboxgame;
using testutil::make_setting;

namespace {

void check_row(const AMStrategy& am, const std::vector<double>& want, double tol = 1e-15) {
  REQUIRE(am.is_naive());
  const auto& row = am.naive_row();
  REQUIRE(row.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i)
    CHECK(row[i] == doctest::Approx(want[i]).epsilon(tol));
}

}  // namespace

TEST_CASE("each heuristic weights the three-type reference setting as documented") {
  auto s = load_setting(testutil::fixture("three_type_partial.json"));

  check_row(natural_strategy(s, NaturalStrategy::Existence), {0.1, 0.2, 0.7});
  check_row(natural_strategy(s, NaturalStrategy::Defended), {1.0 / 6, 1.0 / 3, 0.5});
  check_row(natural_strategy(s, NaturalStrategy::Undefended),
            {0.03 / 0.58, 0.06 / 0.58, 0.49 / 0.58});
  // Per-type defended rates are (0.7, 0.7, 0.3).
  check_row(natural_strategy(s, NaturalStrategy::PctDefended),
            {0.7 / 1.7, 0.7 / 1.7, 0.3 / 1.7});
  check_row(natural_strategy(s, NaturalStrategy::PctUndefended),
            {0.3 / 1.3, 0.3 / 1.3, 0.7 / 1.3});
  check_row(natural_strategy(s, NaturalStrategy::Majority), {0.0, 0.0, 1.0});
  check_row(natural_strategy(s, NaturalStrategy::Uniform),
            {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

TEST_CASE("majority breaks ties toward the lowest index") {
  auto s = make_setting({0.25, 0.5, 0.25}, {0.1, 0.1, 0.1});
  check_row(natural_strategy(s, NaturalStrategy::Majority), {0.0, 1.0, 0.0});
  auto tie = make_setting({0.5, 0.5}, {0.2, 0.2});
  check_row(natural_strategy(tie, NaturalStrategy::Majority), {1.0, 0.0});
}

TEST_CASE("degenerate settings make some heuristics undefined") {
  auto undefended_fleet = make_setting({0.4, 0.6}, {0.0, 0.0});
  CHECK_THROWS_AS(natural_strategy(undefended_fleet, NaturalStrategy::Defended),
                  ValidationError);
  CHECK_THROWS_AS(natural_strategy(undefended_fleet, NaturalStrategy::PctDefended),
                  ValidationError);
  check_row(natural_strategy(undefended_fleet, NaturalStrategy::Undefended), {0.4, 0.6});

  auto fortress = make_setting({0.4, 0.6}, {0.4, 0.6});
  CHECK_THROWS_AS(natural_strategy(fortress, NaturalStrategy::Undefended), ValidationError);
  CHECK_THROWS_AS(natural_strategy(fortress, NaturalStrategy::PctUndefended),
                  ValidationError);
  check_row(natural_strategy(fortress, NaturalStrategy::Defended), {0.4, 0.6});

  // The error carries the dedicated code so callers can skip these cleanly.
  try {
    natural_strategy(fortress, NaturalStrategy::Undefended);
  } catch (const ValidationError& err) {
    CHECK(err.code() == Errc::UndefinedStrategy);
  }
}

TEST_CASE("strategy names round-trip through the parser") {
  for (auto which : kAllNaturalStrategies) {
    auto parsed = parse_natural_strategy(natural_strategy_name(which));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == which);
  }
  CHECK(parse_natural_strategy("pct-defended") == NaturalStrategy::PctDefended);
  CHECK_FALSE(parse_natural_strategy("nonsense").has_value());
}
