#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sandboxgame/types.hpp"

namespace sandboxgame {

// Closed-form sandbox-generation heuristics. All of them always generate a
// sandbox (entries sum to 1).
enum class NaturalStrategy {
  Existence,      // mimic the fleet: pi_m = e_m
  Defended,       // weight by defended share: d_m / D
  Undefended,     // weight by undefended share: (e_m - d_m) / (1 - D)
  PctDefended,    // weight by per-type defended rate d_m / e_m, normalized
  PctUndefended,  // weight by per-type undefended rate (e_m - d_m) / e_m, normalized
  Majority,       // always emulate the most common type (ties: lowest index)
  Uniform,        // 1/n each
};

inline constexpr NaturalStrategy kAllNaturalStrategies[] = {
    NaturalStrategy::Existence,     NaturalStrategy::Defended,
    NaturalStrategy::Undefended,    NaturalStrategy::PctDefended,
    NaturalStrategy::PctUndefended, NaturalStrategy::Majority,
    NaturalStrategy::Uniform,
};

// Throws ValidationError{UndefinedStrategy} when the weights all vanish or a
// denominator does (Defended with D = 0, Undefended with D = 1, ...).
AMStrategy natural_strategy(const WorldSetting& s, NaturalStrategy which);

// CLI literals: existence, defended, undefended, pct-defended, pct-undefended,
// majority, uniform.
const char* natural_strategy_name(NaturalStrategy which);
std::optional<NaturalStrategy> parse_natural_strategy(const std::string& name);

}  // namespace sandboxgame
