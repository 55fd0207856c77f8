#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "sandboxgame/rng.hpp"
#include "sandboxgame/setting.hpp"
#include "sandboxgame/types.hpp"

namespace testutil {

inline sandboxgame::WorldSetting make_setting(std::vector<double> e, std::vector<double> d) {
  sandboxgame::SettingData data;
  data.existence = std::move(e);
  data.defended = std::move(d);
  return sandboxgame::validate_setting(data);
}

inline std::string fixture(const std::string& name) {
  return std::string(SANDBOXGAME_TEST_DATA_DIR) + "/" + name;
}

// Unconstrained draw: e uniform on the simplex, each defended share a uniform
// fraction of its existence share.
inline sandboxgame::WorldSetting random_setting(sandboxgame::SplitMix64& rng, int n) {
  auto e = sample_simplex(rng, n);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = rng.next_double() * e[i];
  return make_setting(e, d);
}

inline sandboxgame::WorldSetting random_fully_defended(sandboxgame::SplitMix64& rng, int n) {
  auto e = sample_simplex(rng, n);
  return make_setting(e, e);
}

// Defended shares rescaled so the total lands in (0, 1/2) without any share
// overtaking its existence share.
inline sandboxgame::WorldSetting random_at_most_half(sandboxgame::SplitMix64& rng, int n) {
  auto e = sample_simplex(rng, n);
  std::vector<double> rate(n);
  double total = 0.0, max_rate = 0.0;
  for (int i = 0; i < n; ++i) {
    rate[i] = 0.05 + 0.95 * rng.next_double();
    total += rate[i] * e[i];
    max_rate = std::max(max_rate, rate[i]);
  }
  // Strictly below both caps: D < 1/2 and d < e componentwise, so attacking
  // everywhere stays the unique best reply to the undefended mix.
  const double target = 0.5 * (0.05 + 0.9 * rng.next_double());
  const double scale = std::min(target / total, 0.999 / max_rate);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = rate[i] * e[i] * scale;
  return make_setting(e, d);
}

// Rejection sampling until the draw classifies as hard.
inline sandboxgame::WorldSetting random_hard(sandboxgame::SplitMix64& rng, int n) {
  for (;;) {
    auto s = random_setting(rng, n);
    if (classify_setting(s) == sandboxgame::SettingClass::Hard) return s;
  }
}

inline std::vector<double> random_commitment(sandboxgame::SplitMix64& rng, int n) {
  return sandboxgame::sample_capped_simplex(rng, n);
}

}  // namespace testutil
