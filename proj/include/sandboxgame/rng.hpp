#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace sandboxgame {

// splitmix64 (Steele, Lea, Flood / Vigna). Small, fast, and identical output
// on every platform, which the byte-for-byte reproducibility tests rely on.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe under log().
  double next_double_open() { return 1.0 - next_double(); }
};

// Stable seed for a substream (shard, pattern, restart, ...) of a root seed.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                 std::uint64_t substream = 0) {
  SplitMix64 mix(root ^ (0x510e527fade682d1ULL + stream * 0x9e3779b97f4a7c15ULL));
  mix.next();
  mix.state += substream * 0x2545f4914f6cdd1dULL;
  return mix.next();
}

// Uniform on the probability simplex via normalized exponential draws
// (a symmetric Dirichlet with unit concentration).
inline std::vector<double> sample_simplex(SplitMix64& rng, int n) {
  std::vector<double> x(n);
  double sum = 0.0;
  for (auto& v : x) {
    v = -std::log(rng.next_double_open());
    sum += v;
  }
  for (auto& v : x) v /= sum;
  return x;
}

// Uniform on { x >= 0, sum(x) <= 1 }: sample an (n+1)-simplex point and drop
// the slack coordinate.
inline std::vector<double> sample_capped_simplex(SplitMix64& rng, int n) {
  std::vector<double> x = sample_simplex(rng, n + 1);
  x.pop_back();
  return x;
}

}  // namespace sandboxgame
