#pragma once

#include <cstdint>
#include <vector>

namespace sandboxgame {

// How one attack probability is pinned in a candidate best response: at a box
// edge or strictly inside with a vanishing derivative.
enum class Bind : std::uint8_t { Zero = 0, One = 1, Interior = 2 };

struct ConstraintPattern {
  std::vector<Bind> binds;

  int size() const { return static_cast<int>(binds.size()); }
  bool operator==(const ConstraintPattern& other) const = default;
};

// Enumeration caps: 3^n patterns get out of hand quickly.
inline constexpr int kMaxPatternTypes = 12;

// 3^n - 1 (the all-Zero pattern is excluded; an attacker that never attacks
// anything is handled separately). Throws SolveError{UniverseTooLarge} past
// the cap.
long pattern_count(int n, int cap = kMaxPatternTypes);

// Patterns are indexed 1 .. 3^n - 1 in ternary counting order: index digit i
// (least significant digit = type 0) encodes Zero/One/Interior as 0/1/2.
ConstraintPattern pattern_from_index(long index, int n);

std::vector<ConstraintPattern> enumerate_patterns(int n, int cap = kMaxPatternTypes);

}  // namespace sandboxgame
