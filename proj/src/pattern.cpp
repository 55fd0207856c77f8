#include "sandboxgame/pattern.hpp"

#include <string>

#include "sandboxgame/errors.hpp"

namespace sandboxgame {

long pattern_count(int n, int cap) {
  if (n < 1)
    throw ValidationError(Errc::EmptyUniverse, "no types to enumerate");
  if (n > cap)
    throw SolveError(Errc::UniverseTooLarge,
                     std::to_string(n) + " types, cap is " + std::to_string(cap));
  long count = 1;
  for (int i = 0; i < n; ++i) count *= 3;
  return count - 1;
}

ConstraintPattern pattern_from_index(long index, int n) {
  ConstraintPattern c;
  c.binds.resize(n);
  for (int i = 0; i < n; ++i) {
    c.binds[i] = static_cast<Bind>(index % 3);
    index /= 3;
  }
  return c;
}

std::vector<ConstraintPattern> enumerate_patterns(int n, int cap) {
  const long count = pattern_count(n, cap);
  std::vector<ConstraintPattern> patterns;
  patterns.reserve(count);
  for (long k = 1; k <= count; ++k) patterns.push_back(pattern_from_index(k, n));
  return patterns;
}

}  // namespace sandboxgame
