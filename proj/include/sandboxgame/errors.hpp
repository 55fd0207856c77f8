#pragma once

#include <stdexcept>
#include <string>

namespace sandboxgame {

enum class Errc {
  NegativeEntry,
  DefendedExceedsExistence,
  ExistenceNotNormalized,
  EmptyUniverse,
  ZeroExistenceType,
  ProbabilityOutOfRange,
  StrategyNotSubstochastic,
  DimensionMismatch,
  UndefinedStrategy,
  WrongClass,
  UniverseTooLarge,
  GridTooLarge,
  GenerationStalled,
};

const char* errc_name(Errc c);

// Rejected input: malformed settings, strategies, or arguments. CLI exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(Errc code, const std::string& what)
      : std::invalid_argument(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// A solve that cannot proceed or did not finish: size caps, stalled generation.
// CLI exit code 3.
class SolveError : public std::runtime_error {
 public:
  SolveError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace sandboxgame
