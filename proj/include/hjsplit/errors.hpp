#pragma once

#include <stdexcept>
#include <string>

namespace hjsplit {

// All toolkit errors derive from Error so callers can catch one base type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct InvalidPartition : Error {
  explicit InvalidPartition(const std::string& msg) : Error(msg) {}
};

struct InvalidBounds : Error {
  explicit InvalidBounds(const std::string& msg) : Error(msg) {}
};

struct InvalidAlpha : Error {
  explicit InvalidAlpha(const std::string& msg) : Error(msg) {}
};

struct InvalidIteration : Error {
  explicit InvalidIteration(const std::string& msg) : Error(msg) {}
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string& msg) : Error(msg) {}
};

// Raised when all Monte Carlo proposal samples land outside the region where
// the objective is finite (or the weight mass collapses below the floor),
// even after the configured delta-inflation retries.
struct DegenerateWeights : Error {
  explicit DegenerateWeights(const std::string& msg) : Error(msg) {}
};

struct NumericalDivergence : Error {
  explicit NumericalDivergence(const std::string& msg) : Error(msg) {}
};

struct ResidualUnavailable : Error {
  explicit ResidualUnavailable(const std::string& msg) : Error(msg) {}
};

struct BudgetExhausted : Error {
  explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace hjsplit
