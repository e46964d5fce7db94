#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hermite {

struct ParameterDomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested constant is undefined in this (H, q) regime.
struct RegimeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmbeddingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, std::size_t pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  std::size_t pivot() const { return pivot_; }

 private:
  std::size_t pivot_;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegeneratePathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RegressionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InsufficientSamplesError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SchemaVersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hermite
