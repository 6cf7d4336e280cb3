#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cournot {

// Raised when a value breaks a type invariant (non-positive parameter,
// unknown index, malformed PD ordering, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidNetwork : public InvalidArgument {
 public:
  explicit InvalidNetwork(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Base for failures of the numerical machinery rather than of the input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoUniqueEquilibrium : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cournot
