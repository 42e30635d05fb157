#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ljsde {

// Raised when an operation is evaluated outside its domain, e.g. a pair
// distance of zero on the unregularized path.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Violated caller contract (bad parameters, wrong recording stride, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite state produced during time stepping.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace ljsde
