#pragma once

#include <stdexcept>
#include <string>

namespace vandermetric {

/// Invalid arguments: wrong sizes, non-finite values, out-of-range parameters.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form quotient whose denominator vanishes (coincident nodes).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A request whose cost exceeds a fixed guard (factorial expansions).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The integrator's step-doubling estimate exceeded its accuracy bound.
class StepSizeError : public std::runtime_error {
 public:
  StepSizeError(const std::string& what, std::size_t suggested_steps)
      : std::runtime_error(what), suggested_steps_(suggested_steps) {}

  /// Number of uniform steps over the same interval that should pass the guard.
  std::size_t suggested_steps() const noexcept { return suggested_steps_; }

 private:
  std::size_t suggested_steps_;
};

}  // namespace vandermetric
