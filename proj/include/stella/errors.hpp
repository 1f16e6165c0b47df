#pragma once

#include <stdexcept>
#include <string>

namespace stella {

/// Input failed a structural check (Hermiticity, trace, weights, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside its admissible interval.
class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A cone operation was requested at an angle where the cones collapse to planes.
class DegenerateConeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Two independent computations of the same quantity disagreed. Indicates a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stella
