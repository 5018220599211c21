#pragma once

#include <stdexcept>
#include <string>

namespace wedge {

/// Malformed input: ragged shapes, NaN/Inf entries, out-of-range orders.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An output or enumeration would exceed a configured size cap or budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Perron root of a nonnegative matrix is zero (nilpotent input).
class DegeneratePerronError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wedge
