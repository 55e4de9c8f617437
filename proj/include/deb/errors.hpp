#pragma once

#include <stdexcept>
#include <string>

namespace deb {

// Parameters outside the admissible domain of an operation (dimension too
// small, cardinality outside the DGS interval, ...). CLI exit code 2.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed object failed its own internal check (quadrature exactness,
// identity cross-check, root finder that did not converge). CLI exit code 3.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

// Malformed user input (potential spec strings, CSV files). CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace deb
