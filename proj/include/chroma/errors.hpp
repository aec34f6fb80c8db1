#pragma once

#include <stdexcept>
#include <string>

namespace chroma {

// A size or work limit was hit before the operation could run to completion.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters that violate a structural precondition (n < (m+1)k, empty
// interval, modulus not prime, ...).
class InfeasibleParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Floating-point result failed an integrality or tolerance check.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace chroma
