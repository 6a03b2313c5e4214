#pragma once

#include <stdexcept>
#include <string>

namespace epsilocal {

/// Malformed or out-of-domain input (bad descriptor, reducible polynomial, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A p-adic quantity was needed to more digits than the operands carry.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Always a bug in this library.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A mathematical statement the library checks turned out false on an input.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epsilocal
