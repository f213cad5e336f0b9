#pragma once

/**
 * @file error.hpp
 * @brief Exception hierarchy shared by every algaut header.
 */

#include <stdexcept>
#include <string>

namespace algaut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index outside a carrier, or mismatched carrier sizes.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A closure or explicit construction grew past its size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message names the offending path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (non-surjective hom, non-invertible
// machine, invalid cascade triple, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A construction failed its own post-check. Seeing this means a bug.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace algaut
