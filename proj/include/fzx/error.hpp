#pragma once

#include <stdexcept>
#include <string>

namespace fzx {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recovery could not find an answer that passes verification. Raised when
/// the distance between the sketched value and the probe exceeds capacity.
class DecodeFailure : public Error {
 public:
  using Error::Error;
};

/// Serialized data (envelopes, helper payloads, input files) is malformed.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// Caller supplied parameters that violate a precondition.
class BadParameter : public Error {
 public:
  using Error::Error;
};

/// Division by zero in the field or by the zero polynomial.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A randomized routine exhausted its attempt budget.
class InternalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fzx
