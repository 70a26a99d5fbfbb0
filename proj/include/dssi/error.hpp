#pragma once

#include <stdexcept>
#include <string>

namespace dssi {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of two operands (or an operand and an operator) disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A configured scalar or list is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A file is structurally malformed (bad magic, truncated payload, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file parsed but its content violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

}  // namespace dssi
