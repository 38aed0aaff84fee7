#pragma once

#include <stdexcept>
#include <string>

namespace qtwick {

/// Base class for every error raised on bad input to the library. The CLI
/// maps these to exit code 2; anything else escaping is an internal error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request exceeds an enumeration or memory cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent arguments.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Model parameters outside their admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A Fock-space creation would exceed the truncation degree.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A tuple's ~-class is not a pair partition.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// One or more experiment configuration fields are invalid.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtwick
