#pragma once

#include <stdexcept>
#include <string>

namespace bewley {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation's stated hypotheses do not hold for its inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration cap (dimension, vertex combos) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (documents, command-line values).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace bewley
