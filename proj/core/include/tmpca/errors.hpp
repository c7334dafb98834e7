#pragma once

#include <stdexcept>
#include <string>

namespace tmpca {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed data handed to an operation (empty matrix, non-finite entry,
/// single-class training set, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its documented range (out_dim > in_dim, n = 0, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Dimensions that do not line up (sentence length not divisible by the
/// branching factor, vector width mismatch, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent configuration (absent stop-word file, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A data file that cannot be parsed; the message names the offending line.
class IngestError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine that failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure (unwritable path, unreadable file).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tmpca
