#pragma once

#include <stdexcept>
#include <string>

namespace surropt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid model/solver configuration (unknown kind, bad hyperparameter, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Dimension mismatch between inputs, model shapes or constraint blocks.
struct ShapeError : Error {
  using Error::Error;
};

/// Non-finite values or a numerically failed computation.
struct NumericError : Error {
  using Error::Error;
};

/// Malformed decision-tree topology (cycle, bad child reference, ...).
struct StructureError : Error {
  using Error::Error;
};

/// Malformed file content; message carries the location when known.
struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// Training diverged or produced unusable results.
struct TrainError : Error {
  using Error::Error;
};

}  // namespace surropt
