#pragma once

#include <stdexcept>
#include <string>

namespace ojac {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators from different charts, unknown generators, duplicate names.
class ChartError : public Error {
 public:
  using Error::Error;
};

/// Parity mismatch: mixed inputs where homogeneous ones are required,
/// parity-changing substitutions, mixed-parity sums in the DSL.
class ParityError : public Error {
 public:
  using Error::Error;
};

/// An object has the wrong form: momentum degree, weight, missing
/// precondition of a construction.
class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace ojac
