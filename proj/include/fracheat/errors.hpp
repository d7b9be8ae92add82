#pragma once

#include <stdexcept>
#include <string>

namespace fracheat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, out-of-range order, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two fields were combined that live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A sampled or computed value was NaN or infinite.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A numerical method could not certify the accuracy it was asked for.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace fracheat
