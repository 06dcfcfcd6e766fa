#pragma once

#include <stdexcept>
#include <string>

namespace ksb {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data does not fit together (vector lengths, matrix shapes).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A caller violated a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace ksb
