#pragma once

#include <stdexcept>
#include <string>

namespace jch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A basis state was requested that does not belong to the basis.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Caller supplied an invalid argument (bad parameters, non-unit vector, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine failed to converge or a post-hoc residual check failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace jch
