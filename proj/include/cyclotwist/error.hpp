#pragma once

#include <stdexcept>
#include <string>

namespace cyclotwist {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input (inadmissible conductor, unknown catalogue field, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numeric result could not be certified at the requested accuracy.
/// Callers may retry with a tighter target.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cyclotwist
