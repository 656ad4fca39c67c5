#pragma once

#include <stdexcept>
#include <string>

namespace deckwalk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its admissible range (non-positive period, mass, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The pendulum height reached zero or became negative.
class SingularHeight : public Error {
 public:
  using Error::Error;
};

/// An iterative or linear-algebra routine could not produce a usable result.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Input data (a trace, a file) does not satisfy the consumer's requirements.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace deckwalk
