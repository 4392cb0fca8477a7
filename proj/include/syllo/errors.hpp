#pragma once

#include <stdexcept>

namespace syllo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments or data coming from a caller or a file.
class InputError : public Error {
 public:
  using Error::Error;
};

// A model bound below the small-model completeness threshold.
class BoundError : public InputError {
 public:
  using InputError::InputError;
};

class InconsistentKbError : public Error {
 public:
  using Error::Error;
};

// More than one minimal premise subset exists for a hypothesis.
class RedundancyError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// An invariant of the library itself was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace syllo
