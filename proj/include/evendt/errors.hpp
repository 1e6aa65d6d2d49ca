#pragma once

#include <stdexcept>
#include <string>

namespace evendt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coordinates, malformed arguments.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Three collinear points asked to define a circle, or an empty arc.
class DegenerateCircle : public Error {
 public:
  using Error::Error;
};

class DuplicatePoint : public Error {
 public:
  using Error::Error;
};

class DuplicateEdge : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Operation reached a state that violates an internal invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace evendt
