#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape support (or a symmetral) leaves the inscribed ball B(o, R).
class ShapeOutOfDomain : public Error {
 public:
  using Error::Error;
};

class BadMaskFile : public Error {
 public:
  using Error::Error;
};

// Volume below the empty-set threshold where a normalized quantity is needed.
class EmptySet : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class EmptyCycle : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace steiner
