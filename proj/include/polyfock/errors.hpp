#pragma once

#include <stdexcept>
#include <string>

namespace polyfock {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its documented domain (non-positive width, singular matrix, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operands live on incompatible grids or have mismatched channel counts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The requested order exceeds what a finite-difference stencil or coefficient table supports.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured point cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating configuration / input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyfock
