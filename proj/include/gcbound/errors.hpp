#pragma once

#include <stdexcept>
#include <string>

namespace gcbound {

// Root of every error raised by the library. The CLI maps the subclasses
// onto exit codes (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input vector or matrix has the wrong dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Non-finite input where a finite value is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A scalar argument is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Labels or samples violate their contract.
class DataError : public Error {
 public:
  using Error::Error;
};

// A distribution specification breaks its invariants.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Configuration file or flags are invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A run failed while executing (divergence, I/O).
class RunError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcbound
