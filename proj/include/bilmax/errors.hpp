#pragma once

#include <stdexcept>
#include <string>

namespace bilmax {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGridError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// The grid cannot resolve the object it is asked to represent.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class TableError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class InvalidSplitError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bilmax
