#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cyclespan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two vectors that do not live over the same edge index set.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments of an operation does not hold.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An exhaustive operation was asked to run beyond its configured size limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cyclespan
