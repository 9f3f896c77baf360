#pragma once

#include <stdexcept>
#include <string>

namespace snwit {

/// Base for every error raised by the library. The CLI maps all of these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or dimension mismatch, or a dimension below the supported minimum.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A state or operator failed one of its invariants (Hermiticity, trace, PSD, finiteness).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested method is not available for these parameters.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document. `line` is 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace snwit
