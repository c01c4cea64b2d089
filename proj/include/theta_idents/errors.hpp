#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace theta_idents {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (Im tau <= 0, m outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A q-series hit its term cap before the stopping rule triggered.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Evaluation too close to a zero of a denominator theta function.
class PoleError : public Error {
 public:
  using Error::Error;
};

class UnboundSymbolError : public Error {
 public:
  using Error::Error;
};

class DivisionNearZeroError : public Error {
 public:
  using Error::Error;
};

// Malformed text (catalog file or prefix expression). Line and column are 1-based;
// zero means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Structurally valid input that breaks the catalog schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class EmptyParameterSpace : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class UnsupportedFactor : public Error {
 public:
  using Error::Error;
};

}  // namespace theta_idents
