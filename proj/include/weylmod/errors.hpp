#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weylmod {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A negative power of a parameter that was not declared invertible, or
/// the inverse of a non-unit.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// Operands live in different algebras (rank or central flag differ), or a
/// module was handed an operator from the wrong algebra family.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input failed (zero series, phi(0) != 0,
/// zero vector where a nonzero one is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The result of a highest-weight action left the level truncation.
class LevelOverflow : public Error {
 public:
  using Error::Error;
};

/// Syntax error with a 0-based column into the input string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(what + " at column " + std::to_string(column + 1)), column_(column) {}

  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

}  // namespace weylmod
