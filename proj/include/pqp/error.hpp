#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed presentation text. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Structurally invalid presentation data (bad order, bad relation target).
class PresentationError : public Error {
public:
  using Error::Error;
};

/// A computation exceeded its element budget.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// A property was requested outside the range where it is defined.
class UnsupportedDefinition : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace pqp
