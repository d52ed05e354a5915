#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlgame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: game files, strategy files, predicate expressions.
/// Line and column are 1-based; zero means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0 && column == 0) return message;
    if (line == 0) return message + " (column " + std::to_string(column) + ")";
    return message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }

  std::size_t line_;
  std::size_t column_;
};

/// A structurally valid object violates a documented invariant.
class InvariantError : public Error {
 public:
  InvariantError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A configured size cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Sizes of two arguments do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlgame
