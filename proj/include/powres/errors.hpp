#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace powres {

/// Malformed ideal or tree text, with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The input is well formed but outside the class this tool handles
/// (not square-free, not projective dimension one, too many generators).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance exceeds the configured size guardrail.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace powres
