#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace argalloc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A variable was evaluated outside the domain of its valuation.
class DomainError : public Error {
 public:
  explicit DomainError(std::string variable)
      : Error("variable '" + variable + "' is not in the valuation domain"),
        variable_(std::move(variable)) {}
  const std::string& variable() const noexcept { return variable_; }

 private:
  std::string variable_;
};

/// An exhaustive procedure would exceed its configured bound.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A precondition of an operation was violated by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An allocator did not have the shape an operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Variable names collide across namespaces that must stay disjoint.
class NamespaceError : public Error {
 public:
  using Error::Error;
};

}  // namespace argalloc
