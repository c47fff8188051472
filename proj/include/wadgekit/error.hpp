#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wadgekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, or 0 when no line applies.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Structurally invalid value (violates a type invariant).
class InvariantError : public Error {
public:
  using Error::Error;
};

/// An exhaustive oracle or unfolding refused an input that is too large.
class SizeLimitError : public Error {
public:
  using Error::Error;
};

/// A Muller k-acceptor labeling that does not match the cycle set.
class LabelingError : public Error {
public:
  using Error::Error;
};

} // namespace wadgekit
