#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fzdr {

/// A file could not be opened, created or renamed.
class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input content is malformed. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Argument and precondition violations use std::invalid_argument.

}  // namespace fzdr
