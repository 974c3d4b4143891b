#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text; `line` is 1-based, 0 when unknown.
struct ParseError : Error {
  int line;
  ParseError(const std::string& what, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what),
        line(line_no) {}
};

struct DimensionError : Error {
  using Error::Error;
};

/// Enumeration space exceeds the configured cap.
struct ResourceLimitError : Error {
  using Error::Error;
};

/// A documented precondition does not hold for the given input.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace fairdiv
