#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace caret {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad file contents or bad strategy text. Messages carry
/// the file and line of the offending input where available.
class ParseError : public Error {
 public:
  using Error::Error;
  ParseError(const std::string& file, std::size_t line, const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message) {}
};

/// Invalid or unsatisfiable configuration: empty selections, unknown ids,
/// placements that cannot be honored.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure (unreadable input, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace caret
