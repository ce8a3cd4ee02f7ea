#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace layout {

/// Malformed or inconsistent sheet document (parse errors carry a
/// line/record position in the message, duplicate addresses etc.).
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user configuration (non-injective ordinal dictionary, bad flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntax error in a formula. `offset` is the byte offset into
/// the raw formula text at which the error was detected.
class FormulaError : public std::runtime_error {
 public:
  FormulaError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace layout
