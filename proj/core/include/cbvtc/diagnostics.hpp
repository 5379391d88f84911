#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbvtc {

// Position within an input text, 1-based. line == 0 means "no position".
struct SourcePos {
  int line = 0;
  int col = 0;

  bool known() const { return line > 0; }
  std::string to_string() const {
    if (!known()) return "<input>";
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

enum class ErrorKind {
  Syntax,
  Type,
  Pattern,
  DuplicateSymbol,
  UnknownSymbol,
  UnboundVariable,
  MissingKey,
  MissingSymbol,
  Shape,
  FuelExhausted,
  GridTooLarge,
  Usage,
};

const char* error_kind_name(ErrorKind kind);

// Single exception type for the whole library; `kind` tells callers (and the
// CLI exit-code mapping) what went wrong, `pos` points into the offending
// input when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, SourcePos pos = {})
      : std::runtime_error(format(kind, message, pos)),
        kind_(kind),
        message_(std::move(message)),
        pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }
  SourcePos pos() const { return pos_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            SourcePos pos);

  ErrorKind kind_;
  std::string message_;
  SourcePos pos_;
};

}  // namespace cbvtc
