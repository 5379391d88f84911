#include "cbvtc/diagnostics.hpp"

namespace cbvtc {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::Type: return "type error";
    case ErrorKind::Pattern: return "pattern error";
    case ErrorKind::DuplicateSymbol: return "duplicate symbol";
    case ErrorKind::UnknownSymbol: return "unknown symbol";
    case ErrorKind::UnboundVariable: return "unbound variable";
    case ErrorKind::MissingKey: return "missing key";
    case ErrorKind::MissingSymbol: return "missing symbol";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::FuelExhausted: return "fuel exhausted";
    case ErrorKind::GridTooLarge: return "grid too large";
    case ErrorKind::Usage: return "usage error";
  }
  return "error";
}

std::string Error::format(ErrorKind kind, const std::string& message,
                          SourcePos pos) {
  std::string out;
  if (pos.known()) {
    out += pos.to_string();
    out += ": ";
  }
  out += error_kind_name(kind);
  out += ": ";
  out += message;
  return out;
}

}  // namespace cbvtc
