#pragma once

#include <string>

#include "cbvtc/semantics.hpp"
#include "cbvtc/term.hpp"
#include "cbvtc/trs.hpp"

namespace cbvtc {

// An input file. `.trs` files declare a system, `.csint` files an
// interpretation, and query terms arrive as plain strings.
struct SourceFile {
  enum class Kind { Trs, Interpretation, TermText };
  std::string path;
  std::string text;
  Kind kind = Kind::TermText;
};

SourceFile load_file(const std::string& path, SourceFile::Kind kind);

// .trs format, line oriented, '#' comments:
//   type nat
//   cons 0 : nat
//   cons s : nat -> nat
//   fun add : nat -> nat -> nat
//   rule add x 0 => x
//   rule add x (s y) => s (add x y)
// Rule variables are typed by inference from the head symbol; binder
// annotations (\x : nat. ...) are optional where the type is determined by
// the context. Errors carry the input position.
TRS parse_trs(const std::string& text);

// A closed term over the system's signature. Numeral sugar n expands to
// s^n(0), list sugar [a; b; c] to cons chains.
Term parse_term(const std::string& text, const TRS& trs);

// .csint format:
//   key nat = 1
//   int s = < (0, \x. (0, u)), \x. x + 1 >
// Every base type needs a key, every symbol an entry; entries are closed and
// shape-checked against the interpretation of the symbol's type.
Interpretation parse_interpretation(const std::string& text, const TRS& trs);

// Inverse of parse_interpretation up to alpha-renaming of expression binders.
std::string pretty_interpretation(const Interpretation& interp);

}  // namespace cbvtc
