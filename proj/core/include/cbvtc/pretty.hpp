#pragma once

#include <optional>
#include <string>

#include "cbvtc/term.hpp"
#include "cbvtc/trs.hpp"

namespace cbvtc {

struct PrettyOptions {
  // Annotate every binder with its type, so the output parses back without
  // an expected type. Round-trip printing keeps this on.
  bool annotate_binders = true;
  // Render s^n(0) chains as decimal numerals and cons chains of numerals as
  // [a; b; c]. Display sugar for the CLI; off for round-trip printing.
  bool numeral_sugar = false;
};

// Binder hints are renamed (x, x', x'', ...) where they would shadow an
// enclosing binder or capture a free variable of the body.
std::string pretty_term(const Term& t, const PrettyOptions& opts = {});

std::string pretty_type(const SimpleType& type);

// Serializes a whole system back to the .trs file format.
std::string pretty_trs(const TRS& trs);

// Decimal value of a s^n(0) chain, if the term is one.
std::optional<unsigned long long> numeral_value(const Term& t);

}  // namespace cbvtc
