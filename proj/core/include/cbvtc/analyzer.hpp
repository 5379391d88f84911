#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbvtc/engine.hpp"
#include "cbvtc/semantics.hpp"
#include "cbvtc/term.hpp"
#include "cbvtc/trs.hpp"

namespace cbvtc {

struct RuleVerification {
  std::string rule;
  bool holds = false;
  bool sampled = false;
  unsigned long long samples = 0;  // valuations checked
  std::string witness;             // valuation and component when failed

  std::string verdict() const {
    if (!holds) return "fails";
    return sampled ? "holds-on-samples" : "holds";
  }
};

struct TermCheck {
  std::string rendered;                 // display form of the input term
  std::optional<std::size_t> dh;        // empty when fuel ran out
  unsigned long long bound = 0;         // interpreted cost number
  bool ok = false;                      // dh <= bound
  unsigned long long gap = 0;           // bound - dh (tightness, not a failure)
  std::string note;                     // fuel-exhaustion detail
};

struct VerificationReport {
  std::vector<RuleVerification> rules;
  std::vector<TermCheck> terms;

  bool all_ok() const;
  std::size_t violations() const;      // terms with dh > bound
  std::size_t fuel_exhausted() const;  // terms without a measured dh
};

// The cost number of the interpretation of a closed term: an upper bound on
// its derivation height when the interpretation orients every rule.
unsigned long long extract_bound(const Term& t, const Interpretation& interp);

// For every rule and every sampled valuation of its variables: the cost
// number of the left side must strictly exceed the right side's, and cost
// function and size must be weakly greater. Throws GridTooLarge when the
// valuation space for some rule exceeds grid.budget.
VerificationReport verify_rules(const TRS& trs, const Interpretation& interp,
                                const GridSpec& grid = {});

// Measures the derivation height of each term and compares it with the
// extracted bound. Fuel exhaustion is recorded per term, never aborts the
// batch. Report order follows input order.
VerificationReport bound_vs_actual(const TRS& trs,
                                   const Interpretation& interp,
                                   const std::vector<Term>& terms,
                                   const Fuel& fuel = {});

// Plain-text table rendering; byte-identical for identical reports. When
// `color` is on, verdicts are wrapped in ANSI green/red.
std::string render_report(const VerificationReport& report, bool color);

}  // namespace cbvtc
