#include "cbvtc/analyzer.hpp"

#include <algorithm>
#include <sstream>

#include "cbvtc/pretty.hpp"

namespace cbvtc {

bool VerificationReport::all_ok() const {
  for (const RuleVerification& r : rules)
    if (!r.holds) return false;
  for (const TermCheck& t : terms)
    if (!t.dh.has_value() || !t.ok) return false;
  return true;
}

std::size_t VerificationReport::violations() const {
  std::size_t n = 0;
  for (const TermCheck& t : terms)
    if (t.dh.has_value() && !t.ok) ++n;
  return n;
}

std::size_t VerificationReport::fuel_exhausted() const {
  std::size_t n = 0;
  for (const TermCheck& t : terms)
    if (!t.dh.has_value()) ++n;
  return n;
}

unsigned long long extract_bound(const Term& t, const Interpretation& interp) {
  return cost_number(interpret_term(t, interp, Valuation{}));
}

namespace {

// Sample space for one variable: size samples for base types, cost-function
// x size samples for arrow types; the cost number of a valuation entry is
// always 0.
struct VarSamples {
  VarId var;
  std::vector<CSValue> tuples;
};

VarSamples samples_for_var(const VarId& var, const InterpretationKey& key,
                           const GridSpec& grid) {
  VarSamples out{var, {}};
  if (var.type.is_base()) {
    for (const CSValue& s : sample_values(size_shape(var.type, key), grid))
      out.tuples.push_back(CSValue::pair(
          CSValue::pair(CSValue::nat(0), CSValue::unit()), s));
    return out;
  }
  for (const CSValue& c : sample_values(costf_shape(var.type, key), grid))
    for (const CSValue& s : sample_values(size_shape(var.type, key), grid))
      out.tuples.push_back(
          CSValue::pair(CSValue::pair(CSValue::nat(0), c), s));
  return out;
}

std::string render_valuation(const std::vector<VarSamples>& spaces,
                             const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    if (i) os << ", ";
    os << spaces[i].var.name << " := "
       << pretty_value(spaces[i].tuples[idx[i]]);
  }
  os << "}";
  return os.str();
}

}  // namespace

VerificationReport verify_rules(const TRS& trs, const Interpretation& interp,
                                const GridSpec& grid) {
  VerificationReport report;
  for (const Rule& rule : trs.rules()) {
    RuleVerification rv;
    rv.rule = rule.name;

    std::vector<VarSamples> spaces;
    unsigned long long total = 1;
    for (const VarId& var : free_vars(rule.lhs)) {
      spaces.push_back(samples_for_var(var, interp.key(), grid));
      total *= spaces.back().tuples.size();
      if (total > grid.budget)
        throw Error(ErrorKind::GridTooLarge,
                    "rule " + rule.name + " needs " + std::to_string(total) +
                        "+ sampled valuations; the budget is " +
                        std::to_string(grid.budget));
    }

    SemType shape =
        type_interpretation(typecheck(rule.lhs, trs.signature()), interp.key());

    rv.holds = true;
    std::vector<std::size_t> idx(spaces.size(), 0);
    while (true) {
      Valuation alpha;
      for (std::size_t i = 0; i < spaces.size(); ++i)
        alpha.bind(spaces[i].var, spaces[i].tuples[idx[i]]);
      ++rv.samples;

      CSValue lhs = interpret_term(rule.lhs, interp, alpha);
      CSValue rhs = interpret_term(rule.rhs, interp, alpha);
      CompareResult cmp =
          compare_values(lhs, rhs, shape, CompareMode::StrictCost, grid);
      rv.sampled = rv.sampled || cmp.sampled || !spaces.empty();
      if (!cmp.holds) {
        rv.holds = false;
        rv.witness = "valuation " + render_valuation(spaces, idx) + "; " +
                     cmp.witness;
        break;
      }

      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == spaces[i].tuples.size()) {
        idx[i] = 0;
        ++i;
      }
      if (i == idx.size()) break;
    }

    report.rules.push_back(std::move(rv));
  }
  return report;
}

VerificationReport bound_vs_actual(const TRS& trs,
                                   const Interpretation& interp,
                                   const std::vector<Term>& terms,
                                   const Fuel& fuel) {
  VerificationReport report;
  PrettyOptions display;
  display.numeral_sugar = true;
  display.annotate_binders = false;
  for (const Term& term : terms) {
    TermCheck check;
    check.rendered = pretty_term(term, display);
    check.bound = extract_bound(term, interp);
    try {
      std::size_t dh = derivation_height(term, trs, fuel);
      check.dh = dh;
      check.ok = dh <= check.bound;
      check.gap = check.ok ? check.bound - dh : 0;
    } catch (const FuelExhaustedError& e) {
      check.note = e.message();
    }
    report.terms.push_back(std::move(check));
  }
  return report;
}

namespace {

std::string paint(const std::string& text, bool good, bool color) {
  if (!color) return text;
  return (good ? "\033[32m" : "\033[31m") + text + "\033[0m";
}

}  // namespace

std::string render_report(const VerificationReport& report, bool color) {
  std::ostringstream os;
  if (!report.rules.empty()) {
    std::size_t w = 4;
    for (const RuleVerification& r : report.rules)
      w = std::max(w, r.rule.size());
    os << "rule";
    os << std::string(w - 4 + 2, ' ') << "verdict           samples\n";
    for (const RuleVerification& r : report.rules) {
      std::string verdict = r.verdict();
      os << r.rule << std::string(w - r.rule.size() + 2, ' ')
         << paint(verdict, r.holds, color)
         << std::string(verdict.size() < 18 ? 18 - verdict.size() : 1, ' ')
         << r.samples << "\n";
      if (!r.holds) os << "  witness: " << r.witness << "\n";
    }
  }
  if (!report.terms.empty()) {
    std::size_t w = 4;
    for (const TermCheck& t : report.terms)
      w = std::max(w, t.rendered.size());
    os << "term" << std::string(w - 4 + 2, ' ') << "dh      bound   ok   gap\n";
    for (const TermCheck& t : report.terms) {
      os << t.rendered << std::string(w - t.rendered.size() + 2, ' ');
      std::string dh = t.dh ? std::to_string(*t.dh) : "-";
      os << dh << std::string(dh.size() < 8 ? 8 - dh.size() : 1, ' ');
      std::string bound = std::to_string(t.bound);
      os << bound << std::string(bound.size() < 8 ? 8 - bound.size() : 1, ' ');
      if (t.dh) {
        os << paint(t.ok ? "yes" : "NO", t.ok, color) << (t.ok ? "  " : "   ")
           << t.gap << "\n";
      } else {
        os << paint("-", false, color) << "    -\n";
      }
      if (!t.note.empty()) os << "  note: " << t.note << "\n";
    }
    std::size_t measured = report.terms.size() - report.fuel_exhausted();
    os << "summary: " << report.terms.size() << " terms, " << measured
       << " measured, " << report.violations() << " violations, "
       << report.fuel_exhausted() << " fuel-exhausted\n";
  }
  return os.str();
}

}  // namespace cbvtc
