#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cbvtc/diagnostics.hpp"
#include "cbvtc/simple_type.hpp"
#include "cbvtc/term.hpp"

namespace cbvtc {

// A signature: the declared base types and the symbols with their types.
// Symbol names and variable names are disjoint (any identifier declared here
// is a symbol everywhere else).
class Signature {
 public:
  void declare_base(const std::string& name);
  void declare_symbol(const std::string& name, SimpleType type,
                      bool constructor_keyword);

  bool has_base(const std::string& name) const;
  bool has_symbol(const std::string& name) const;
  const SimpleType& symbol_type(const std::string& name) const;  // throws UnknownSymbol
  bool declared_as_constructor(const std::string& name) const;

  const std::set<std::string>& base_types() const { return base_types_; }
  const std::map<std::string, SimpleType>& symbols() const { return symbols_; }

  // Every base type occurring in `type` must be declared.
  void check_type_declared(const SimpleType& type, SourcePos pos = {}) const;

 private:
  std::set<std::string> base_types_;
  std::map<std::string, SimpleType> symbols_;
  std::set<std::string> constructor_decls_;
};

struct Rule {
  std::string name;  // e.g. "add.2"; head symbol plus per-head counter
  Term lhs;
  Term rhs;
};

// A term rewriting system. Construction validates every rule:
//   - lhs has the shape f l_1 ... l_k with f a symbol,
//   - the l_i are built from constructors and variables only, left-linearly,
//   - fvars(rhs) is a subset of fvars(lhs), both sides have the same type,
//   - the head of a rule was not declared with the `cons` keyword.
// Immutable after construction; safe to share across threads.
class TRS {
 public:
  TRS(Signature signature, std::vector<Rule> rules);

  const Signature& signature() const { return signature_; }
  const std::vector<Rule>& rules() const { return rules_; }

  const std::set<std::string>& defined_symbols() const { return defined_; }
  const std::set<std::string>& constructor_symbols() const {
    return constructors_;
  }

  // Rules whose head is `sym`, in file order (indices into rules()).
  const std::vector<std::size_t>& rules_for(const std::string& sym) const;

  // Least k such that some rule f l_1 ... l_k exists; INT_MAX when none.
  int min_rule_args(const std::string& sym) const;

 private:
  void validate_rule(Rule& rule, int head_counter);

  Signature signature_;
  std::vector<Rule> rules_;
  std::set<std::string> defined_;
  std::set<std::string> constructors_;
  std::map<std::string, std::vector<std::size_t>> by_head_;
  std::map<std::string, int> min_args_;
};

// Definition of values: s is a value iff s is an abstraction, or
// s = f v_1 ... v_n with every v_i a value and no rule f l_1 ... l_k with
// k <= n. Ground constructor terms are always values.
bool is_value(const Term& t, const TRS& trs);

struct SymbolClassification {
  std::set<std::string> defined;
  std::set<std::string> constructors;
};
SymbolClassification classify_symbols(const TRS& trs);

}  // namespace cbvtc
