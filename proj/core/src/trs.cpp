#include "cbvtc/trs.hpp"

#include <climits>

#include "cbvtc/diagnostics.hpp"

namespace cbvtc {

void Signature::declare_base(const std::string& name) {
  if (!base_types_.insert(name).second)
    throw Error(ErrorKind::DuplicateSymbol,
                "base type '" + name + "' declared twice");
}

void Signature::declare_symbol(const std::string& name, SimpleType type,
                               bool constructor_keyword) {
  check_type_declared(type);
  if (symbols_.count(name))
    throw Error(ErrorKind::DuplicateSymbol,
                "symbol '" + name + "' declared twice");
  symbols_.emplace(name, std::move(type));
  if (constructor_keyword) constructor_decls_.insert(name);
}

bool Signature::has_base(const std::string& name) const {
  return base_types_.count(name) > 0;
}

bool Signature::has_symbol(const std::string& name) const {
  return symbols_.count(name) > 0;
}

const SimpleType& Signature::symbol_type(const std::string& name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end())
    throw Error(ErrorKind::UnknownSymbol, "symbol '" + name + "' not declared");
  return it->second;
}

bool Signature::declared_as_constructor(const std::string& name) const {
  return constructor_decls_.count(name) > 0;
}

void Signature::check_type_declared(const SimpleType& type,
                                    SourcePos pos) const {
  if (type.is_base()) {
    if (!has_base(type.base_name()))
      throw Error(ErrorKind::Type,
                  "base type '" + type.base_name() + "' not declared", pos);
    return;
  }
  check_type_declared(type.domain(), pos);
  check_type_declared(type.codomain(), pos);
}

namespace {

// Patterns under a rule head: constructors and variables only, applications
// of constructors, no lambdas, no defined symbols. `defined` is the final
// classification of the whole system.
void check_pattern(const Term& t, const std::set<std::string>& defined,
                   std::set<VarId>& seen, const std::string& rule_name) {
  switch (t.kind()) {
    case Term::Kind::FVar: {
      if (!seen.insert(t.fvar_id()).second)
        throw Error(ErrorKind::Pattern,
                    "rule " + rule_name + ": variable '" + t.fvar_name() +
                        "' occurs twice in the left-hand side");
      return;
    }
    case Term::Kind::Sym: {
      if (defined.count(t.sym_name()))
        throw Error(ErrorKind::Pattern,
                    "rule " + rule_name + ": defined symbol '" + t.sym_name() +
                        "' inside a pattern argument");
      return;
    }
    case Term::Kind::App: {
      Spine spine = spine_of(t);
      if (spine.head.kind() != Term::Kind::Sym)
        throw Error(ErrorKind::Pattern,
                    "rule " + rule_name +
                        ": pattern argument not headed by a constructor");
      check_pattern(spine.head, defined, seen, rule_name);
      for (const Term& a : spine.args)
        check_pattern(a, defined, seen, rule_name);
      return;
    }
    default:
      throw Error(ErrorKind::Pattern,
                  "rule " + rule_name +
                      ": pattern arguments must be built from constructors "
                      "and variables");
  }
}

}  // namespace

TRS::TRS(Signature signature, std::vector<Rule> rules)
    : signature_(std::move(signature)), rules_(std::move(rules)) {
  if (signature_.symbols().empty())
    throw Error(ErrorKind::Syntax, "signature must declare at least one symbol");

  // Classification first: heads of rules are the defined symbols.
  std::map<std::string, int> head_counters;
  for (Rule& rule : rules_) {
    Spine spine = spine_of(rule.lhs);
    if (spine.head.kind() != Term::Kind::Sym)
      throw Error(ErrorKind::Pattern,
                  "rule left-hand side must be headed by a symbol");
    const std::string& head = spine.head.sym_name();
    if (!signature_.has_symbol(head))
      throw Error(ErrorKind::UnknownSymbol,
                  "rule head '" + head + "' not declared");
    if (signature_.declared_as_constructor(head))
      throw Error(ErrorKind::Pattern,
                  "rule defines '" + head + "', declared as a constructor");
    if (rule.name.empty())
      rule.name = head + "." + std::to_string(++head_counters[head]);
    defined_.insert(head);
  }
  for (const auto& [name, type] : signature_.symbols()) {
    (void)type;
    if (!defined_.count(name)) constructors_.insert(name);
  }

  for (std::size_t i = 0; i < rules_.size(); ++i) {
    Rule& rule = rules_[i];
    Spine spine = spine_of(rule.lhs);
    const std::string& head = spine.head.sym_name();

    std::set<VarId> seen;
    for (const Term& pattern : spine.args)
      check_pattern(pattern, defined_, seen, rule.name);

    SimpleType lhs_type = typecheck(rule.lhs, signature_);
    SimpleType rhs_type = typecheck(rule.rhs, signature_);
    if (!(lhs_type == rhs_type))
      throw Error(ErrorKind::Type,
                  "rule " + rule.name + ": sides have different types (" +
                      lhs_type.to_string() + " vs " + rhs_type.to_string() +
                      ")");

    std::set<VarId> lhs_vars = free_vars(rule.lhs);
    for (const VarId& v : free_vars(rule.rhs)) {
      if (!lhs_vars.count(v))
        throw Error(ErrorKind::Pattern,
                    "rule " + rule.name + ": variable '" + v.name +
                        "' occurs only in the right-hand side");
    }

    by_head_[head].push_back(i);
    int k = static_cast<int>(spine.args.size());
    auto it = min_args_.find(head);
    if (it == min_args_.end() || k < it->second) min_args_[head] = k;
  }
}

const std::vector<std::size_t>& TRS::rules_for(const std::string& sym) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = by_head_.find(sym);
  return it == by_head_.end() ? kEmpty : it->second;
}

int TRS::min_rule_args(const std::string& sym) const {
  auto it = min_args_.find(sym);
  return it == min_args_.end() ? INT_MAX : it->second;
}

bool is_value(const Term& t, const TRS& trs) {
  if (t.kind() == Term::Kind::Lam) return true;
  Spine spine = spine_of(t);
  if (spine.head.kind() != Term::Kind::Sym) return false;
  if (trs.min_rule_args(spine.head.sym_name()) <=
      static_cast<int>(spine.args.size()))
    return false;
  for (const Term& a : spine.args)
    if (!is_value(a, trs)) return false;
  return true;
}

SymbolClassification classify_symbols(const TRS& trs) {
  return {trs.defined_symbols(), trs.constructor_symbols()};
}

}  // namespace cbvtc
