#include "cbvtc/pretty.hpp"

#include <set>
#include <sstream>
#include <vector>

namespace cbvtc {

std::string pretty_type(const SimpleType& type) { return type.to_string(); }

std::optional<unsigned long long> numeral_value(const Term& t) {
  unsigned long long n = 0;
  Term cur = t;
  while (cur.kind() == Term::Kind::App &&
         cur.fun().kind() == Term::Kind::Sym && cur.fun().sym_name() == "s") {
    ++n;
    cur = cur.arg();
  }
  if (cur.kind() == Term::Kind::Sym && cur.sym_name() == "0") return n;
  return std::nullopt;
}

namespace {

std::optional<std::vector<Term>> list_elements(const Term& t) {
  std::vector<Term> elems;
  Term cur = t;
  while (true) {
    if (cur.kind() == Term::Kind::Sym && cur.sym_name() == "nil") return elems;
    if (cur.kind() == Term::Kind::App && cur.fun().kind() == Term::Kind::App &&
        cur.fun().fun().kind() == Term::Kind::Sym &&
        cur.fun().fun().sym_name() == "cons") {
      elems.push_back(cur.fun().arg());
      cur = cur.arg();
      continue;
    }
    return std::nullopt;
  }
}

void collect_free_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::FVar:
      out.insert(t.fvar_name());
      return;
    case Term::Kind::App:
      collect_free_names(t.fun(), out);
      collect_free_names(t.arg(), out);
      return;
    case Term::Kind::Lam:
      collect_free_names(t.body(), out);
      return;
    default:
      return;
  }
}

class TermPrinter {
 public:
  TermPrinter(const PrettyOptions& opts, std::set<std::string> avoid)
      : opts_(opts), avoid_(std::move(avoid)) {}

  // prec: 0 = top (lambda allowed), 1 = application spine, 2 = atom.
  void print(const Term& t, int prec, std::ostream& os) {
    if (opts_.numeral_sugar) {
      if (auto n = numeral_value(t)) {
        os << *n;
        return;
      }
      if (auto elems = list_elements(t)) {
        os << "[";
        for (std::size_t i = 0; i < elems->size(); ++i) {
          if (i) os << "; ";
          print((*elems)[i], 0, os);
        }
        os << "]";
        return;
      }
    }
    switch (t.kind()) {
      case Term::Kind::BVar: {
        std::size_t i = static_cast<std::size_t>(t.bvar_index());
        if (i < binders_.size())
          os << binders_[binders_.size() - 1 - i];
        else
          os << "#" << t.bvar_index();  // loose index; not parseable
        return;
      }
      case Term::Kind::FVar:
        os << t.fvar_name();
        return;
      case Term::Kind::Sym:
        os << t.sym_name();
        return;
      case Term::Kind::App: {
        bool paren = prec >= 2;
        if (paren) os << "(";
        print(t.fun(), 1, os);
        os << " ";
        print(t.arg(), 2, os);
        if (paren) os << ")";
        return;
      }
      case Term::Kind::Lam: {
        bool paren = prec >= 1;
        if (paren) os << "(";
        std::string name = fresh(t.binder_hint());
        os << "\\" << name;
        if (opts_.annotate_binders) os << " : " << t.binder_type().to_string();
        os << ". ";
        binders_.push_back(name);
        avoid_.insert(name);
        print(t.body(), 0, os);
        avoid_.erase(name);
        binders_.pop_back();
        if (paren) os << ")";
        return;
      }
    }
  }

 private:
  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    std::string name = base;
    while (avoid_.count(name)) name += "'";
    return name;
  }

  const PrettyOptions& opts_;
  std::set<std::string> avoid_;
  std::vector<std::string> binders_;
};

}  // namespace

std::string pretty_term(const Term& t, const PrettyOptions& opts) {
  std::set<std::string> avoid;
  collect_free_names(t, avoid);
  std::ostringstream os;
  TermPrinter(opts, std::move(avoid)).print(t, 0, os);
  return os.str();
}

std::string pretty_trs(const TRS& trs) {
  std::ostringstream os;
  for (const std::string& base : trs.signature().base_types())
    os << "type " << base << "\n";
  for (const auto& [name, type] : trs.signature().symbols()) {
    const char* kw = trs.defined_symbols().count(name) ? "fun" : "cons";
    os << kw << " " << name << " : " << type.to_string() << "\n";
  }
  PrettyOptions opts;
  for (const Rule& rule : trs.rules())
    os << "rule " << pretty_term(rule.lhs, opts) << " => "
       << pretty_term(rule.rhs, opts) << "\n";
  return os.str();
}

}  // namespace cbvtc
