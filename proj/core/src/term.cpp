#include "cbvtc/term.hpp"

#include <algorithm>
#include <cassert>

#include "cbvtc/diagnostics.hpp"
#include "cbvtc/trs.hpp"

namespace cbvtc {

namespace {
const SimpleType kNoType = SimpleType::base("");
}

Term Term::bvar(int index) {
  auto node = std::make_shared<Node>(Kind::BVar, kNoType);
  node->index = index;
  return Term(std::move(node));
}

Term Term::fvar(std::string name, SimpleType type) {
  auto node = std::make_shared<Node>(Kind::FVar, std::move(type));
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::sym(std::string name) {
  auto node = std::make_shared<Node>(Kind::Sym, kNoType);
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::app(Term fun, Term arg) {
  auto node = std::make_shared<Node>(Kind::App, kNoType);
  node->left = std::move(fun.node_);
  node->right = std::move(arg.node_);
  return Term(std::move(node));
}

Term Term::lam(std::string hint, SimpleType var_type, Term body) {
  auto node = std::make_shared<Node>(Kind::Lam, std::move(var_type));
  node->name = std::move(hint);
  node->left = std::move(body.node_);
  return Term(std::move(node));
}

int Term::bvar_index() const {
  assert(kind() == Kind::BVar);
  return node_->index;
}

const std::string& Term::fvar_name() const {
  assert(kind() == Kind::FVar);
  return node_->name;
}

const SimpleType& Term::fvar_type() const {
  assert(kind() == Kind::FVar);
  return node_->type;
}

const std::string& Term::sym_name() const {
  assert(kind() == Kind::Sym);
  return node_->name;
}

Term Term::fun() const {
  assert(kind() == Kind::App);
  return Term(node_->left);
}

Term Term::arg() const {
  assert(kind() == Kind::App);
  return Term(node_->right);
}

const std::string& Term::binder_hint() const {
  assert(kind() == Kind::Lam);
  return node_->name;
}

const SimpleType& Term::binder_type() const {
  assert(kind() == Kind::Lam);
  return node_->type;
}

Term Term::body() const {
  assert(kind() == Kind::Lam);
  return Term(node_->left);
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::BVar:
      return bvar_index() == other.bvar_index();
    case Kind::FVar:
      return fvar_name() == other.fvar_name() &&
             fvar_type() == other.fvar_type();
    case Kind::Sym:
      return sym_name() == other.sym_name();
    case Kind::App:
      return fun() == other.fun() && arg() == other.arg();
    case Kind::Lam:
      // binder hint deliberately ignored
      return binder_type() == other.binder_type() && body() == other.body();
  }
  return false;
}

std::string Term::key() const {
  switch (kind()) {
    case Kind::BVar:
      return "#" + std::to_string(bvar_index());
    case Kind::FVar:
      return "v(" + fvar_name() + ":" + fvar_type().to_string() + ")";
    case Kind::Sym:
      return "s(" + sym_name() + ")";
    case Kind::App:
      return "a(" + fun().key() + "," + arg().key() + ")";
    case Kind::Lam:
      return "l(" + binder_type().to_string() + "," + body().key() + ")";
  }
  return "?";
}

std::size_t Term::size() const {
  switch (kind()) {
    case Kind::BVar:
    case Kind::FVar:
    case Kind::Sym:
      return 1;
    case Kind::App:
      return fun().size() + arg().size();
    case Kind::Lam:
      return 1 + body().size();
  }
  return 0;
}

Spine spine_of(const Term& t) {
  std::vector<Term> args;
  Term cur = t;
  while (cur.kind() == Term::Kind::App) {
    args.push_back(cur.arg());
    cur = cur.fun();
  }
  std::reverse(args.begin(), args.end());
  return {cur, std::move(args)};
}

Term apply_spine(Term head, const std::vector<Term>& args) {
  Term out = std::move(head);
  for (const Term& a : args) out = Term::app(out, a);
  return out;
}

namespace {

void collect_free_vars(const Term& t, std::set<VarId>& out) {
  switch (t.kind()) {
    case Term::Kind::FVar:
      out.insert(t.fvar_id());
      return;
    case Term::Kind::App:
      collect_free_vars(t.fun(), out);
      collect_free_vars(t.arg(), out);
      return;
    case Term::Kind::Lam:
      collect_free_vars(t.body(), out);
      return;
    default:
      return;
  }
}

SimpleType typecheck_impl(const Term& t, const Signature& sig,
                          const std::map<std::string, SimpleType>* ctx,
                          std::vector<SimpleType>& binders) {
  switch (t.kind()) {
    case Term::Kind::BVar: {
      int i = t.bvar_index();
      if (i < 0 || static_cast<std::size_t>(i) >= binders.size())
        throw Error(ErrorKind::UnboundVariable,
                    "loose bound variable #" + std::to_string(i));
      return binders[binders.size() - 1 - static_cast<std::size_t>(i)];
    }
    case Term::Kind::FVar: {
      if (ctx != nullptr) {
        auto it = ctx->find(t.fvar_name());
        if (it == ctx->end())
          throw Error(ErrorKind::UnboundVariable,
                      "variable '" + t.fvar_name() + "' not in context");
        if (!(it->second == t.fvar_type()))
          throw Error(ErrorKind::Type,
                      "variable '" + t.fvar_name() + "' has type " +
                          t.fvar_type().to_string() + " but context declares " +
                          it->second.to_string());
      }
      return t.fvar_type();
    }
    case Term::Kind::Sym:
      return sig.symbol_type(t.sym_name());
    case Term::Kind::App: {
      SimpleType fun_type = typecheck_impl(t.fun(), sig, ctx, binders);
      SimpleType arg_type = typecheck_impl(t.arg(), sig, ctx, binders);
      if (!fun_type.is_arrow())
        throw Error(ErrorKind::Type, "cannot apply a term of base type " +
                                         fun_type.to_string());
      if (!(fun_type.domain() == arg_type))
        throw Error(ErrorKind::Type,
                    "argument type mismatch: expected " +
                        fun_type.domain().to_string() + ", got " +
                        arg_type.to_string());
      return fun_type.codomain();
    }
    case Term::Kind::Lam: {
      binders.push_back(t.binder_type());
      SimpleType body_type = typecheck_impl(t.body(), sig, ctx, binders);
      binders.pop_back();
      return SimpleType::arrow(t.binder_type(), body_type);
    }
  }
  throw Error(ErrorKind::Type, "malformed term");
}

Term substitute_impl(const Term& t, const Subst& subst) {
  switch (t.kind()) {
    case Term::Kind::BVar:
    case Term::Kind::Sym:
      return t;
    case Term::Kind::FVar: {
      auto it = subst.find(t.fvar_id());
      return it == subst.end() ? t : it->second;
    }
    case Term::Kind::App:
      return Term::app(substitute_impl(t.fun(), subst),
                       substitute_impl(t.arg(), subst));
    case Term::Kind::Lam:
      // Bound occurrences are indices, inserted terms are locally closed, so
      // no renaming is needed here; hygiene is a printing concern.
      return Term::lam(t.binder_hint(), t.binder_type(),
                       substitute_impl(t.body(), subst));
  }
  return t;
}

Term open_impl(const Term& t, const Term& value, int depth) {
  switch (t.kind()) {
    case Term::Kind::BVar: {
      int i = t.bvar_index();
      if (i == depth) return value;
      assert(i < depth);  // locally closed input
      return t;
    }
    case Term::Kind::FVar:
    case Term::Kind::Sym:
      return t;
    case Term::Kind::App:
      return Term::app(open_impl(t.fun(), value, depth),
                       open_impl(t.arg(), value, depth));
    case Term::Kind::Lam:
      return Term::lam(t.binder_hint(), t.binder_type(),
                       open_impl(t.body(), value, depth + 1));
  }
  return t;
}

}  // namespace

std::set<VarId> free_vars(const Term& t) {
  std::set<VarId> out;
  collect_free_vars(t, out);
  return out;
}

SimpleType typecheck(const Term& t, const Signature& sig) {
  std::vector<SimpleType> binders;
  return typecheck_impl(t, sig, nullptr, binders);
}

SimpleType typecheck(const Term& t, const Signature& sig,
                     const std::map<std::string, SimpleType>& ctx) {
  std::vector<SimpleType> binders;
  return typecheck_impl(t, sig, &ctx, binders);
}

Term substitute(const Term& t, const Subst& subst, const Signature& sig) {
  for (const auto& [var, replacement] : subst) {
    SimpleType replacement_type = typecheck(replacement, sig);
    if (!(replacement_type == var.type))
      throw Error(ErrorKind::Type,
                  "substitution for '" + var.name + "' has type " +
                      replacement_type.to_string() + ", expected " +
                      var.type.to_string());
  }
  return substitute_impl(t, subst);
}

bool alpha_eq(const Term& a, const Term& b) { return a == b; }

Term open_body(const Term& body, const Term& value) {
  return open_impl(body, value, 0);
}

}  // namespace cbvtc
