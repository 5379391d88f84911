#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbvtc/simple_type.hpp"

namespace cbvtc {

class Signature;

// A free variable is identified by its name *and* its type: variable sets of
// distinct types are disjoint, so `x : nat` and `x : list` are different
// variables that happen to share a spelling.
struct VarId {
  std::string name;
  SimpleType type;

  bool operator==(const VarId& other) const {
    return name == other.name && type == other.type;
  }
  bool operator<(const VarId& other) const {
    if (name != other.name) return name < other.name;
    return type < other.type;
  }
};

// Terms are stored locally nameless: occurrences of bound variables are
// de Bruijn indices (BVar), free variables carry a name and a type (FVar).
// Binder nodes keep the surface name only as a printing hint, so structural
// equality *is* alpha-equivalence. Nodes are immutable and shared.
class Term {
 public:
  enum class Kind { BVar, FVar, Sym, App, Lam };

  static Term bvar(int index);
  static Term fvar(std::string name, SimpleType type);
  static Term fvar(const VarId& id) { return fvar(id.name, id.type); }
  static Term sym(std::string name);
  static Term app(Term fun, Term arg);
  static Term lam(std::string hint, SimpleType var_type, Term body);

  Kind kind() const { return node_->kind; }

  int bvar_index() const;
  const std::string& fvar_name() const;
  const SimpleType& fvar_type() const;
  VarId fvar_id() const { return {fvar_name(), fvar_type()}; }
  const std::string& sym_name() const;
  Term fun() const;
  Term arg() const;
  const std::string& binder_hint() const;
  const SimpleType& binder_type() const;
  Term body() const;

  // Structural equality modulo binder hints, i.e. alpha-equivalence.
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  // Unambiguous serialization of the alpha-equivalence class; usable as a
  // canonical map key.
  std::string key() const;

  // Number of variable, symbol, and lambda nodes (applications are free).
  std::size_t size() const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    int index = 0;             // BVar
    std::string name;          // FVar, Sym, Lam hint
    SimpleType type;           // FVar, Lam binder type
    NodePtr left;              // App fun, Lam body
    NodePtr right;             // App arg
    Node(Kind k, SimpleType t) : kind(k), type(std::move(t)) {}
  };

  explicit Term(NodePtr node) : node_(std::move(node)) {}

  NodePtr node_;
};

using Subst = std::map<VarId, Term>;

// Decomposes nested applications: spine_of(f a b) = {f, {a, b}}.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spine_of(const Term& t);
Term apply_spine(Term head, const std::vector<Term>& args);

std::set<VarId> free_vars(const Term& t);

// Checks the typing judgment of the four rules (variable, symbol,
// application, abstraction) and returns the unique type. Free variables are
// self-typed; the ctx overload additionally requires every free variable to
// be declared in ctx with a matching type.
SimpleType typecheck(const Term& t, const Signature& sig);
SimpleType typecheck(const Term& t, const Signature& sig,
                     const std::map<std::string, SimpleType>& ctx);

// Capture-avoiding simultaneous substitution of free variables. Each binding
// must map a variable to a term of the variable's type.
Term substitute(const Term& t, const Subst& subst, const Signature& sig);

bool alpha_eq(const Term& a, const Term& b);

// Replaces index 0 of `body` (the body of a lambda whose binder was just
// removed) with `value`. `value` must be locally closed.
Term open_body(const Term& body, const Term& value);

}  // namespace cbvtc
