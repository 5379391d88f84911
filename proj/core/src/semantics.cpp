#include "cbvtc/semantics.hpp"

#include <atomic>
#include <cassert>
#include <sstream>

#include "cbvtc/pretty.hpp"
#include "cbvtc/trs.hpp"

namespace cbvtc {

// ---------------------------------------------------------------------------
// InterpretationKey
// ---------------------------------------------------------------------------

void InterpretationKey::set(const std::string& base, std::size_t dim,
                            SourcePos pos) {
  if (dim < 1)
    throw Error(ErrorKind::Syntax,
                "key for '" + base + "' must be at least 1", pos);
  if (entries_.count(base))
    throw Error(ErrorKind::DuplicateSymbol, "key for '" + base + "' set twice",
                pos);
  entries_.emplace(base, dim);
}

std::size_t InterpretationKey::dim(const std::string& base) const {
  auto it = entries_.find(base);
  if (it == entries_.end())
    throw Error(ErrorKind::MissingKey, "no key for base type '" + base + "'");
  return it->second;
}

bool InterpretationKey::has(const std::string& base) const {
  return entries_.count(base) > 0;
}

// ---------------------------------------------------------------------------
// SemType
// ---------------------------------------------------------------------------

SemType SemType::nat() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Nat;
  return SemType(std::move(node));
}

SemType SemType::unit() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Unit;
  return SemType(std::move(node));
}

SemType SemType::vec(std::size_t dim) {
  if (dim <= 1) return nat();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Vec;
  node->dim = dim;
  return SemType(std::move(node));
}

SemType SemType::prod(SemType first, SemType second) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Prod;
  node->a = std::move(first.node_);
  node->b = std::move(second.node_);
  return SemType(std::move(node));
}

SemType SemType::fun(SemType domain, SemType codomain) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Fun;
  node->a = std::move(domain.node_);
  node->b = std::move(codomain.node_);
  return SemType(std::move(node));
}

std::size_t SemType::dim() const {
  assert(kind() == Kind::Vec);
  return node_->dim;
}

SemType SemType::first() const {
  assert(kind() == Kind::Prod);
  return SemType(node_->a);
}

SemType SemType::second() const {
  assert(kind() == Kind::Prod);
  return SemType(node_->b);
}

SemType SemType::domain() const {
  assert(kind() == Kind::Fun);
  return SemType(node_->a);
}

SemType SemType::codomain() const {
  assert(kind() == Kind::Fun);
  return SemType(node_->b);
}

int SemType::compare(const Node& x, const Node& y) {
  if (x.kind != y.kind)
    return static_cast<int>(x.kind) < static_cast<int>(y.kind) ? -1 : 1;
  switch (x.kind) {
    case Kind::Nat:
    case Kind::Unit:
      return 0;
    case Kind::Vec:
      return x.dim == y.dim ? 0 : (x.dim < y.dim ? -1 : 1);
    case Kind::Prod:
    case Kind::Fun: {
      if (int c = compare(*x.a, *y.a)) return c;
      return compare(*x.b, *y.b);
    }
  }
  return 0;
}

bool SemType::operator==(const SemType& other) const {
  return compare(*node_, *other.node_) == 0;
}

std::string SemType::to_string() const {
  switch (kind()) {
    case Kind::Nat:
      return "N";
    case Kind::Unit:
      return "unit";
    case Kind::Vec:
      return "N^" + std::to_string(dim());
    case Kind::Prod:
      return "(" + first().to_string() + " x " + second().to_string() + ")";
    case Kind::Fun:
      return "(" + domain().to_string() + " => " + codomain().to_string() +
             ")";
  }
  return "?";
}

SemType costf_shape(const SimpleType& type, const InterpretationKey& key) {
  if (type.is_base()) return SemType::unit();
  return SemType::fun(
      SemType::prod(costf_shape(type.domain(), key),
                    size_shape(type.domain(), key)),
      cost_shape(type.codomain(), key));
}

SemType cost_shape(const SimpleType& type, const InterpretationKey& key) {
  return SemType::prod(SemType::nat(), costf_shape(type, key));
}

SemType size_shape(const SimpleType& type, const InterpretationKey& key) {
  if (type.is_base()) return SemType::vec(key.dim(type.base_name()));
  return SemType::fun(size_shape(type.domain(), key),
                      size_shape(type.codomain(), key));
}

SemType type_interpretation(const SimpleType& type,
                            const InterpretationKey& key) {
  return SemType::prod(cost_shape(type, key), size_shape(type, key));
}

// ---------------------------------------------------------------------------
// MonoExpr construction
// ---------------------------------------------------------------------------

namespace {
MonoExprPtr mk(MonoExpr::Kind kind) {
  auto e = std::make_shared<MonoExpr>();
  e->kind = kind;
  return e;
}
}  // namespace

MonoExprPtr mk_nat(unsigned long long n) {
  auto e = mk(MonoExpr::Kind::Nat);
  e->nat = n;
  return e;
}

MonoExprPtr mk_var(std::string name) {
  auto e = mk(MonoExpr::Kind::Var);
  e->name = std::move(name);
  return e;
}

MonoExprPtr mk_add(MonoExprPtr a, MonoExprPtr b) {
  auto e = mk(MonoExpr::Kind::Add);
  e->kids = {std::move(a), std::move(b)};
  return e;
}

MonoExprPtr mk_mul(MonoExprPtr a, MonoExprPtr b) {
  auto e = mk(MonoExpr::Kind::Mul);
  e->kids = {std::move(a), std::move(b)};
  return e;
}

MonoExprPtr mk_max(MonoExprPtr a, MonoExprPtr b) {
  auto e = mk(MonoExpr::Kind::Max);
  e->kids = {std::move(a), std::move(b)};
  return e;
}

MonoExprPtr mk_unit() { return mk(MonoExpr::Kind::Unit); }

MonoExprPtr mk_tuple(std::vector<MonoExprPtr> kids) {
  auto e = mk(MonoExpr::Kind::Tuple);
  e->kids = std::move(kids);
  return e;
}

MonoExprPtr mk_proj(MonoExprPtr inner, std::size_t index) {
  auto e = mk(MonoExpr::Kind::Proj);
  e->kids = {std::move(inner)};
  e->proj_index = index;
  return e;
}

MonoExprPtr mk_lam(std::string name, MonoExprPtr body) {
  auto e = mk(MonoExpr::Kind::Lam);
  e->name = std::move(name);
  e->kids = {std::move(body)};
  return e;
}

MonoExprPtr mk_app(MonoExprPtr fn, MonoExprPtr arg) {
  auto e = mk(MonoExpr::Kind::App);
  e->kids = {std::move(fn), std::move(arg)};
  return e;
}

// ---------------------------------------------------------------------------
// Shape checking
// ---------------------------------------------------------------------------

namespace {

using Scope = std::map<std::string, SemType>;

SemType synth_shape(MonoExpr& e, Scope& scope);
void check_shape(MonoExpr& e, const SemType& expected, Scope& scope);

SemType synth_shape(MonoExpr& e, Scope& scope) {
  switch (e.kind) {
    case MonoExpr::Kind::Nat:
      return SemType::nat();
    case MonoExpr::Kind::Unit:
      return SemType::unit();
    case MonoExpr::Kind::Var: {
      auto it = scope.find(e.name);
      if (it == scope.end())
        throw Error(ErrorKind::Shape, "unbound variable '" + e.name + "'",
                    e.pos);
      return it->second;
    }
    case MonoExpr::Kind::Add:
    case MonoExpr::Kind::Mul:
    case MonoExpr::Kind::Max: {
      check_shape(*e.kids[0], SemType::nat(), scope);
      check_shape(*e.kids[1], SemType::nat(), scope);
      return SemType::nat();
    }
    case MonoExpr::Kind::Proj: {
      SemType inner = synth_shape(*e.kids[0], scope);
      if (inner.kind() == SemType::Kind::Prod) {
        if (e.proj_index == 1) return inner.first();
        if (e.proj_index == 2) return inner.second();
        throw Error(ErrorKind::Shape,
                    "pair has no component ." + std::to_string(e.proj_index),
                    e.pos);
      }
      if (inner.kind() == SemType::Kind::Vec) {
        if (e.proj_index >= 1 && e.proj_index <= inner.dim())
          return SemType::nat();
        throw Error(ErrorKind::Shape,
                    "vector of dimension " + std::to_string(inner.dim()) +
                        " has no component ." + std::to_string(e.proj_index),
                    e.pos);
      }
      throw Error(ErrorKind::Shape,
                  "projection applied to " + inner.to_string(), e.pos);
    }
    case MonoExpr::Kind::App: {
      SemType fn = synth_shape(*e.kids[0], scope);
      if (fn.kind() != SemType::Kind::Fun)
        throw Error(ErrorKind::Shape,
                    "application of a non-function (" + fn.to_string() + ")",
                    e.pos);
      check_shape(*e.kids[1], fn.domain(), scope);
      return fn.codomain();
    }
    case MonoExpr::Kind::Tuple:
    case MonoExpr::Kind::Lam:
      throw Error(ErrorKind::Shape,
                  "cannot infer the shape of this expression here", e.pos);
  }
  throw Error(ErrorKind::Shape, "malformed expression", e.pos);
}

void check_shape(MonoExpr& e, const SemType& expected, Scope& scope) {
  switch (e.kind) {
    case MonoExpr::Kind::Lam: {
      if (expected.kind() != SemType::Kind::Fun)
        throw Error(ErrorKind::Shape,
                    "lambda where " + expected.to_string() + " was expected",
                    e.pos);
      e.binder_shape = expected.domain();
      auto saved = scope.find(e.name) != scope.end()
                       ? std::optional<SemType>(scope.at(e.name))
                       : std::nullopt;
      scope.insert_or_assign(e.name, expected.domain());
      check_shape(*e.kids[0], expected.codomain(), scope);
      if (saved)
        scope.insert_or_assign(e.name, *saved);
      else
        scope.erase(e.name);
      return;
    }
    case MonoExpr::Kind::Tuple: {
      if (expected.kind() == SemType::Kind::Prod) {
        if (e.kids.size() != 2)
          throw Error(ErrorKind::Shape,
                      "pair expected, tuple has " +
                          std::to_string(e.kids.size()) + " components",
                      e.pos);
        check_shape(*e.kids[0], expected.first(), scope);
        check_shape(*e.kids[1], expected.second(), scope);
        return;
      }
      if (expected.kind() == SemType::Kind::Vec) {
        if (e.kids.size() != expected.dim())
          throw Error(ErrorKind::Shape,
                      "size vector of dimension " +
                          std::to_string(expected.dim()) + " expected, got " +
                          std::to_string(e.kids.size()) + " components",
                      e.pos);
        for (auto& kid : e.kids) check_shape(*kid, SemType::nat(), scope);
        return;
      }
      throw Error(ErrorKind::Shape,
                  "tuple where " + expected.to_string() + " was expected",
                  e.pos);
    }
    default: {
      SemType got = synth_shape(e, scope);
      if (!(got == expected))
        throw Error(ErrorKind::Shape,
                    "expected " + expected.to_string() + ", got " +
                        got.to_string(),
                    e.pos);
      return;
    }
  }
}

}  // namespace

void shape_check(MonoExpr& e, const SemType& expected,
                 std::map<std::string, SemType> scope) {
  check_shape(e, expected, scope);
}

bool expr_alpha_eq(const MonoExpr& a, const MonoExpr& b) {
  struct Cmp {
    std::vector<std::pair<std::string, std::string>> binders;

    bool var_eq(const std::string& x, const std::string& y) {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        bool lx = it->first == x;
        bool ly = it->second == y;
        if (lx || ly) return lx && ly;
      }
      return x == y;  // both free
    }

    bool eq(const MonoExpr& a, const MonoExpr& b) {
      if (a.kind != b.kind) return false;
      switch (a.kind) {
        case MonoExpr::Kind::Nat:
          return a.nat == b.nat;
        case MonoExpr::Kind::Unit:
          return true;
        case MonoExpr::Kind::Var:
          return var_eq(a.name, b.name);
        case MonoExpr::Kind::Proj:
          return a.proj_index == b.proj_index && eq(*a.kids[0], *b.kids[0]);
        case MonoExpr::Kind::Lam: {
          binders.emplace_back(a.name, b.name);
          bool ok = eq(*a.kids[0], *b.kids[0]);
          binders.pop_back();
          return ok;
        }
        default: {
          if (a.kids.size() != b.kids.size()) return false;
          for (std::size_t i = 0; i < a.kids.size(); ++i)
            if (!eq(*a.kids[i], *b.kids[i])) return false;
          return true;
        }
      }
    }
  };
  return Cmp{}.eq(a, b);
}

// ---------------------------------------------------------------------------
// CSValue
// ---------------------------------------------------------------------------

CSValue CSValue::nat(unsigned long long n) {
  CSValue v;
  v.kind_ = Kind::Nat;
  v.nat_ = n;
  return v;
}

CSValue CSValue::unit() {
  CSValue v;
  v.kind_ = Kind::Unit;
  return v;
}

CSValue CSValue::vec(std::vector<unsigned long long> components) {
  if (components.size() == 1) return nat(components[0]);
  CSValue v;
  v.kind_ = Kind::Vec;
  v.vec_ = std::move(components);
  return v;
}

CSValue CSValue::pair(CSValue first, CSValue second) {
  CSValue v;
  v.kind_ = Kind::Pair;
  v.a_ = std::make_shared<CSValue>(std::move(first));
  v.b_ = std::make_shared<CSValue>(std::move(second));
  return v;
}

CSValue CSValue::fn(std::shared_ptr<const SemFn> f) {
  CSValue v;
  v.kind_ = Kind::Fn;
  v.fn_ = std::move(f);
  return v;
}

unsigned long long CSValue::as_nat() const {
  if (kind_ != Kind::Nat)
    throw Error(ErrorKind::Shape, "expected a natural number value");
  return nat_;
}

const std::vector<unsigned long long>& CSValue::as_vec() const {
  if (kind_ != Kind::Vec)
    throw Error(ErrorKind::Shape, "expected a size vector value");
  return vec_;
}

const CSValue& CSValue::first() const {
  if (kind_ != Kind::Pair) throw Error(ErrorKind::Shape, "expected a pair");
  return *a_;
}

const CSValue& CSValue::second() const {
  if (kind_ != Kind::Pair) throw Error(ErrorKind::Shape, "expected a pair");
  return *b_;
}

const SemFn& CSValue::as_fn() const {
  if (kind_ != Kind::Fn)
    throw Error(ErrorKind::Shape, "expected a function value");
  return *fn_;
}

std::shared_ptr<const SemFn> CSValue::fn_ptr() const {
  if (kind_ != Kind::Fn)
    throw Error(ErrorKind::Shape, "expected a function value");
  return fn_;
}

unsigned long long cost_number(const CSValue& tuple) {
  return tuple.first().first().as_nat();
}

const CSValue& cost_function(const CSValue& tuple) {
  return tuple.first().second();
}

const CSValue& size_component(const CSValue& tuple) { return tuple.second(); }

CSValue apply_fn(const CSValue& f, const CSValue& arg) {
  return f.as_fn().apply(arg);
}

bool data_eq(const CSValue& a, const CSValue& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case CSValue::Kind::Nat:
      return a.as_nat() == b.as_nat();
    case CSValue::Kind::Unit:
      return true;
    case CSValue::Kind::Vec:
      return a.as_vec() == b.as_vec();
    case CSValue::Kind::Pair:
      return data_eq(a.first(), b.first()) && data_eq(a.second(), b.second());
    case CSValue::Kind::Fn:
      throw Error(ErrorKind::Shape,
                  "exact equality is undefined on function values");
  }
  return false;
}

bool value_matches_shape(const CSValue& v, const SemType& shape) {
  switch (shape.kind()) {
    case SemType::Kind::Nat:
      return v.kind() == CSValue::Kind::Nat;
    case SemType::Kind::Unit:
      return v.kind() == CSValue::Kind::Unit;
    case SemType::Kind::Vec:
      return v.kind() == CSValue::Kind::Vec && v.as_vec().size() == shape.dim();
    case SemType::Kind::Prod:
      return v.kind() == CSValue::Kind::Pair &&
             value_matches_shape(v.first(), shape.first()) &&
             value_matches_shape(v.second(), shape.second());
    case SemType::Kind::Fun:
      return v.kind() == CSValue::Kind::Fn;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Env and expression evaluation
// ---------------------------------------------------------------------------

Env Env::extend(const std::string& name, CSValue value) const {
  Env out;
  auto node = std::make_shared<Node>();
  node->name = name;
  node->value = std::move(value);
  node->next = head_;
  out.head_ = std::move(node);
  return out;
}

const CSValue* Env::lookup(const std::string& name) const {
  for (const Node* n = head_.get(); n != nullptr; n = n->next.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

namespace {

// Closure over an interpretation-file expression.
class ExprFn : public SemFn {
 public:
  ExprFn(MonoExprPtr lam, Env env) : lam_(std::move(lam)), env_(std::move(env)) {}

  CSValue apply(const CSValue& arg) const override {
    return eval_expr(*lam_->kids[0], env_.extend(lam_->name, arg));
  }

  void print(std::ostream& os) const override;

 private:
  MonoExprPtr lam_;
  Env env_;
};

}  // namespace

CSValue eval_expr(const MonoExpr& e, const Env& env) {
  switch (e.kind) {
    case MonoExpr::Kind::Nat:
      return CSValue::nat(e.nat);
    case MonoExpr::Kind::Unit:
      return CSValue::unit();
    case MonoExpr::Kind::Var: {
      const CSValue* v = env.lookup(e.name);
      if (v == nullptr)
        throw Error(ErrorKind::Shape, "unbound variable '" + e.name + "'",
                    e.pos);
      return *v;
    }
    case MonoExpr::Kind::Add:
      return CSValue::nat(eval_expr(*e.kids[0], env).as_nat() +
                          eval_expr(*e.kids[1], env).as_nat());
    case MonoExpr::Kind::Mul:
      return CSValue::nat(eval_expr(*e.kids[0], env).as_nat() *
                          eval_expr(*e.kids[1], env).as_nat());
    case MonoExpr::Kind::Max:
      return CSValue::nat(std::max(eval_expr(*e.kids[0], env).as_nat(),
                                   eval_expr(*e.kids[1], env).as_nat()));
    case MonoExpr::Kind::Tuple: {
      std::vector<CSValue> parts;
      parts.reserve(e.kids.size());
      for (const auto& kid : e.kids) parts.push_back(eval_expr(*kid, env));
      bool all_nat = true;
      for (const CSValue& p : parts)
        if (p.kind() != CSValue::Kind::Nat) all_nat = false;
      // Cost pairs (N x F) and argument pairs (F x S) never consist of two
      // naturals, so an all-natural tuple is a size vector.
      if (all_nat) {
        std::vector<unsigned long long> comps;
        comps.reserve(parts.size());
        for (const CSValue& p : parts) comps.push_back(p.as_nat());
        return CSValue::vec(std::move(comps));
      }
      if (parts.size() == 2)
        return CSValue::pair(std::move(parts[0]), std::move(parts[1]));
      throw Error(ErrorKind::Shape, "tuple is neither a size vector nor a pair",
                  e.pos);
    }
    case MonoExpr::Kind::Proj: {
      CSValue inner = eval_expr(*e.kids[0], env);
      if (inner.kind() == CSValue::Kind::Pair) {
        if (e.proj_index == 1) return inner.first();
        if (e.proj_index == 2) return inner.second();
        throw Error(ErrorKind::Shape, "pair projection out of range", e.pos);
      }
      if (inner.kind() == CSValue::Kind::Vec) {
        const auto& comps = inner.as_vec();
        if (e.proj_index >= 1 && e.proj_index <= comps.size())
          return CSValue::nat(comps[e.proj_index - 1]);
        throw Error(ErrorKind::Shape, "vector projection out of range", e.pos);
      }
      throw Error(ErrorKind::Shape, "projection applied to a non-tuple value",
                  e.pos);
    }
    case MonoExpr::Kind::Lam: {
      // share the node
      auto lam = std::make_shared<MonoExpr>(e);
      return CSValue::fn(std::make_shared<ExprFn>(std::move(lam), env));
    }
    case MonoExpr::Kind::App: {
      CSValue fn = eval_expr(*e.kids[0], env);
      CSValue arg = eval_expr(*e.kids[1], env);
      return apply_fn(fn, arg);
    }
  }
  throw Error(ErrorKind::Shape, "malformed expression", e.pos);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Expression printer; optionally resolves free variables from an Env and
// uses the display notation (λλ, x^c/x^s).
class ExprPrinter {
 public:
  ExprPrinter(const ExprPrintOptions& opts, const Env* env)
      : opts_(opts), env_(env) {}

  // prec: 0 lambda, 1 sum, 2 product, 3 application, 4 atom
  void print(const MonoExpr& e, int prec, std::ostream& os) {
    switch (e.kind) {
      case MonoExpr::Kind::Nat:
        os << e.nat;
        return;
      case MonoExpr::Kind::Unit:
        os << "u";
        return;
      case MonoExpr::Kind::Var: {
        if (env_ != nullptr && !bound(e.name)) {
          if (const CSValue* v = env_->lookup(e.name)) {
            print_value(*v, os, prec);
            return;
          }
        }
        os << e.name;
        return;
      }
      case MonoExpr::Kind::Add: {
        if (prec > 1) os << "(";
        print(*e.kids[0], 1, os);
        os << " + ";
        print(*e.kids[1], 2, os);
        if (prec > 1) os << ")";
        return;
      }
      case MonoExpr::Kind::Mul: {
        if (prec > 2) os << "(";
        print(*e.kids[0], 2, os);
        os << " * ";
        print(*e.kids[1], 3, os);
        if (prec > 2) os << ")";
        return;
      }
      case MonoExpr::Kind::Max: {
        os << "max(";
        print(*e.kids[0], 0, os);
        os << ", ";
        print(*e.kids[1], 0, os);
        os << ")";
        return;
      }
      case MonoExpr::Kind::Tuple: {
        os << "(";
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
          if (i) os << ", ";
          print(*e.kids[i], 0, os);
        }
        os << ")";
        return;
      }
      case MonoExpr::Kind::Proj: {
        const MonoExpr& inner = *e.kids[0];
        if (opts_.display_math && inner.kind == MonoExpr::Kind::Var &&
            is_pair_binder(inner.name) && e.proj_index <= 2) {
          os << inner.name << (e.proj_index == 1 ? "^c" : "^s");
          return;
        }
        print(inner, 4, os);
        os << "." << e.proj_index;
        return;
      }
      case MonoExpr::Kind::Lam: {
        if (prec > 0) os << "(";
        os << (opts_.display_math ? "λλ" : "\\") << e.name << ". ";
        bool is_pair = e.binder_shape.has_value() &&
                       e.binder_shape->kind() == SemType::Kind::Prod;
        binders_.emplace_back(e.name, is_pair);
        print(*e.kids[0], 0, os);
        binders_.pop_back();
        if (prec > 0) os << ")";
        return;
      }
      case MonoExpr::Kind::App: {
        if (prec > 3) os << "(";
        print(*e.kids[0], 3, os);
        os << " ";
        print(*e.kids[1], 4, os);
        if (prec > 3) os << ")";
        return;
      }
    }
  }

  void print_value(const CSValue& v, std::ostream& os, int prec) {
    switch (v.kind()) {
      case CSValue::Kind::Nat:
        os << v.as_nat();
        return;
      case CSValue::Kind::Unit:
        os << "u";
        return;
      case CSValue::Kind::Vec: {
        os << "(";
        const auto& comps = v.as_vec();
        for (std::size_t i = 0; i < comps.size(); ++i) {
          if (i) os << ", ";
          os << comps[i];
        }
        os << ")";
        return;
      }
      case CSValue::Kind::Pair: {
        os << "(";
        print_value(v.first(), os, 0);
        os << ", ";
        print_value(v.second(), os, 0);
        os << ")";
        return;
      }
      case CSValue::Kind::Fn: {
        if (prec > 0) os << "(";
        v.as_fn().print(os);
        if (prec > 0) os << ")";
        return;
      }
    }
  }

 private:
  bool bound(const std::string& name) const {
    for (const auto& [n, p] : binders_)
      if (n == name) return true;
    return false;
  }

  bool is_pair_binder(const std::string& name) const {
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it)
      if (it->first == name) return it->second;
    return false;
  }

  const ExprPrintOptions& opts_;
  const Env* env_;
  std::vector<std::pair<std::string, bool>> binders_;
};

void ExprFn::print(std::ostream& os) const {
  ExprPrintOptions opts;
  opts.display_math = true;
  ExprPrinter printer(opts, &env_);
  printer.print(*lam_, 0, os);
}

}  // namespace

std::string expr_to_string(const MonoExpr& e, const ExprPrintOptions& opts) {
  std::ostringstream os;
  ExprPrinter(opts, nullptr).print(e, 0, os);
  return os.str();
}

std::string pretty_value(const CSValue& v) {
  std::ostringstream os;
  if (v.kind() == CSValue::Kind::Pair) {
    ExprPrintOptions opts;
    opts.display_math = true;
    ExprPrinter printer(opts, nullptr);
    os << "⟨";
    printer.print_value(v.first(), os, 0);
    os << ", ";
    printer.print_value(v.second(), os, 0);
    os << "⟩";
    return os.str();
  }
  ExprPrintOptions opts;
  opts.display_math = true;
  ExprPrinter(opts, nullptr).print_value(v, os, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Interpretation / Valuation
// ---------------------------------------------------------------------------

Interpretation::Interpretation(InterpretationKey key,
                               std::map<std::string, SymbolInterp> symbols) {
  auto impl = std::make_shared<Impl>();
  impl->key = std::move(key);
  impl->symbols = std::move(symbols);
  impl_ = std::move(impl);
}

const CSValue& Interpretation::symbol(const std::string& name) const {
  auto it = impl_->symbols.find(name);
  if (it == impl_->symbols.end())
    throw Error(ErrorKind::MissingSymbol,
                "no interpretation for symbol '" + name + "'");
  return it->second.value;
}

void Valuation::bind(const VarId& var, CSValue tuple) {
  if (cost_number(tuple) != 0)
    throw Error(ErrorKind::Shape,
                "valuation entry for '" + var.name +
                    "' must have cost number 0");
  entries_.insert_or_assign(var, std::move(tuple));
}

const CSValue* Valuation::lookup(const VarId& var) const {
  auto it = entries_.find(var);
  return it == entries_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Native functions, zero cost functions
// ---------------------------------------------------------------------------

namespace {

class NativeFn : public SemFn {
 public:
  NativeFn(std::function<CSValue(const CSValue&)> fn, std::string display)
      : fn_(std::move(fn)), display_(std::move(display)) {}

  CSValue apply(const CSValue& arg) const override { return fn_(arg); }
  void print(std::ostream& os) const override { os << display_; }

 private:
  std::function<CSValue(const CSValue&)> fn_;
  std::string display_;
};

CSValue zero_cost_of_costf_shape(const SemType& shape);

std::string zero_cost_display(const SemType& shape) {
  if (shape.kind() == SemType::Kind::Unit) return "u";
  return "λλ_. (0, " + zero_cost_display(shape.codomain().second()) + ")";
}

CSValue zero_cost_of_costf_shape(const SemType& shape) {
  if (shape.kind() == SemType::Kind::Unit) return CSValue::unit();
  assert(shape.kind() == SemType::Kind::Fun);
  SemType next = shape.codomain().second();
  return CSValue::fn(std::make_shared<NativeFn>(
      [next](const CSValue&) {
        return CSValue::pair(CSValue::nat(0), zero_cost_of_costf_shape(next));
      },
      zero_cost_display(shape)));
}

}  // namespace

CSValue make_zero_cost(const SimpleType& type, const InterpretationKey& key) {
  return zero_cost_of_costf_shape(costf_shape(type, key));
}

// ---------------------------------------------------------------------------
// Semantic application and term interpretation
// ---------------------------------------------------------------------------

CSValue sem_apply(const CSValue& f, const CSValue& x) {
  unsigned long long n = cost_number(f);
  unsigned long long m = cost_number(x);
  CSValue kh = apply_fn(cost_function(f),
                        CSValue::pair(cost_function(x), size_component(x)));
  unsigned long long k = kh.first().as_nat();
  return CSValue::pair(
      CSValue::pair(CSValue::nat(n + m + k), kh.second()),
      apply_fn(size_component(f), size_component(x)));
}

namespace {

std::string fresh_opened_name(const std::string& hint) {
  // '!' cannot occur in surface identifiers, so these never collide. The
  // chosen name is immediately bound in the extended valuation and never
  // reaches output.
  static std::atomic<unsigned long long> counter{0};
  return (hint.empty() ? "d" : hint) + "!" +
         std::to_string(counter.fetch_add(1));
}

// Cost or size function of an interpreted abstraction. Applying it
// interprets the opened body under the extended valuation.
class TermLambdaFn : public SemFn {
 public:
  enum class Role { Cost, Size };

  TermLambdaFn(Role role, Term lam, Interpretation interp, Valuation alpha)
      : role_(role),
        lam_(std::move(lam)),
        interp_(std::move(interp)),
        alpha_(std::move(alpha)) {}

  CSValue apply(const CSValue& arg) const override {
    std::string name = fresh_opened_name(lam_.binder_hint());
    VarId var{name, lam_.binder_type()};
    Term opened = open_body(lam_.body(), Term::fvar(var));
    Valuation extended = alpha_;
    if (role_ == Role::Cost) {
      // arg = (d^c, d^s); x is mapped to <(0, d^c), d^s>.
      extended.bind(var, CSValue::pair(
                             CSValue::pair(CSValue::nat(0), arg.first()),
                             arg.second()));
      CSValue body = interpret_term(opened, interp_, extended);
      return CSValue::pair(CSValue::nat(1 + cost_number(body)),
                           cost_function(body));
    }
    // arg = d^s; the cost component plays no role, so the canonical zero
    // cost function goes in its place.
    extended.bind(var,
                  CSValue::pair(
                      CSValue::pair(CSValue::nat(0),
                                    make_zero_cost(lam_.binder_type(),
                                                   interp_.key())),
                      arg));
    CSValue body = interpret_term(opened, interp_, extended);
    return size_component(body);
  }

  void print(std::ostream& os) const override {
    os << (role_ == Role::Cost ? "cost⟦" : "size⟦");
    PrettyOptions opts;
    opts.annotate_binders = false;
    os << pretty_term(lam_, opts) << "⟧";
  }

 private:
  Role role_;
  Term lam_;
  Interpretation interp_;
  Valuation alpha_;
};

}  // namespace

CSValue interpret_term(const Term& t, const Interpretation& interp,
                       const Valuation& alpha) {
  switch (t.kind()) {
    case Term::Kind::FVar: {
      const CSValue* v = alpha.lookup(t.fvar_id());
      if (v == nullptr)
        throw Error(ErrorKind::UnboundVariable,
                    "no valuation for variable '" + t.fvar_name() + "'");
      return *v;
    }
    case Term::Kind::Sym:
      return interp.symbol(t.sym_name());
    case Term::Kind::App:
      return sem_apply(interpret_term(t.fun(), interp, alpha),
                       interpret_term(t.arg(), interp, alpha));
    case Term::Kind::Lam: {
      auto cost = std::make_shared<TermLambdaFn>(TermLambdaFn::Role::Cost, t,
                                                 interp, alpha);
      auto size = std::make_shared<TermLambdaFn>(TermLambdaFn::Role::Size, t,
                                                 interp, alpha);
      return CSValue::pair(
          CSValue::pair(CSValue::nat(0), CSValue::fn(std::move(cost))),
          CSValue::fn(std::move(size)));
    }
    case Term::Kind::BVar:
      throw Error(ErrorKind::Shape, "cannot interpret a loose bound variable");
  }
  throw Error(ErrorKind::Shape, "malformed term");
}

// ---------------------------------------------------------------------------
// Sampling and comparison
// ---------------------------------------------------------------------------

namespace {

unsigned long long measure_value(const CSValue& v) {
  switch (v.kind()) {
    case CSValue::Kind::Nat:
      return v.as_nat();
    case CSValue::Kind::Unit:
    case CSValue::Kind::Fn:
      return 0;
    case CSValue::Kind::Vec: {
      unsigned long long m = 0;
      for (auto c : v.as_vec()) m = std::max(m, c);
      return m;
    }
    case CSValue::Kind::Pair:
      return std::max(measure_value(v.first()), measure_value(v.second()));
  }
  return 0;
}

CSValue fill_shape(const SemType& shape, unsigned long long n) {
  switch (shape.kind()) {
    case SemType::Kind::Nat:
      return CSValue::nat(n);
    case SemType::Kind::Unit:
      return CSValue::unit();
    case SemType::Kind::Vec:
      return CSValue::vec(
          std::vector<unsigned long long>(shape.dim(), n));
    case SemType::Kind::Prod:
      return CSValue::pair(fill_shape(shape.first(), n),
                           fill_shape(shape.second(), n));
    case SemType::Kind::Fun: {
      SemType cod = shape.codomain();
      return CSValue::fn(std::make_shared<NativeFn>(
          [cod, n](const CSValue&) { return fill_shape(cod, n); },
          "const" + std::to_string(n)));
    }
  }
  return CSValue::unit();
}

// The four sample functions for an arrow shape. All are weakly monotonic:
// measure takes the max over the natural components and fill is monotone in
// its argument.
std::vector<CSValue> sample_functions(const SemType& shape) {
  SemType dom = shape.domain();
  SemType cod = shape.codomain();
  std::vector<CSValue> out;
  out.push_back(CSValue::fn(std::make_shared<NativeFn>(
      [cod](const CSValue&) { return fill_shape(cod, 0); }, "const0")));
  if (dom == cod) {
    out.push_back(CSValue::fn(std::make_shared<NativeFn>(
        [](const CSValue& x) { return x; }, "id")));
  } else {
    out.push_back(CSValue::fn(std::make_shared<NativeFn>(
        [cod](const CSValue& x) { return fill_shape(cod, measure_value(x)); },
        "id")));
  }
  out.push_back(CSValue::fn(std::make_shared<NativeFn>(
      [cod](const CSValue& x) { return fill_shape(cod, measure_value(x) + 1); },
      "succ")));
  out.push_back(CSValue::fn(std::make_shared<NativeFn>(
      [cod](const CSValue& x) { return fill_shape(cod, 2 * measure_value(x)); },
      "dbl")));
  return out;
}

}  // namespace

std::vector<CSValue> sample_values(const SemType& shape, const GridSpec& grid) {
  switch (shape.kind()) {
    case SemType::Kind::Nat: {
      std::vector<CSValue> out;
      for (auto p : grid.points) out.push_back(CSValue::nat(p));
      return out;
    }
    case SemType::Kind::Unit:
      return {CSValue::unit()};
    case SemType::Kind::Vec: {
      std::vector<CSValue> out;
      std::vector<unsigned long long> current(shape.dim(), 0);
      // odometer over grid.points^dim
      std::vector<std::size_t> idx(shape.dim(), 0);
      while (true) {
        for (std::size_t i = 0; i < shape.dim(); ++i)
          current[i] = grid.points[idx[i]];
        out.push_back(CSValue::vec(current));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == grid.points.size()) {
          idx[i] = 0;
          ++i;
        }
        if (i == idx.size()) break;
      }
      return out;
    }
    case SemType::Kind::Prod: {
      std::vector<CSValue> out;
      for (const CSValue& a : sample_values(shape.first(), grid))
        for (const CSValue& b : sample_values(shape.second(), grid))
          out.push_back(CSValue::pair(a, b));
      return out;
    }
    case SemType::Kind::Fun:
      return sample_functions(shape);
  }
  return {};
}

unsigned long long sample_space_size(const SemType& shape,
                                     const GridSpec& grid) {
  switch (shape.kind()) {
    case SemType::Kind::Nat:
      return grid.points.size();
    case SemType::Kind::Unit:
      return 1;
    case SemType::Kind::Vec: {
      unsigned long long n = 1;
      for (std::size_t i = 0; i < shape.dim(); ++i) n *= grid.points.size();
      return n;
    }
    case SemType::Kind::Prod:
      return sample_space_size(shape.first(), grid) *
             sample_space_size(shape.second(), grid);
    case SemType::Kind::Fun:
      return 4;
  }
  return 1;
}

namespace {

struct CompareCtx {
  const GridSpec& grid;
  bool sampled = false;
};

bool weak_geq(const CSValue& a, const CSValue& b, const SemType& shape,
              const std::string& path, CompareCtx& ctx, std::string& witness) {
  switch (shape.kind()) {
    case SemType::Kind::Nat: {
      if (a.as_nat() >= b.as_nat()) return true;
      witness = path + ": " + std::to_string(a.as_nat()) + " < " +
                std::to_string(b.as_nat());
      return false;
    }
    case SemType::Kind::Unit:
      return true;
    case SemType::Kind::Vec: {
      const auto& va = a.as_vec();
      const auto& vb = b.as_vec();
      for (std::size_t i = 0; i < va.size(); ++i) {
        if (va[i] < vb[i]) {
          witness = path + ", component " + std::to_string(i + 1) + ": " +
                    std::to_string(va[i]) + " < " + std::to_string(vb[i]);
          return false;
        }
      }
      return true;
    }
    case SemType::Kind::Prod:
      return weak_geq(a.first(), b.first(), shape.first(), path + ".1", ctx,
                      witness) &&
             weak_geq(a.second(), b.second(), shape.second(), path + ".2", ctx,
                      witness);
    case SemType::Kind::Fun: {
      ctx.sampled = true;
      for (const CSValue& arg : sample_values(shape.domain(), ctx.grid)) {
        CSValue ra = apply_fn(a, arg);
        CSValue rb = apply_fn(b, arg);
        if (!weak_geq(ra, rb, shape.codomain(),
                      path + " at " + pretty_value(arg), ctx, witness))
          return false;
      }
      return true;
    }
  }
  return true;
}

}  // namespace

CompareResult compare_values(const CSValue& a, const CSValue& b,
                             const SemType& shape, CompareMode mode,
                             const GridSpec& grid) {
  CompareCtx ctx{grid};
  CompareResult result;
  std::string witness;

  if (mode == CompareMode::StrictCost) {
    // shape must be a full tuple (cost x size); strict on the cost number.
    unsigned long long na = cost_number(a);
    unsigned long long nb = cost_number(b);
    if (!(na > nb)) {
      result.holds = false;
      result.witness = "cost number: " + std::to_string(na) +
                       " is not greater than " + std::to_string(nb);
      return result;
    }
    SemType costf = shape.first().second();
    if (!weak_geq(cost_function(a), cost_function(b), costf, "cost function",
                  ctx, witness) ||
        !weak_geq(size_component(a), size_component(b), shape.second(), "size",
                  ctx, witness)) {
      result.holds = false;
      result.witness = witness;
    }
    result.sampled = ctx.sampled;
    return result;
  }

  if (!weak_geq(a, b, shape, "value", ctx, witness)) {
    result.holds = false;
    result.witness = witness;
  }
  result.sampled = ctx.sampled;
  return result;
}

}  // namespace cbvtc
