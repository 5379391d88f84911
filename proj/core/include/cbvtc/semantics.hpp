#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cbvtc/diagnostics.hpp"
#include "cbvtc/simple_type.hpp"
#include "cbvtc/term.hpp"

namespace cbvtc {

class Signature;

// ---------------------------------------------------------------------------
// Interpretation key and semantic shapes
// ---------------------------------------------------------------------------

// Maps every base type to the dimension (>= 1) of its size vectors.
class InterpretationKey {
 public:
  void set(const std::string& base, std::size_t dim, SourcePos pos = {});
  std::size_t dim(const std::string& base) const;  // throws MissingKey
  bool has(const std::string& base) const;
  const std::map<std::string, std::size_t>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::size_t> entries_;
};

// Shape of a semantic domain. Dimension-1 size vectors are identified with
// plain naturals, so Vec always has dim >= 2.
class SemType {
 public:
  enum class Kind { Nat, Unit, Vec, Prod, Fun };

  static SemType nat();
  static SemType unit();
  static SemType vec(std::size_t dim);
  static SemType prod(SemType first, SemType second);
  static SemType fun(SemType domain, SemType codomain);

  Kind kind() const { return node_->kind; }
  std::size_t dim() const;
  SemType first() const;
  SemType second() const;
  SemType domain() const;
  SemType codomain() const;

  bool operator==(const SemType& other) const;
  bool operator!=(const SemType& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::size_t dim = 0;
    std::shared_ptr<const Node> a, b;
  };
  explicit SemType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static int compare(const Node& x, const Node& y);
  std::shared_ptr<const Node> node_;
};

// The five defining equations of the type interpretation:
//   cost(sigma)            = N x costf(sigma)
//   costf(iota)            = unit
//   costf(sigma => tau)    = (costf(sigma) x size(sigma)) -> cost(tau)
//   size(iota)             = N^{K(iota)}
//   size(sigma => tau)     = size(sigma) -> size(tau)
// type_interpretation(sigma) is cost(sigma) x size(sigma).
SemType cost_shape(const SimpleType& type, const InterpretationKey& key);
SemType costf_shape(const SimpleType& type, const InterpretationKey& key);
SemType size_shape(const SimpleType& type, const InterpretationKey& key);
SemType type_interpretation(const SimpleType& type,
                            const InterpretationKey& key);

// ---------------------------------------------------------------------------
// Weakly monotonic expressions
// ---------------------------------------------------------------------------

// Syntax of the functions allowed in interpretation files. Every construct
// is weakly monotonic: there is no subtraction, division, or conditional.
struct MonoExpr;
using MonoExprPtr = std::shared_ptr<MonoExpr>;

struct MonoExpr {
  enum class Kind { Nat, Var, Add, Mul, Max, Unit, Tuple, Proj, Lam, App };

  Kind kind;
  SourcePos pos;
  unsigned long long nat = 0;     // Nat
  std::string name;               // Var, Lam binder
  std::vector<MonoExprPtr> kids;  // Add/Mul/Max/App: 2, Tuple: n, Proj: 1, Lam: 1
  std::size_t proj_index = 0;     // Proj, 1-based

  // Set by the shape checker; a Prod-shaped binder is an argument pair whose
  // projections display as x^c / x^s.
  std::optional<SemType> binder_shape;
};

MonoExprPtr mk_nat(unsigned long long n);
MonoExprPtr mk_var(std::string name);
MonoExprPtr mk_add(MonoExprPtr a, MonoExprPtr b);
MonoExprPtr mk_mul(MonoExprPtr a, MonoExprPtr b);
MonoExprPtr mk_max(MonoExprPtr a, MonoExprPtr b);
MonoExprPtr mk_unit();
MonoExprPtr mk_tuple(std::vector<MonoExprPtr> kids);
MonoExprPtr mk_proj(MonoExprPtr e, std::size_t index);
MonoExprPtr mk_lam(std::string name, MonoExprPtr body);
MonoExprPtr mk_app(MonoExprPtr fn, MonoExprPtr arg);

// Checks `e` against `expected` in the given scope, annotating binders.
// Throws Shape errors positioned at the offending node.
void shape_check(MonoExpr& e, const SemType& expected,
                 std::map<std::string, SemType> scope = {});

bool expr_alpha_eq(const MonoExpr& a, const MonoExpr& b);

struct ExprPrintOptions {
  bool display_math = false;  // λλ binders and ^c/^s projections
};
std::string expr_to_string(const MonoExpr& e,
                           const ExprPrintOptions& opts = {});

// ---------------------------------------------------------------------------
// Semantic values
// ---------------------------------------------------------------------------

class CSValue;

// A semantic function value. Expression closures come from interpretation
// files; the term interpretation of abstractions and the sampling library
// contribute further implementations.
class SemFn {
 public:
  virtual ~SemFn() = default;
  virtual CSValue apply(const CSValue& arg) const = 0;
  virtual void print(std::ostream& os) const = 0;
};

// Immutable semantic value: a natural, the unit element, a size vector of
// dimension >= 2, a pair, or a function.
class CSValue {
 public:
  enum class Kind { Nat, Unit, Vec, Pair, Fn };

  CSValue() = default;  // the unit element

  static CSValue nat(unsigned long long n);
  static CSValue unit();
  static CSValue vec(std::vector<unsigned long long> components);
  static CSValue pair(CSValue first, CSValue second);
  static CSValue fn(std::shared_ptr<const SemFn> f);

  Kind kind() const { return kind_; }
  unsigned long long as_nat() const;
  const std::vector<unsigned long long>& as_vec() const;
  const CSValue& first() const;
  const CSValue& second() const;
  const SemFn& as_fn() const;
  std::shared_ptr<const SemFn> fn_ptr() const;

 private:
  Kind kind_ = Kind::Unit;
  unsigned long long nat_ = 0;
  std::vector<unsigned long long> vec_;
  std::shared_ptr<const CSValue> a_, b_;
  std::shared_ptr<const SemFn> fn_;
};

// Structural accessors on a cost-size tuple <(n, f^c), f^s>.
unsigned long long cost_number(const CSValue& tuple);     // pi_11
const CSValue& cost_function(const CSValue& tuple);       // pi_12
const CSValue& size_component(const CSValue& tuple);      // pi_2

CSValue apply_fn(const CSValue& f, const CSValue& arg);

// Exact equality on first-order values; throws Shape on functions.
bool data_eq(const CSValue& a, const CSValue& b);

bool value_matches_shape(const CSValue& v, const SemType& shape);

// Renders values in the <(n, f^c), f^s> notation (UTF-8).
std::string pretty_value(const CSValue& v);

// ---------------------------------------------------------------------------
// Expression evaluation
// ---------------------------------------------------------------------------

// Immutable environment; extension shares the tail.
class Env {
 public:
  Env extend(const std::string& name, CSValue value) const;
  const CSValue* lookup(const std::string& name) const;

 private:
  struct Node {
    std::string name;
    CSValue value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

// Call-by-value evaluation; total (the grammar has no recursion). `e` must
// shape-check and `env` must cover its free variables.
CSValue eval_expr(const MonoExpr& e, const Env& env);

// ---------------------------------------------------------------------------
// Interpretations, valuations, term interpretation
// ---------------------------------------------------------------------------

struct SymbolInterp {
  MonoExprPtr expr;  // the parsed entry, annotated; kept for printing
  CSValue value;     // its evaluation, of shape type_interpretation(ar(f))
};

// A cost-size tuple interpretation (K, J): the key plus one tuple per
// symbol. Value type with shared immutable state, so closures may capture
// copies cheaply.
class Interpretation {
 public:
  Interpretation(InterpretationKey key,
                 std::map<std::string, SymbolInterp> symbols);

  const InterpretationKey& key() const { return impl_->key; }
  const CSValue& symbol(const std::string& name) const;  // throws MissingSymbol
  const std::map<std::string, SymbolInterp>& symbols() const {
    return impl_->symbols;
  }

 private:
  struct Impl {
    InterpretationKey key;
    std::map<std::string, SymbolInterp> symbols;
  };
  std::shared_ptr<const Impl> impl_;
};

// Assigns cost-size tuples to variables; the cost number of every entry is 0
// (enforced on bind).
class Valuation {
 public:
  void bind(const VarId& var, CSValue tuple);
  const CSValue* lookup(const VarId& var) const;
  const std::map<VarId, CSValue>& entries() const { return entries_; }

 private:
  std::map<VarId, CSValue> entries_;
};

// The canonical zero cost function of shape costf(type).
CSValue make_zero_cost(const SimpleType& type, const InterpretationKey& key);

// Semantic application: with f^c(x^c, x^s) = (k, h),
//   <(n, f^c), f^s> . <(m, x^c), x^s>  =  <(n + m + k, h), f^s(x^s)>.
CSValue sem_apply(const CSValue& f, const CSValue& x);

// Compositional term interpretation: variables via the valuation, symbols
// via the interpretation, applications via sem_apply, abstractions as
//   <(0, \\d. (1 + pi11 [[s]]_{x:=d}, pi12 [[s]]_{x:=d})),
//     \\d_s. pi2 [[s]]_{x:=(zero, d_s)}>.
CSValue interpret_term(const Term& t, const Interpretation& interp,
                       const Valuation& alpha);

// ---------------------------------------------------------------------------
// Comparison on sample grids
// ---------------------------------------------------------------------------

struct GridSpec {
  std::vector<unsigned long long> points = {0, 1, 2, 3, 5, 8};
  std::size_t budget = 200000;  // cap on sampled valuations per rule
};

enum class CompareMode { WeakGeq, StrictCost };

struct CompareResult {
  bool holds = true;
  bool sampled = false;  // some comparison went through a function shape
  std::string witness;   // filled when holds is false

  std::string verdict() const {
    if (!holds) return "fails";
    return sampled ? "holds-on-samples" : "holds";
  }
};

// Point-wise comparison a >= b (or, in StrictCost mode on full tuples,
// strictly greater cost number and >= elsewhere). First-order components are
// compared exactly; function components pointwise on the sample grid.
CompareResult compare_values(const CSValue& a, const CSValue& b,
                             const SemType& shape, CompareMode mode,
                             const GridSpec& grid);

// Deterministic sample values of a shape: grid points for naturals, their
// cartesian powers for vectors, and the fixed function library (constant-0,
// identity, successor, doubling) for arrows.
std::vector<CSValue> sample_values(const SemType& shape, const GridSpec& grid);

// Number of samples sample_values would return (for budget checks).
unsigned long long sample_space_size(const SemType& shape,
                                     const GridSpec& grid);

}  // namespace cbvtc
