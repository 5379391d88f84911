#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cbvtc/diagnostics.hpp"
#include "cbvtc/term.hpp"
#include "cbvtc/trs.hpp"

namespace cbvtc {

// One-step reducts of a term under the weak call-by-value relation. The
// position is a path of 0 (function side) / 1 (argument side) choices from
// the root; kind is "beta" or the name of the applied rule.
struct StepResult {
  struct Reduct {
    Term term;
    std::string position;
    std::string kind;
  };
  std::vector<Reduct> reducts;

  bool empty() const { return reducts.empty(); }
};

// Guards against non-terminating systems. max_steps bounds the length of a
// single reduction path; max_breadth bounds the number of distinct terms
// (alpha-equivalence classes) the derivation-height search may visit.
struct Fuel {
  std::size_t max_steps = 100000;
  std::size_t max_breadth = 10000;
};

class FuelExhaustedError : public Error {
 public:
  FuelExhaustedError(std::string message, Term partial, std::size_t steps)
      : Error(ErrorKind::FuelExhausted, std::move(message)),
        partial_(std::move(partial)),
        steps_(steps) {}

  const Term& partial() const { return partial_; }
  std::size_t steps() const { return steps_; }

 private:
  Term partial_;
  std::size_t steps_;
};

// Matches a rule against `t` at the root: returns the substitution gamma
// with lhs[gamma] alpha-equal to t when it exists (unique by left-linearity).
// Whether the arguments are values is step's concern, not matching's.
std::optional<Subst> match_rule(const Rule& rule, const Term& t);

// All one-step reducts: rule heads f (l_1 gamma) ... (l_k gamma) -> r gamma
// with every l_i gamma a value, beta on value arguments, and congruence in
// both application positions. Never reduces under a binder.
StepResult step(const Term& t, const TRS& trs);

// The leftmost-innermost admissible step, if any.
std::optional<StepResult::Reduct> reduce_once(const Term& t, const TRS& trs);

struct NormalizeResult {
  Term normal_form;
  std::size_t steps = 0;
};

// Repeats reduce_once until no step applies. Throws FuelExhaustedError with
// the partial term once max_steps is exceeded.
NormalizeResult normalize(const Term& t, const TRS& trs, const Fuel& fuel = {});

// Length of the longest reduction sequence from t, by exhaustive search over
// step() with memoization on alpha-equivalence classes. A cycle (the same
// class recurring on one path) means the height is unbounded and raises
// FuelExhaustedError, as does exceeding either fuel limit.
std::size_t derivation_height(const Term& t, const TRS& trs,
                              const Fuel& fuel = {});

}  // namespace cbvtc
