#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "cbvtc/term.hpp"
#include "cbvtc/trs.hpp"

namespace cbvtc {

// Seeded random generation of well-typed ground terms: applications of the
// system's constructors and defined symbols up to a size budget. Arrow-typed
// argument positions are filled from a fixed library (identity, constant,
// composed unary constructors) or by partially applied symbols. The same
// seed yields the same terms.
class GroundTermGenerator {
 public:
  GroundTermGenerator(const TRS& trs, std::uint64_t seed);

  // A ground term of `type` with size() <= max_size. Throws if the signature
  // cannot produce one at all.
  Term generate(const SimpleType& type, std::size_t max_size);

  // `count` terms, cycling through the inhabitable base types.
  std::vector<Term> generate_batch(std::size_t count, std::size_t max_size);

  // Smallest achievable term size for a type (SIZE_MAX if uninhabited).
  std::size_t min_size(const SimpleType& type) const;

 private:
  struct Candidate {
    enum class Kind { SymbolApp, Identity, Constant, Composed };
    Kind kind;
    std::string symbol;               // SymbolApp: head; Composed: the unary symbol
    std::vector<SimpleType> args;     // SymbolApp: argument types to fill
  };

  void compute_min_sizes();
  std::size_t min_size_of(const Candidate& c, const SimpleType& type) const;
  const std::vector<Candidate>& candidates_for(const SimpleType& type);
  Term minimal_term(const SimpleType& type);
  std::size_t pick(std::size_t n);  // uniform in [0, n)

  const TRS& trs_;
  std::mt19937_64 rng_;
  std::map<SimpleType, std::vector<Candidate>> candidates_;
  std::map<SimpleType, std::size_t> min_sizes_;
};

}  // namespace cbvtc
