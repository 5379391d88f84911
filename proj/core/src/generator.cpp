#include "cbvtc/generator.hpp"

#include <cassert>
#include <climits>
#include <set>

#include "cbvtc/diagnostics.hpp"

namespace cbvtc {

namespace {
constexpr std::size_t kInf = SIZE_MAX;

std::size_t add_sat(std::size_t a, std::size_t b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}
}  // namespace

GroundTermGenerator::GroundTermGenerator(const TRS& trs, std::uint64_t seed)
    : trs_(trs), rng_(seed) {
  // Collect every type reachable from the signature: full symbol types, all
  // their suffixes (partial application results), and argument types.
  std::set<SimpleType> types;
  std::vector<SimpleType> queue;
  auto add = [&](const SimpleType& t) {
    if (types.insert(t).second) queue.push_back(t);
  };
  for (const auto& [name, type] : trs_.signature().symbols()) {
    (void)name;
    SimpleType cur = type;
    add(cur);
    while (cur.is_arrow()) {
      add(cur.domain());
      cur = cur.codomain();
      add(cur);
    }
  }
  while (!queue.empty()) {
    SimpleType t = queue.back();
    queue.pop_back();
    if (t.is_arrow()) {
      add(t.domain());
      add(t.codomain());
    }
  }

  for (const SimpleType& target : types) {
    std::vector<Candidate>& list = candidates_[target];
    // Symbols whose type ends in `target` after j arguments; j = arity for
    // base targets (full application), fewer for arrow targets (partial).
    for (const auto& [name, type] : trs_.signature().symbols()) {
      SimpleType cur = type;
      std::vector<SimpleType> args;
      while (true) {
        if (cur == target) {
          list.push_back({Candidate::Kind::SymbolApp, name, args});
          break;
        }
        if (!cur.is_arrow()) break;
        args.push_back(cur.domain());
        cur = cur.codomain();
      }
    }
    if (target.is_arrow()) {
      if (target.domain() == target.codomain())
        list.push_back({Candidate::Kind::Identity, "", {}});
      list.push_back({Candidate::Kind::Constant, "", {}});
      if (target.domain() == target.codomain()) {
        for (const std::string& c : trs_.constructor_symbols()) {
          SimpleType ct = trs_.signature().symbol_type(c);
          if (ct.is_arrow() && ct.domain() == target.domain() &&
              ct.codomain() == target.domain())
            list.push_back({Candidate::Kind::Composed, c, {}});
        }
      }
    }
  }

  compute_min_sizes();
}

std::size_t GroundTermGenerator::min_size_of(const Candidate& c,
                                             const SimpleType& type) const {
  auto lookup = [&](const SimpleType& t) {
    auto it = min_sizes_.find(t);
    return it == min_sizes_.end() ? kInf : it->second;
  };
  switch (c.kind) {
    case Candidate::Kind::SymbolApp: {
      std::size_t total = 1;
      for (const SimpleType& a : c.args) total = add_sat(total, lookup(a));
      return total;
    }
    case Candidate::Kind::Identity:
      return 2;  // lambda + variable
    case Candidate::Kind::Constant:
      return add_sat(1, lookup(type.codomain()));
    case Candidate::Kind::Composed:
      return 4;  // lambda + two constructor nodes + variable
  }
  return kInf;
}

void GroundTermGenerator::compute_min_sizes() {
  for (const auto& [type, list] : candidates_) {
    (void)list;
    min_sizes_[type] = kInf;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [type, list] : candidates_) {
      std::size_t best = min_sizes_[type];
      for (const Candidate& c : list)
        best = std::min(best, min_size_of(c, type));
      if (best < min_sizes_[type]) {
        min_sizes_[type] = best;
        changed = true;
      }
    }
  }
}

std::size_t GroundTermGenerator::min_size(const SimpleType& type) const {
  auto it = min_sizes_.find(type);
  return it == min_sizes_.end() ? kInf : it->second;
}

const std::vector<GroundTermGenerator::Candidate>&
GroundTermGenerator::candidates_for(const SimpleType& type) {
  auto it = candidates_.find(type);
  if (it == candidates_.end())
    throw Error(ErrorKind::Type,
                "cannot generate terms of type " + type.to_string());
  return it->second;
}

std::size_t GroundTermGenerator::pick(std::size_t n) {
  assert(n > 0);
  // modulo keeps the stream identical across standard libraries
  return static_cast<std::size_t>(rng_() % n);
}

Term GroundTermGenerator::minimal_term(const SimpleType& type) {
  const auto& list = candidates_for(type);
  const Candidate* best = nullptr;
  std::size_t best_size = kInf;
  for (const Candidate& c : list) {
    std::size_t s = min_size_of(c, type);
    if (s < best_size) {
      best = &c;
      best_size = s;
    }
  }
  if (best == nullptr || best_size == kInf)
    throw Error(ErrorKind::Type,
                "type " + type.to_string() + " has no ground terms");
  switch (best->kind) {
    case Candidate::Kind::SymbolApp: {
      Term t = Term::sym(best->symbol);
      for (const SimpleType& a : best->args)
        t = Term::app(t, minimal_term(a));
      return t;
    }
    case Candidate::Kind::Identity:
      return Term::lam("x", type.domain(), Term::bvar(0));
    case Candidate::Kind::Constant:
      return Term::lam("x", type.domain(), minimal_term(type.codomain()));
    case Candidate::Kind::Composed:
      return Term::lam("x", type.domain(),
                       Term::app(Term::sym(best->symbol),
                                 Term::app(Term::sym(best->symbol),
                                           Term::bvar(0))));
  }
  throw Error(ErrorKind::Type, "unreachable");
}

Term GroundTermGenerator::generate(const SimpleType& type,
                                   std::size_t max_size) {
  const auto& list = candidates_for(type);
  std::vector<const Candidate*> viable;
  for (const Candidate& c : list)
    if (min_size_of(c, type) <= max_size) viable.push_back(&c);
  if (viable.empty()) {
    if (min_size(type) <= max_size)  // inconsistent tables would be a bug
      throw Error(ErrorKind::Type, "generator table inconsistency");
    throw Error(ErrorKind::Type,
                "no ground term of type " + type.to_string() + " fits size " +
                    std::to_string(max_size));
  }
  const Candidate& chosen = *viable[pick(viable.size())];
  switch (chosen.kind) {
    case Candidate::Kind::SymbolApp: {
      std::size_t budget = max_size - 1;
      std::vector<std::size_t> mins;
      std::size_t mins_total = 0;
      for (const SimpleType& a : chosen.args) {
        mins.push_back(min_size(a));
        mins_total += mins.back();
      }
      Term t = Term::sym(chosen.symbol);
      for (std::size_t i = 0; i < chosen.args.size(); ++i) {
        mins_total -= mins[i];
        std::size_t cap = budget - mins_total;  // leave room for later args
        std::size_t arg_budget = mins[i] + pick(cap - mins[i] + 1);
        t = Term::app(t, generate(chosen.args[i], arg_budget));
        budget -= arg_budget;
      }
      return t;
    }
    case Candidate::Kind::Identity:
      return Term::lam("x", type.domain(), Term::bvar(0));
    case Candidate::Kind::Constant:
      return Term::lam("x", type.domain(), minimal_term(type.codomain()));
    case Candidate::Kind::Composed:
      return Term::lam("x", type.domain(),
                       Term::app(Term::sym(chosen.symbol),
                                 Term::app(Term::sym(chosen.symbol),
                                           Term::bvar(0))));
  }
  throw Error(ErrorKind::Type, "unreachable");
}

std::vector<Term> GroundTermGenerator::generate_batch(std::size_t count,
                                                      std::size_t max_size) {
  std::vector<SimpleType> bases;
  for (const std::string& b : trs_.signature().base_types()) {
    SimpleType t = SimpleType::base(b);
    if (min_size(t) <= max_size) bases.push_back(t);
  }
  if (bases.empty())
    throw Error(ErrorKind::Type, "no base type is inhabited within the budget");
  std::vector<Term> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(generate(bases[i % bases.size()], max_size));
  return out;
}

}  // namespace cbvtc
