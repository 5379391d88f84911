#include "cbvtc/engine.hpp"

#include <set>
#include <unordered_map>

namespace cbvtc {

namespace {

bool match_pattern(const Term& pattern, const Term& t, Subst& out) {
  switch (pattern.kind()) {
    case Term::Kind::FVar: {
      auto [it, inserted] = out.emplace(pattern.fvar_id(), t);
      return inserted || it->second == t;
    }
    case Term::Kind::Sym:
      return t.kind() == Term::Kind::Sym && t.sym_name() == pattern.sym_name();
    case Term::Kind::App:
      return t.kind() == Term::Kind::App &&
             match_pattern(pattern.fun(), t.fun(), out) &&
             match_pattern(pattern.arg(), t.arg(), out);
    default:
      return false;  // patterns contain no lambdas or indices
  }
}

Term plain_substitute(const Term& t, const Subst& subst) {
  switch (t.kind()) {
    case Term::Kind::BVar:
    case Term::Kind::Sym:
      return t;
    case Term::Kind::FVar: {
      auto it = subst.find(t.fvar_id());
      return it == subst.end() ? t : it->second;
    }
    case Term::Kind::App:
      return Term::app(plain_substitute(t.fun(), subst),
                       plain_substitute(t.arg(), subst));
    case Term::Kind::Lam:
      return Term::lam(t.binder_hint(), t.binder_type(),
                       plain_substitute(t.body(), subst));
  }
  return t;
}

// Root redexes of `t`: rules whose head spine is exactly t (all arguments
// values), and beta when t = (\x. s) v with v a value.
void root_reducts(const Term& t, const TRS& trs, const std::string& position,
                  std::vector<StepResult::Reduct>& out) {
  if (t.kind() != Term::Kind::App) return;

  Spine spine = spine_of(t);
  if (spine.head.kind() == Term::Kind::Sym) {
    const auto& candidates = trs.rules_for(spine.head.sym_name());
    if (candidates.empty()) return;
    for (const Term& a : spine.args)
      if (!is_value(a, trs)) return;
    for (std::size_t idx : candidates) {
      const Rule& rule = trs.rules()[idx];
      if (spine_of(rule.lhs).args.size() != spine.args.size()) continue;
      if (auto gamma = match_rule(rule, t))
        out.push_back({plain_substitute(rule.rhs, *gamma), position, rule.name});
    }
    return;
  }
  if (spine.head.kind() == Term::Kind::Lam && spine.args.size() == 1 &&
      is_value(spine.args[0], trs)) {
    out.push_back(
        {open_body(spine.head.body(), spine.args[0]), position, "beta"});
  }
}

void collect_reducts(const Term& t, const TRS& trs, const std::string& position,
                     std::vector<StepResult::Reduct>& out) {
  if (t.kind() != Term::Kind::App) return;
  // congruence on both application positions
  std::vector<StepResult::Reduct> left;
  collect_reducts(t.fun(), trs, position.empty() ? "0" : position + ".0", left);
  for (auto& r : left)
    out.push_back({Term::app(r.term, t.arg()), r.position, r.kind});
  std::vector<StepResult::Reduct> right;
  collect_reducts(t.arg(), trs, position.empty() ? "1" : position + ".1",
                  right);
  for (auto& r : right)
    out.push_back({Term::app(t.fun(), r.term), r.position, r.kind});
  root_reducts(t, trs, position, out);
}

}  // namespace

std::optional<Subst> match_rule(const Rule& rule, const Term& t) {
  Spine pattern = spine_of(rule.lhs);
  Spine subject = spine_of(t);
  if (subject.head.kind() != Term::Kind::Sym ||
      subject.head.sym_name() != pattern.head.sym_name() ||
      subject.args.size() != pattern.args.size())
    return std::nullopt;
  Subst gamma;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_pattern(pattern.args[i], subject.args[i], gamma))
      return std::nullopt;
  return gamma;
}

StepResult step(const Term& t, const TRS& trs) {
  StepResult result;
  collect_reducts(t, trs, "", result.reducts);
  return result;
}

std::optional<StepResult::Reduct> reduce_once(const Term& t, const TRS& trs) {
  if (t.kind() != Term::Kind::App) return std::nullopt;
  if (auto r = reduce_once(t.fun(), trs)) {
    std::string pos = r->position.empty() ? "0" : "0." + r->position;
    return StepResult::Reduct{Term::app(r->term, t.arg()), pos, r->kind};
  }
  if (auto r = reduce_once(t.arg(), trs)) {
    std::string pos = r->position.empty() ? "1" : "1." + r->position;
    return StepResult::Reduct{Term::app(t.fun(), r->term), pos, r->kind};
  }
  std::vector<StepResult::Reduct> roots;
  root_reducts(t, trs, "", roots);
  if (roots.empty()) return std::nullopt;
  return roots.front();  // first rule in file order
}

NormalizeResult normalize(const Term& t, const TRS& trs, const Fuel& fuel) {
  Term current = t;
  std::size_t steps = 0;
  while (auto r = reduce_once(current, trs)) {
    if (steps >= fuel.max_steps)
      throw FuelExhaustedError("no normal form within " +
                                   std::to_string(fuel.max_steps) + " steps",
                               current, steps);
    current = r->term;
    ++steps;
  }
  return {current, steps};
}

namespace {

class HeightSearch {
 public:
  HeightSearch(const TRS& trs, const Fuel& fuel) : trs_(trs), fuel_(fuel) {}

  std::size_t height(const Term& t, std::size_t depth) {
    std::string key = t.key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (on_path_.count(key))
      throw FuelExhaustedError(
          "reduction cycle detected; derivation height is unbounded", t, depth);
    if (memo_.size() + on_path_.size() >= fuel_.max_breadth)
      throw FuelExhaustedError(
          "more than " + std::to_string(fuel_.max_breadth) +
              " distinct terms visited",
          t, depth);

    StepResult reducts = step(t, trs_);
    if (reducts.empty()) {
      memo_.emplace(std::move(key), 0);
      return 0;
    }
    if (depth >= fuel_.max_steps)
      throw FuelExhaustedError("a reduction path exceeds " +
                                   std::to_string(fuel_.max_steps) + " steps",
                               t, depth);

    // distinct reducts only; overlapping rules may repeat a term
    std::set<std::string> seen;
    on_path_.insert(key);
    std::size_t best = 0;
    for (const auto& r : reducts.reducts) {
      if (!seen.insert(r.term.key()).second) continue;
      best = std::max(best, 1 + height(r.term, depth + 1));
    }
    on_path_.erase(key);
    memo_.emplace(std::move(key), best);
    return best;
  }

 private:
  const TRS& trs_;
  const Fuel& fuel_;
  std::unordered_map<std::string, std::size_t> memo_;
  std::set<std::string> on_path_;
};

}  // namespace

std::size_t derivation_height(const Term& t, const TRS& trs, const Fuel& fuel) {
  return HeightSearch(trs, fuel).height(t, 0);
}

}  // namespace cbvtc
