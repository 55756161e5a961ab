#include "rankrev/ocf.hpp"

#include <algorithm>
#include <cassert>

#include "rankrev/invariant.hpp"

#include <json.hpp>

namespace rankrev {

bool RankingFunction::is_valid() const {
  bool has_zero = false;
  for (World w : all_worlds()) {
    if (at(w) < 0) return false;
    if (at(w) == 0) has_zero = true;
  }
  return has_zero;
}

Formula RankingFunction::rank_zero() const {
  Formula f;
  for (World w : all_worlds())
    if (at(w) == 0) f = f.with(w);
  return f;
}

std::optional<Rank> RankingFunction::min_over(Formula f) const {
  std::optional<Rank> m;
  for (World w : all_worlds()) {
    if (!f.contains(w)) continue;
    if (!m || at(w) < *m) m = at(w);
  }
  return m;
}

std::string RankingFunction::to_string() const {
  std::string out = "(";
  bool first = true;
  for (World w : all_worlds()) {
    if (!first) out += ", ";
    out += std::string(world_name(w)) + ":" + at(w).get_str();
    first = false;
  }
  return out + ")";
}

Preorder::Preorder(std::vector<Formula> levels) : levels_(std::move(levels)) {
  level_.fill(-1);
  for (std::size_t i = 0; i < levels_.size(); ++i)
    for (World w : all_worlds())
      if (levels_[i].contains(w)) level_[static_cast<std::size_t>(w)] = static_cast<int>(i);
  for (int l : level_)
    RANKREV_INVARIANT(l >= 0, "preorder levels must partition the worlds");
}

Formula belief_models(const EpistemicState& s) {
  if (!s.consistent) return Formula::none();
  return s.kappa.rank_zero();
}

Preorder preorder_of(const RankingFunction& k) {
  std::array<World, kNumWorlds> order = all_worlds();
  std::stable_sort(order.begin(), order.end(),
                   [&](World a, World b) { return k.at(a) < k.at(b); });
  std::vector<Formula> levels;
  const Rank* current = nullptr;
  for (World w : order) {
    if (current == nullptr || k.at(w) != *current) {
      levels.push_back(Formula{w});
      current = &k.at(w);
    } else {
      levels.back() = levels.back().with(w);
    }
  }
  return Preorder(std::move(levels));
}

Formula min_models(Formula f, const Preorder& p) {
  Formula out;
  for (const Formula& level : p.levels()) {
    out = intersect(level, f);
    if (is_consistent(out)) return out;
  }
  return Formula::none();
}

EpistemicState fallback_revise(const EpistemicState& s, Formula f) {
  if (!is_consistent(f)) return EpistemicState::bottom(s.kappa);
  Rank m = *s.kappa.min_over(f);
  RankingFunction out = s.kappa;
  for (World w : all_worlds()) {
    if (f.contains(w))
      out.at(w) -= m;
    else
      out.at(w) += 1;
  }
  RANKREV_INVARIANT(is_consistent(out.rank_zero()),
                    "revision must leave a rank-0 world");
  return EpistemicState::top(std::move(out));
}

bool check_success(const EpistemicState& s, Formula f, const EpistemicState& r) {
  // Equivalent to min_models(f, preorder_of(s.kappa)) without building the
  // level partition; this runs once per revision in the trace checkers.
  Formula expected;
  if (auto m = s.kappa.min_over(f)) {
    for (World w : all_worlds())
      if (f.contains(w) && s.kappa.at(w) == *m) expected = expected.with(w);
  }
  return belief_models(r) == expected;
}

QuantReport check_quantitative_report(const RankingFunction& k, Formula f,
                                      const RankingFunction& k2) {
  assert(is_consistent(f));
  QuantReport rep;
  // Q1/Q2 (differences preserved inside each side) hold iff the signed
  // change k2 - k is constant on that side.
  std::array<Rank, kNumWorlds> delta;
  for (World w : all_worlds())
    delta[static_cast<std::size_t>(w)] = k2.at(w) - k.at(w);
  for (World w1 : all_worlds()) {
    for (World w2 : all_worlds()) {
      bool in1 = f.contains(w1);
      bool in2 = f.contains(w2);
      const Rank& d1 = delta[static_cast<std::size_t>(w1)];
      const Rank& d2 = delta[static_cast<std::size_t>(w2)];
      if (in1 && in2 && d1 != d2) rep.q1 = false;
      if (!in1 && !in2 && d1 != d2) rep.q2 = false;
      if (in1 && !in2) {
        int before = cmp(k.at(w1), k.at(w2));
        int after = cmp(k2.at(w1), k2.at(w2));
        if (before < 0 && !(after < 0)) rep.q3 = false;
        if (before <= 0 && !(after <= 0)) rep.q4 = false;
      }
    }
  }
  return rep;
}

bool check_quantitative(const RankingFunction& k, Formula f,
                        const RankingFunction& k2) {
  return check_quantitative_report(k, f, k2).all();
}

bool check_cr(const Preorder& p, Formula f, const Preorder& p2) {
  Formula neg = complement(f);
  for (World w1 : all_worlds()) {
    for (World w2 : all_worlds()) {
      if (f.contains(w1) && f.contains(w2) &&
          p.leq(w1, w2) != p2.leq(w1, w2))
        return false;  // CR1
      if (neg.contains(w1) && neg.contains(w2) &&
          p.leq(w1, w2) != p2.leq(w1, w2))
        return false;  // CR2
      if (f.contains(w1) && neg.contains(w2)) {
        if (p.less(w1, w2) && !p2.less(w1, w2)) return false;  // CR3
        if (p.leq(w1, w2) && !p2.leq(w1, w2)) return false;    // CR4
      }
    }
  }
  return true;
}

namespace {

// state |= f at the belief level; an inconsistent state entails everything.
bool state_entails(const EpistemicState& s, Formula f) {
  return entails(belief_models(s), f);
}

}  // namespace

DpReport check_dp(const RevisionOperator& op, const EpistemicState& s,
                  Formula f1, Formula f2) {
  DpReport rep;
  EpistemicState s1 = op(s, f1);
  EpistemicState s12 = op(s1, f2);
  EpistemicState s2 = op(s, f2);
  if (entails(f2, f1))
    rep.dp1 = belief_models(s12) == belief_models(s2);
  if (entails(f2, complement(f1)))
    rep.dp2 = belief_models(s12) == belief_models(s2);
  if (state_entails(s2, f1))
    rep.dp3 = state_entails(s12, f1);
  if (!state_entails(s2, complement(f1)))
    rep.dp4 = !state_entails(s12, complement(f1));
  return rep;
}

std::string state_to_json(const EpistemicState& s) {
  nlohmann::ordered_json j;
  for (World w : all_worlds())
    j[std::string(world_name(w))] = s.kappa.at(w).get_str();
  j["b"] = s.consistent ? "top" : "bot";
  return j.dump();
}

std::optional<EpistemicState> state_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  EpistemicState s;
  for (World w : all_worlds()) {
    std::string key(world_name(w));
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
    std::string digits = j[key].get<std::string>();
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    s.kappa.at(w) = Rank(digits);
  }
  if (!j.contains("b") || !j["b"].is_string()) return std::nullopt;
  std::string b = j["b"].get<std::string>();
  if (b != "top" && b != "bot") return std::nullopt;
  s.consistent = (b == "top");
  if (!s.kappa.is_valid()) return std::nullopt;
  return s;
}

}  // namespace rankrev
