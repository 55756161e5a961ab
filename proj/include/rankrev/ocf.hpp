#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rankrev/logic.hpp"

// Ranking functions over the four worlds and the postulate machinery built
// on them. Ranks are arbitrary-precision naturals: tape encodings stored in
// a rank grow without bound, so fixed-width integers would overflow.

namespace rankrev {

using Rank = mpz_class;

/// Total map World -> N with at least one world at rank 0.
class RankingFunction {
 public:
  RankingFunction() : ranks_{} {}
  RankingFunction(Rank w0, Rank whalt, Rank wq, Rank wpos)
      : ranks_{std::move(w0), std::move(whalt), std::move(wq), std::move(wpos)} {}

  const Rank& at(World w) const { return ranks_[static_cast<std::size_t>(w)]; }
  Rank& at(World w) { return ranks_[static_cast<std::size_t>(w)]; }

  /// True iff all ranks are non-negative and some world has rank 0.
  bool is_valid() const;

  /// Worlds with rank 0.
  Formula rank_zero() const;

  /// Minimum rank over the models of f; nullopt when f is inconsistent.
  std::optional<Rank> min_over(Formula f) const;

  friend bool operator==(const RankingFunction& a, const RankingFunction& b) {
    return a.ranks_ == b.ranks_;
  }

  std::string to_string() const;

 private:
  std::array<Rank, kNumWorlds> ranks_;
};

/// Ranking function plus the consistency flag. A state with consistent ==
/// false believes everything: its belief models are empty no matter what
/// the ranking says.
struct EpistemicState {
  RankingFunction kappa;
  bool consistent = true;

  static EpistemicState top(RankingFunction k) { return {std::move(k), true}; }
  static EpistemicState bottom(RankingFunction k) { return {std::move(k), false}; }

  friend bool operator==(const EpistemicState&, const EpistemicState&) = default;
};

/// A total preorder over the four worlds, kept as the ordered partition of
/// the worlds into strictly increasing plausibility levels.
class Preorder {
 public:
  explicit Preorder(std::vector<Formula> levels);

  const std::vector<Formula>& levels() const { return levels_; }
  int level_of(World w) const { return level_[static_cast<std::size_t>(w)]; }
  bool leq(World w1, World w2) const { return level_of(w1) <= level_of(w2); }
  bool less(World w1, World w2) const { return level_of(w1) < level_of(w2); }

  friend bool operator==(const Preorder& a, const Preorder& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<Formula> levels_;
  std::array<int, kNumWorlds> level_;
};

/// Any revision operator: a pure function of (ranking, flag, formula).
using RevisionOperator =
    std::function<EpistemicState(const EpistemicState&, Formula)>;

Formula belief_models(const EpistemicState& s);

Preorder preorder_of(const RankingFunction& k);

/// Minimal models of f under p; empty when f is inconsistent.
Formula min_models(Formula f, const Preorder& p);

/// Generic revision used wherever no special rule applies: models of f are
/// shifted down so their minimum is 0, counter-models move up by one. An
/// inconsistent input keeps the ranking and drops the flag. A dropped flag
/// on the input is ignored for consistent f: revision acts on the ranking.
EpistemicState fallback_revise(const EpistemicState& s, Formula f);

/// Success condition: the revised belief models are exactly the minimal
/// f-models under the input state's preorder.
bool check_success(const EpistemicState& s, Formula f, const EpistemicState& r);

/// Quantitative postulates between an input and an output ranking, for a
/// consistent formula f:
///   Q1  rank differences preserved among the models of f
///   Q2  rank differences preserved among the counter-models of f
///   Q3  strict rank inequalities across the f boundary preserved
///   Q4  weak rank inequalities across the f boundary preserved
struct QuantReport {
  bool q1 = true, q2 = true, q3 = true, q4 = true;
  bool all() const { return q1 && q2 && q3 && q4; }
};
QuantReport check_quantitative_report(const RankingFunction& k, Formula f,
                                      const RankingFunction& k2);
bool check_quantitative(const RankingFunction& k, Formula f,
                        const RankingFunction& k2);

/// Preorder-level counterparts:
///   CR1  order among f-models unchanged (both directions)
///   CR2  order among counter-models unchanged (both directions)
///   CR3  strict preference of an f-model over a counter-model preserved
///   CR4  weak preference of an f-model over a counter-model preserved
bool check_cr(const Preorder& p, Formula f, const Preorder& p2);

/// Two-step iteration postulates at the belief level, for alpha = f1 and
/// beta = f2. Vacuously true antecedents report true.
struct DpReport {
  bool dp1 = true, dp2 = true, dp3 = true, dp4 = true;
  bool all() const { return dp1 && dp2 && dp3 && dp4; }
};
DpReport check_dp(const RevisionOperator& op, const EpistemicState& s,
                  Formula f1, Formula f2);

// JSON serialization: {"w0": "...", "whalt": "...", "wq": "...",
// "wpos": "...", "b": "top"|"bot"} with ranks as decimal strings.
std::string state_to_json(const EpistemicState& s);
std::optional<EpistemicState> state_from_json(const std::string& text);

}  // namespace rankrev
