#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rankrev/encoding.hpp"
#include "rankrev/ocf.hpp"
#include "rankrev/turing.hpp"

// Compiling a Turing machine into a revision operator. A machine
// configuration travels inside a ranking function: the rank of wq holds the
// state index, the rank of wpos holds the tape code, and whalt/w0 carry the
// bookkeeping that lets five fixed revision inputs drive the machine one
// delta step per cycle.

namespace rankrev {

// Shape constraints over a ranking function, for a machine with n states:
//
//   CONF   w0 = 0, 1 <= wq <= n, whalt = n, wpos > n,
//          decode(wpos - (n+1)) defined
//   PEEK   wq = 0, w0 = 1, 0 <= whalt <= n-1, wpos > n+1,
//          decode(wpos - (n+2)) defined
//   TRANS  w0 = 0, 1 <= wq <= n, 2 <= whalt <= 2n-1, wpos > n,
//          decode(wpos + (n - whalt) - (n+1)) defined
//   POST   w0 = 0, 1 <= wq <= n, 2 <= whalt <= 2n-1, wpos > n,
//          decode(wpos - (n+1)) defined
//
// The classes overlap (every CONF also meets the TRANS/POST envelope when
// its decode is defined), so classification yields a set and the operator
// disambiguates by the revision input, never by shape alone.
enum class Shape : std::uint8_t { Conf = 1, Peek = 2, Trans = 4, Post = 8 };

class ShapeSet {
 public:
  constexpr ShapeSet() : mask_(0) {}

  constexpr bool has(Shape s) const { return mask_ & static_cast<std::uint8_t>(s); }
  constexpr bool none() const { return mask_ == 0; }
  constexpr void add(Shape s) { mask_ |= static_cast<std::uint8_t>(s); }

  friend constexpr bool operator==(ShapeSet, ShapeSet) = default;

  /// "CONF|TRANS|POST", or "OTHER" for the empty set.
  std::string to_string() const;

 private:
  std::uint8_t mask_;
};

ShapeSet classify(const TuringMachine& tm, const RankingFunction& k);

/// The five revision inputs the simulation uses, by their model sets.
enum class Phi : std::uint8_t {
  QHalt,   // {wq, whalt}
  Zero,    // {w0}
  ZeroPos,   // {w0, wpos}
  ZeroQHalt, // {w0, wq, whalt}
  ZeroQPos,  // {w0, wq, wpos}
};

Formula phi_models(Phi phi);
std::string_view phi_name(Phi phi);
std::optional<Phi> phi_of_formula(Formula f);

/// Configuration represented by a ranking of the given shape; nullopt when
/// the position does not decode or the state index falls outside 1..n.
std::optional<Configuration> conf_of(const TuringMachine& tm,
                                     const RankingFunction& k, Shape shape);

/// For a TRANS ranking, the already-stored successor state q_{k(wq)}.
int post_state(const RankingFunction& k);

/// Ranking representation of the start configuration on `input`:
/// w0 = 0, wq = start, whalt = n, wpos = n + 1 + enc_pos(start tape).
EpistemicState initial_ranking(const TuringMachine& tm, const std::string& input);

enum class Rule : std::uint8_t {
  ConfPeek,   // CONF by {wq,whalt): begin a halt probe
  ConfTrans,  // CONF by {w0}: store the successor state
  PeekConf,   // PEEK by {w0,wpos}: back to a plain configuration
  TransPost,  // TRANS by {w0,wq,whalt}: write the successor tape
  PostConf,   // POST by {w0,wq,wpos}: restore the whalt baseline
  Fallback,
};

std::string_view rule_name(Rule r);

/// The machine-specific revision operator. Pure: equal (ranking, flag,
/// formula) inputs give equal outputs. Five (shape, input) pairs get the
/// special rules below; everything else, including flagged-inconsistent
/// states and inconsistent inputs, takes fallback_revise.
class CompiledOperator {
 public:
  explicit CompiledOperator(TuringMachine tm) : tm_(std::move(tm)) {}

  const TuringMachine& machine() const { return tm_; }

  /// Which rule (state, f) dispatches to.
  Rule select(const EpistemicState& s, Formula f) const;

  EpistemicState revise(const EpistemicState& s, Formula f) const;
  EpistemicState operator()(const EpistemicState& s, Formula f) const {
    return revise(s, f);
  }

  RevisionOperator as_function() const {
    return [op = *this](const EpistemicState& s, Formula f) { return op.revise(s, f); };
  }

 private:
  TuringMachine tm_;
};

}  // namespace rankrev
