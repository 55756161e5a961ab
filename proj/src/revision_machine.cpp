#include "rankrev/revision_machine.hpp"

#include <cassert>

#include "rankrev/invariant.hpp"

namespace rankrev {

namespace {

bool decodes(const TuringMachine& tm, const Nat& value) {
  return dec_pos(tm, value).has_value();
}

bool conf_bounds(const TuringMachine& tm, const RankingFunction& k) {
  const int n = tm.num_states();
  return k.at(World::W0) == 0 && k.at(World::WQ) >= 1 && k.at(World::WQ) <= n &&
         k.at(World::WHalt) == n && k.at(World::WPos) > n;
}

bool peek_bounds(const TuringMachine& tm, const RankingFunction& k) {
  const int n = tm.num_states();
  return k.at(World::WQ) == 0 && k.at(World::W0) == 1 &&
         k.at(World::WHalt) >= 0 && k.at(World::WHalt) <= n - 1 &&
         k.at(World::WPos) > n + 1;
}

bool trans_bounds(const TuringMachine& tm, const RankingFunction& k) {
  const int n = tm.num_states();
  return k.at(World::W0) == 0 && k.at(World::WQ) >= 1 && k.at(World::WQ) <= n &&
         k.at(World::WHalt) >= 2 && k.at(World::WHalt) <= 2 * n - 1 &&
         k.at(World::WPos) > n;
}

bool post_bounds(const TuringMachine& tm, const RankingFunction& k) {
  return trans_bounds(tm, k);  // POST differs from TRANS only in the decode
}

Nat conf_code(const TuringMachine& tm, const RankingFunction& k) {
  return k.at(World::WPos) - (tm.num_states() + 1);
}

Nat peek_code(const TuringMachine& tm, const RankingFunction& k) {
  return k.at(World::WPos) - (tm.num_states() + 2);
}

Nat trans_code(const TuringMachine& tm, const RankingFunction& k) {
  const int n = tm.num_states();
  return k.at(World::WPos) + (n - k.at(World::WHalt)) - (n + 1);
}

// Direct form of the success condition, cheap enough to check per call.
bool success_holds(const RankingFunction& in, Formula f, const EpistemicState& out) {
  Formula expected;
  if (auto m = in.min_over(f)) {
    for (World w : all_worlds())
      if (f.contains(w) && in.at(w) == *m) expected = expected.with(w);
  }
  return belief_models(out) == expected;
}

}  // namespace

std::string ShapeSet::to_string() const {
  if (none()) return "OTHER";
  std::string out;
  auto append = [&](Shape s, std::string_view name) {
    if (!has(s)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  append(Shape::Conf, "CONF");
  append(Shape::Peek, "PEEK");
  append(Shape::Trans, "TRANS");
  append(Shape::Post, "POST");
  return out;
}

ShapeSet classify(const TuringMachine& tm, const RankingFunction& k) {
  ShapeSet out;
  if (conf_bounds(tm, k) && decodes(tm, conf_code(tm, k))) out.add(Shape::Conf);
  if (peek_bounds(tm, k) && decodes(tm, peek_code(tm, k))) out.add(Shape::Peek);
  if (trans_bounds(tm, k) && decodes(tm, trans_code(tm, k))) out.add(Shape::Trans);
  if (post_bounds(tm, k) && decodes(tm, conf_code(tm, k))) out.add(Shape::Post);
  return out;
}

Formula phi_models(Phi phi) {
  switch (phi) {
    case Phi::QHalt: return Formula{World::WQ, World::WHalt};
    case Phi::Zero: return Formula{World::W0};
    case Phi::ZeroPos: return Formula{World::W0, World::WPos};
    case Phi::ZeroQHalt: return Formula{World::W0, World::WQ, World::WHalt};
    case Phi::ZeroQPos: return Formula{World::W0, World::WQ, World::WPos};
  }
  return Formula::none();
}

std::string_view phi_name(Phi phi) {
  switch (phi) {
    case Phi::QHalt: return "phi_q_halt";
    case Phi::Zero: return "phi_0";
    case Phi::ZeroPos: return "phi_0_pos";
    case Phi::ZeroQHalt: return "phi_0_q_halt";
    case Phi::ZeroQPos: return "phi_0_q_pos";
  }
  return "?";
}

std::optional<Phi> phi_of_formula(Formula f) {
  for (Phi phi : {Phi::QHalt, Phi::Zero, Phi::ZeroPos, Phi::ZeroQHalt, Phi::ZeroQPos})
    if (f == phi_models(phi)) return phi;
  return std::nullopt;
}

std::optional<Configuration> conf_of(const TuringMachine& tm,
                                     const RankingFunction& k, Shape shape) {
  const int n = tm.num_states();
  Nat state;
  Nat code;
  switch (shape) {
    case Shape::Conf:
    case Shape::Post:
      state = k.at(World::WQ);
      code = conf_code(tm, k);
      break;
    case Shape::Peek:
      state = n - k.at(World::WHalt);
      code = peek_code(tm, k);
      break;
    case Shape::Trans:
      state = k.at(World::WQ) + (n - k.at(World::WHalt));
      code = trans_code(tm, k);
      break;
  }
  if (state < 1 || state > n) return std::nullopt;
  auto tape = dec_pos(tm, code);
  if (!tape) return std::nullopt;
  return Configuration{static_cast<int>(state.get_si()), std::move(*tape)};
}

int post_state(const RankingFunction& k) {
  assert(k.at(World::WQ).fits_sint_p());
  return static_cast<int>(k.at(World::WQ).get_si());
}

EpistemicState initial_ranking(const TuringMachine& tm, const std::string& input) {
  const int n = tm.num_states();
  Configuration c = start_config(tm, input);
  RankingFunction k(0, n, tm.start_state(), n + 1 + enc_pos(tm, c.tape));
  RANKREV_INVARIANT(classify(tm, k).has(Shape::Conf),
                    "start ranking must be a configuration");
  return EpistemicState::top(std::move(k));
}

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::ConfPeek: return "conf+phi_q_halt";
    case Rule::ConfTrans: return "conf+phi_0";
    case Rule::PeekConf: return "peek+phi_0_pos";
    case Rule::TransPost: return "trans+phi_0_q_halt";
    case Rule::PostConf: return "post+phi_0_q_pos";
    case Rule::Fallback: return "fallback";
  }
  return "?";
}

Rule CompiledOperator::select(const EpistemicState& s, Formula f) const {
  if (!s.consistent) return Rule::Fallback;
  auto phi = phi_of_formula(f);
  if (!phi) return Rule::Fallback;
  const int n = tm_.num_states();
  const RankingFunction& k = s.kappa;
  switch (*phi) {
    case Phi::QHalt:
      if (conf_bounds(tm_, k) && decodes(tm_, conf_code(tm_, k)))
        return Rule::ConfPeek;
      break;
    case Phi::Zero:
      // Only non-halting states have a delta successor.
      if (conf_bounds(tm_, k) && k.at(World::WQ) < n &&
          decodes(tm_, conf_code(tm_, k)))
        return Rule::ConfTrans;
      break;
    case Phi::ZeroPos:
      if (peek_bounds(tm_, k) && decodes(tm_, peek_code(tm_, k)))
        return Rule::PeekConf;
      break;
    case Phi::ZeroQHalt:
      if (trans_bounds(tm_, k) && decodes(tm_, trans_code(tm_, k))) {
        Nat prior = k.at(World::WQ) + (n - k.at(World::WHalt));
        if (prior >= 1 && prior <= n - 1) return Rule::TransPost;
      }
      break;
    case Phi::ZeroQPos:
      if (post_bounds(tm_, k) && decodes(tm_, conf_code(tm_, k)))
        return Rule::PostConf;
      break;
  }
  return Rule::Fallback;
}

EpistemicState CompiledOperator::revise(const EpistemicState& s, Formula f) const {
  const Rule rule = select(s, f);
  if (rule == Rule::Fallback) {
    EpistemicState result = fallback_revise(s, f);
    RANKREV_INVARIANT(success_holds(s.kappa, f, result),
                      "revised beliefs must be the minimal models of the input");
    return result;
  }

  const int n = tm_.num_states();
  const RankingFunction& k = s.kappa;
  RankingFunction out;

  switch (rule) {
    case Rule::ConfPeek:
      out = RankingFunction(1, k.at(World::WHalt) - k.at(World::WQ), 0,
                            k.at(World::WPos) + 1);
      RANKREV_INVARIANT(peek_bounds(tm_, out), "probe rule must yield PEEK ranks");
      break;

    case Rule::ConfTrans: {
      Configuration c = *conf_of(tm_, k, Shape::Conf);
      char read = c.tape.center ? *c.tape.center : tm_.blank();
      const int i = c.state;
      const int j = tm_.delta(i, read).next_state;
      const long shift = static_cast<long>(i) - j;
      out = RankingFunction(0, k.at(World::WHalt) - shift, j,
                            k.at(World::WPos) - shift);
      RANKREV_INVARIANT(trans_bounds(tm_, out), "state rule must yield TRANS ranks");
      break;
    }

    case Rule::PeekConf:
      out = RankingFunction(0, n, n - k.at(World::WHalt), k.at(World::WPos) - 1);
      RANKREV_INVARIANT(conf_bounds(tm_, out), "reconstruct rule must yield CONF ranks");
      break;

    case Rule::TransPost: {
      Configuration prior = *conf_of(tm_, k, Shape::Trans);
      Configuration next = *step(tm_, prior);
      out = RankingFunction(0, k.at(World::WHalt), k.at(World::WQ),
                            n + enc_pos(tm_, next.tape) + 1);
      RANKREV_INVARIANT(post_bounds(tm_, out), "tape rule must yield POST ranks");
      break;
    }

    case Rule::PostConf:
      out = RankingFunction(0, n, k.at(World::WQ), k.at(World::WPos));
      RANKREV_INVARIANT(conf_bounds(tm_, out), "restore rule must yield CONF ranks");
      break;

    case Rule::Fallback:
      break;  // unreachable
  }

  EpistemicState result = EpistemicState::top(std::move(out));
  RANKREV_INVARIANT(success_holds(k, f, result),
                    "revised beliefs must be the minimal models of the input");
  return result;
}

}  // namespace rankrev
