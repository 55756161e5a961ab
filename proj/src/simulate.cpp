#include "rankrev/simulate.hpp"

#include <cassert>

#include <json.hpp>

namespace rankrev {

Shape shape_for_line(std::string_view line) {
  if (line == "2" || line == "8") return Shape::Peek;
  if (line == "5") return Shape::Trans;
  if (line == "6") return Shape::Post;
  assert(line == "4" || line == "7" || line == "10");
  return Shape::Conf;
}

namespace {

class Driver {
 public:
  Driver(const TuringMachine& tm, const RevisionOperator& op, const TraceSink& sink)
      : tm_(tm), op_(op), sink_(sink) {}

  void revise(EpistemicState& state, Phi phi, std::string_view line,
              std::uint64_t step) {
    EpistemicState next = op_(state, phi_models(phi));
    ++revisions_;
    if (sink_) {
      TraceEvent e;
      e.step = step;
      e.line = line;
      e.alpha = phi;
      if (!shape_cache_) shape_cache_ = classify(tm_, state.kappa);
      e.shape_before = *shape_cache_;
      e.shape_after = classify(tm_, next.kappa);
      shape_cache_ = e.shape_after;
      e.state_after = next;
      e.conf_after = conf_of(tm_, next.kappa, shape_for_line(line));
      sink_(e);
    }
    state = std::move(next);
  }

  std::uint64_t revisions() const { return revisions_; }

 private:
  const TuringMachine& tm_;
  const RevisionOperator& op_;
  const TraceSink& sink_;
  std::uint64_t revisions_ = 0;
  std::optional<ShapeSet> shape_cache_;  // shape of the state last emitted
};

}  // namespace

SimulationResult simulate_tm(const TuringMachine& tm, const RevisionOperator& op,
                             const std::string& input, std::uint64_t fuel,
                             const TraceSink& sink) {
  Driver driver(tm, op, sink);
  EpistemicState state = initial_ranking(tm, input);

  std::uint64_t steps = 0;
  driver.revise(state, Phi::QHalt, "2", steps);

  while (!belief_models(state).contains(World::WHalt)) {
    if (steps == fuel) {
      SimulationResult r;
      r.outcome = SimulationResult::Outcome::FuelExhausted;
      r.revisions_used = 1 + driver.revisions();
      r.steps = steps;
      return r;
    }
    ++steps;
    driver.revise(state, Phi::ZeroPos, "4", steps);
    driver.revise(state, Phi::Zero, "5", steps);
    driver.revise(state, Phi::ZeroQHalt, "6", steps);
    driver.revise(state, Phi::ZeroQPos, "7", steps);
    driver.revise(state, Phi::QHalt, "8", steps);
  }

  driver.revise(state, Phi::ZeroPos, "10", steps);
  auto conf = conf_of(tm, state.kappa, Shape::Conf);
  if (!conf)
    throw IntegrityError("final state does not decode to a configuration");

  SimulationResult r;
  r.outcome = SimulationResult::Outcome::Halted;
  r.output = tape_word(conf->tape);
  r.revisions_used = 1 + driver.revisions();
  r.steps = steps;
  return r;
}

SimulationResult simulate_tm(const TuringMachine& tm, const std::string& input,
                             std::uint64_t fuel, const TraceSink& sink) {
  CompiledOperator op(tm);
  return simulate_tm(tm, op.as_function(), input, fuel, sink);
}

std::string trace_event_json(const TraceEvent& e) {
  nlohmann::ordered_json j;
  j["step"] = e.step;
  j["line"] = std::string(e.line);
  j["alpha"] = std::string(phi_name(e.alpha));
  j["shape_before"] = e.shape_before.to_string();
  j["shape_after"] = e.shape_after.to_string();
  nlohmann::ordered_json ranks;
  for (World w : all_worlds())
    ranks[std::string(world_name(w))] = e.state_after.kappa.at(w).get_str();
  ranks["b"] = e.state_after.consistent ? "top" : "bot";
  j["ranks"] = ranks;
  if (e.conf_after) {
    nlohmann::ordered_json c;
    c["state"] = e.conf_after->state;
    c["tape"] = format_tape(e.conf_after->tape);
    j["conf"] = c;
  } else {
    j["conf"] = nullptr;
  }
  return j.dump();
}

}  // namespace rankrev
