#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "rankrev/revision_machine.hpp"

// Running a machine purely by revision: probe for the halting state, then
// per delta step revise by the five fixed inputs in a cycle until the
// halting world becomes believed, and decode the tape from the final state.

namespace rankrev {

/// One revision in a simulation run. `line` names the position in the
/// revision cycle: "2" initial probe, "4".."8" loop body, "10" final decode.
struct TraceEvent {
  std::uint64_t step = 0;  // completed delta steps when the event fires
  std::string_view line;
  Phi alpha = Phi::QHalt;
  ShapeSet shape_before;
  ShapeSet shape_after;
  EpistemicState state_after;
  std::optional<Configuration> conf_after;
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// Expected result shape of each cycle position.
Shape shape_for_line(std::string_view line);

/// Raised when a mid-run state stops being decodable. This never happens
/// with the compiled operator; it indicates a broken operator under test.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SimulationResult {
  enum class Outcome { Halted, FuelExhausted };
  Outcome outcome = Outcome::FuelExhausted;
  std::string output;            // left + cell + right of the final tape
  std::uint64_t revisions_used = 0;
  std::uint64_t steps = 0;       // delta steps simulated

  bool halted() const { return outcome == Outcome::Halted; }
};

/// Drive `op` through the revision cycle for at most `fuel` delta steps.
/// Emits one TraceEvent per revision when a sink is attached.
SimulationResult simulate_tm(const TuringMachine& tm, const RevisionOperator& op,
                             const std::string& input, std::uint64_t fuel,
                             const TraceSink& sink = nullptr);

/// Same, with the machine's own compiled operator.
SimulationResult simulate_tm(const TuringMachine& tm, const std::string& input,
                             std::uint64_t fuel, const TraceSink& sink = nullptr);

/// One JSON object per event: step, line, alpha, shape_before, shape_after,
/// ranks (decimal strings), conf (state index plus left|cell|right tape).
std::string trace_event_json(const TraceEvent& e);

}  // namespace rankrev
