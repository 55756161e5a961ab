#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankrev/simulate.hpp"

// Randomized and exhaustive conformance batteries plus the side-by-side
// comparison of the revision-driven run against the direct interpreter.

namespace rankrev {

/// Deterministic stream for reproducible sampling; trial i of a battery
/// draws from its own split of the master seed, so trials are independent
/// of evaluation order.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}
  static SplitRng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next();
  /// Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Uniform over valid rankings with all values <= max_rank and minimum 0.
RankingFunction gen_ranking(std::uint64_t seed, unsigned max_rank);
RankingFunction gen_ranking(SplitRng& rng, unsigned max_rank);

/// All rankings with values <= max_rank and minimum 0, in a fixed order.
std::vector<RankingFunction> enumerate_rankings(unsigned max_rank);

struct Counterexample {
  std::string check;  // "success", "Q1".."Q4", "DP1".."DP4"
  EpistemicState state;
  Formula f1;
  std::optional<Formula> f2;
  std::uint64_t trial = 0;
  std::string detail;
};

struct ConformanceConfig {
  std::uint64_t trials = 10000;
  unsigned max_rank = 3;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  bool with_dp = true;
};

struct ConformanceReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;  // sampled trials or enumerated cases
  std::uint64_t checks = 0;  // individual predicate evaluations
  std::vector<Counterexample> failures;
  bool pass() const { return failures.empty(); }
  std::string to_json() const;
  std::string summary() const;
};

/// Success + Q1..Q4 per (state, formula) and DP1..DP4 per (state, formula,
/// formula). Exhaustive mode enumerates every ranking with max rank <=
/// config.max_rank, both flags, and all formulas (and all ordered formula
/// pairs); random mode samples config.trials of each. Counterexamples are
/// shrunk before reporting: ranks only decrease and formulas only lose
/// worlds, preserving the failure.
ConformanceReport run_conformance(const RevisionOperator& op,
                                  const ConformanceConfig& config);

struct EquivalenceFailure {
  std::string input;
  std::string kind;  // output, fuel, lockstep, success, q, fallback, shape, integrity
  std::uint64_t step = 0;
  std::string detail;
};

struct EquivalenceConfig {
  unsigned max_len = 4;
  std::uint64_t fuel = 10000;
  bool parallel = true;
};

struct EquivalenceReport {
  std::string machine;
  std::uint64_t inputs = 0;
  std::uint64_t revisions = 0;
  std::uint64_t halted_inputs = 0;
  std::uint64_t exhausted_inputs = 0;
  std::uint64_t output_mismatches = 0;
  std::uint64_t fuel_mismatches = 0;
  std::uint64_t lockstep_mismatches = 0;
  std::uint64_t success_failures = 0;
  std::uint64_t q_failures = 0;
  std::uint64_t fallback_dispatches = 0;
  std::uint64_t shape_mismatches = 0;
  std::uint64_t integrity_faults = 0;
  std::vector<EquivalenceFailure> failures;  // capped sample of the above

  bool pass() const;
  bool outputs_match() const { return output_mismatches + fuel_mismatches == 0; }
  bool lockstep_holds() const {
    return lockstep_mismatches + integrity_faults == 0;
  }
  bool traces_conform() const { return success_failures + q_failures == 0; }
  bool shapes_disciplined() const {
    return fallback_dispatches + shape_mismatches == 0;
  }
  std::string to_json() const;
  std::string summary() const;
};

/// For every word of length <= max_len over the machine's alphabet, run the
/// interpreter and the revision simulation side by side: outputs must agree
/// exactly (including fuel exhaustion at the same step count), the decoded
/// configuration after every loop iteration must equal the interpreter's,
/// and every trace revision is checked for success, Q1..Q4, special-rule
/// dispatch and the expected result shape.
EquivalenceReport run_equivalence(const TuringMachine& tm, const RevisionOperator& op,
                                  const EquivalenceConfig& config);
EquivalenceReport run_equivalence(const TuringMachine& tm,
                                  const EquivalenceConfig& config);

/// All words over the alphabet up to the given length, shortest first.
std::vector<std::string> words_up_to(const TuringMachine& tm, unsigned max_len);

}  // namespace rankrev
