#include "rankrev/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace rankrev {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::size_t kMaxStoredFailures = 32;

}  // namespace

SplitRng SplitRng::for_trial(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t s = seed;
  std::uint64_t mixed = splitmix64(s) ^ (trial * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
  return SplitRng(mixed);
}

std::uint64_t SplitRng::next() { return splitmix64(state_); }

std::uint64_t SplitRng::below(std::uint64_t bound) {
  assert(bound >= 1);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return r % bound;
}

RankingFunction gen_ranking(SplitRng& rng, unsigned max_rank) {
  while (true) {
    RankingFunction k;
    bool has_zero = false;
    for (World w : all_worlds()) {
      std::uint64_t v = rng.below(static_cast<std::uint64_t>(max_rank) + 1);
      k.at(w) = static_cast<unsigned long>(v);
      has_zero = has_zero || v == 0;
    }
    if (has_zero) return k;
  }
}

RankingFunction gen_ranking(std::uint64_t seed, unsigned max_rank) {
  SplitRng rng(seed);
  return gen_ranking(rng, max_rank);
}

std::vector<RankingFunction> enumerate_rankings(unsigned max_rank) {
  std::vector<RankingFunction> out;
  const unsigned base = max_rank + 1;
  const std::uint64_t total = static_cast<std::uint64_t>(base) * base * base * base;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    RankingFunction k;
    bool has_zero = false;
    for (World w : all_worlds()) {
      unsigned long v = c % base;
      c /= base;
      k.at(w) = v;
      has_zero = has_zero || v == 0;
    }
    if (has_zero) out.push_back(std::move(k));
  }
  return out;
}

namespace {

// Re-evaluates the failed predicate on a candidate input; used to shrink.
using FailurePredicate =
    std::function<bool(const EpistemicState&, Formula, const std::optional<Formula>&)>;

void shrink(Counterexample& cex, const FailurePredicate& still_fails) {
  bool changed = true;
  int guard = 0;
  while (changed && ++guard < 64) {
    changed = false;
    for (World w : all_worlds()) {
      const Rank& r = cex.state.kappa.at(w);
      for (const Rank& candidate : {Rank(0), Rank(r / 2), Rank(r - 1)}) {
        if (candidate < 0 || candidate >= r) continue;
        EpistemicState trial = cex.state;
        trial.kappa.at(w) = candidate;
        if (!trial.kappa.is_valid()) continue;
        if (still_fails(trial, cex.f1, cex.f2)) {
          cex.state = trial;
          changed = true;
          break;
        }
      }
    }
    for (World w : all_worlds()) {
      if (cex.f1.contains(w) &&
          still_fails(cex.state, cex.f1.without(w), cex.f2)) {
        cex.f1 = cex.f1.without(w);
        changed = true;
      }
      if (cex.f2 && cex.f2->contains(w)) {
        std::optional<Formula> smaller = cex.f2->without(w);
        if (still_fails(cex.state, cex.f1, smaller)) {
          cex.f2 = smaller;
          changed = true;
        }
      }
    }
  }
}

class ConformanceRunner {
 public:
  ConformanceRunner(const RevisionOperator& op, const ConformanceConfig& config,
                    ConformanceReport& report)
      : op_(op), config_(config), report_(report) {}

  // Success plus Q1..Q4 for one (state, formula).
  void check_single(const EpistemicState& s, Formula f, std::uint64_t trial) {
    EpistemicState r = op_(s, f);
    ++report_.checks;
    if (!check_success(s, f, r)) {
      record("success", s, f, std::nullopt, trial,
             "revised beliefs " + belief_models(r).to_string() +
                 " != minimal models " +
                 min_models(f, preorder_of(s.kappa)).to_string());
    }
    if (!is_consistent(f)) return;
    QuantReport q = check_quantitative_report(s.kappa, f, r.kappa);
    ++report_.checks;
    if (!q.all()) {
      const char* name = !q.q1 ? "Q1" : !q.q2 ? "Q2" : !q.q3 ? "Q3" : "Q4";
      record(name, s, f, std::nullopt, trial,
             "input " + s.kappa.to_string() + " output " + r.kappa.to_string());
    }
  }

  void check_pair(const EpistemicState& s, Formula f1, Formula f2,
                  std::uint64_t trial) {
    DpReport dp = check_dp(op_, s, f1, f2);
    ++report_.checks;
    if (!dp.all()) {
      const char* name = !dp.dp1 ? "DP1" : !dp.dp2 ? "DP2" : !dp.dp3 ? "DP3" : "DP4";
      Formula two_step = belief_models(op_(op_(s, f1), f2));
      Formula one_step = belief_models(op_(s, f2));
      record(name, s, f1, f2, trial,
             "beliefs after alpha then beta " + two_step.to_string() +
                 ", after beta alone " + one_step.to_string());
    }
  }

 private:
  void record(const std::string& check, const EpistemicState& s, Formula f1,
              const std::optional<Formula>& f2, std::uint64_t trial,
              const std::string& detail) {
    Counterexample cex{check, s, f1, f2, trial, detail};
    shrink(cex, [&](const EpistemicState& cs, Formula cf1,
                    const std::optional<Formula>& cf2) {
      return fails_same_way(check, cs, cf1, cf2);
    });
    if (report_.failures.size() < kMaxStoredFailures)
      report_.failures.push_back(std::move(cex));
    else
      report_.failures.back().detail = "further failures suppressed";
  }

  bool fails_same_way(const std::string& check, const EpistemicState& s,
                      Formula f1, const std::optional<Formula>& f2) {
    if (check == "success") return !check_success(s, f1, op_(s, f1));
    if (check[0] == 'Q') {
      if (!is_consistent(f1)) return false;
      QuantReport q = check_quantitative_report(s.kappa, f1, op_(s, f1).kappa);
      if (check == "Q1") return !q.q1;
      if (check == "Q2") return !q.q2;
      if (check == "Q3") return !q.q3;
      return !q.q4;
    }
    if (!f2) return false;
    DpReport dp = check_dp(op_, s, f1, *f2);
    if (check == "DP1") return !dp.dp1;
    if (check == "DP2") return !dp.dp2;
    if (check == "DP3") return !dp.dp3;
    return !dp.dp4;
  }

  const RevisionOperator& op_;
  const ConformanceConfig& config_;
  ConformanceReport& report_;
};

}  // namespace

ConformanceReport run_conformance(const RevisionOperator& op,
                                  const ConformanceConfig& config) {
  ConformanceReport report;
  report.suite = config.exhaustive ? "conformance-exhaustive" : "conformance-random";
  report.seed = config.seed;
  ConformanceRunner runner(op, config, report);

  if (config.exhaustive) {
    std::vector<RankingFunction> rankings = enumerate_rankings(config.max_rank);
    std::uint64_t trial = 0;
    for (const RankingFunction& k : rankings) {
      for (bool consistent : {true, false}) {
        EpistemicState s{k, consistent};
        for (int m1 = 0; m1 < 16; ++m1) {
          Formula f1(static_cast<std::uint8_t>(m1));
          runner.check_single(s, f1, trial);
          if (config.with_dp)
            for (int m2 = 0; m2 < 16; ++m2)
              runner.check_pair(s, f1, Formula(static_cast<std::uint8_t>(m2)), trial);
          ++trial;
        }
      }
    }
    report.trials = trial;
    return report;
  }

  for (std::uint64_t t = 0; t < config.trials; ++t) {
    SplitRng rng = SplitRng::for_trial(config.seed, t);
    RankingFunction k = gen_ranking(rng, config.max_rank);
    // One in eight sampled states carries the inconsistency flag.
    EpistemicState s{std::move(k), rng.below(8) != 0};
    Formula f1(static_cast<std::uint8_t>(rng.below(16)));
    runner.check_single(s, f1, t);
    if (config.with_dp) {
      Formula f2(static_cast<std::uint8_t>(rng.below(16)));
      runner.check_pair(s, f1, f2, t);
    }
  }
  report.trials = config.trials;
  return report;
}

std::string ConformanceReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["trials"] = trials;
  j["checks"] = checks;
  j["verdict"] = pass() ? "pass" : "fail";
  nlohmann::ordered_json fs = nlohmann::ordered_json::array();
  for (const Counterexample& c : failures) {
    nlohmann::ordered_json f;
    f["check"] = c.check;
    f["state"] = nlohmann::ordered_json::parse(state_to_json(c.state));
    f["f1"] = c.f1.to_string();
    if (c.f2) f["f2"] = c.f2->to_string();
    f["trial"] = c.trial;
    if (!c.detail.empty()) f["detail"] = c.detail;
    fs.push_back(std::move(f));
  }
  j["failures"] = std::move(fs);
  return j.dump(2);
}

std::string ConformanceReport::summary() const {
  std::ostringstream out;
  out << suite << ": " << (pass() ? "pass" : "FAIL") << " (" << trials
      << " trials, " << checks << " checks, seed " << seed << ")";
  for (const Counterexample& c : failures) {
    out << "\n  " << c.check << " violated: state " << c.state.kappa.to_string()
        << (c.state.consistent ? " top" : " bot") << ", alpha " << c.f1.to_string();
    if (c.f2) out << ", beta " << c.f2->to_string();
    if (!c.detail.empty()) out << " — " << c.detail;
  }
  return out.str();
}

std::vector<std::string> words_up_to(const TuringMachine& tm, unsigned max_len) {
  std::vector<std::string> out{""};
  std::size_t level_begin = 0;
  for (unsigned len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (char c : tm.alphabet()) out.push_back(out[i] + c);
    level_begin = level_end;
  }
  return out;
}

namespace {

struct InputOutcome {
  std::uint64_t revisions = 0;
  bool halted = false;
  bool exhausted = false;
  std::vector<EquivalenceFailure> failures;
};

void add_failure(InputOutcome& out, const std::string& input, const std::string& kind,
                 std::uint64_t step, const std::string& detail) {
  out.failures.push_back(EquivalenceFailure{input, kind, step, detail});
}

InputOutcome check_one_input(const TuringMachine& tm, const RevisionOperator& op,
                             const CompiledOperator& canonical,
                             const std::string& input, std::uint64_t fuel) {
  InputOutcome out;
  EpistemicState before = initial_ranking(tm, input);
  Configuration oracle_cfg = start_config(tm, input);
  std::uint64_t oracle_steps = 0;
  bool oracle_stuck = false;

  TraceSink sink = [&](const TraceEvent& e) {
    ++out.revisions;
    Formula alpha = phi_models(e.alpha);

    Rule rule = canonical.select(before, alpha);
    if (rule == Rule::Fallback)
      add_failure(out, input, "fallback", e.step,
                  std::string("line ") + std::string(e.line) + " fell back, state " +
                      before.kappa.to_string());
    if (!e.shape_after.has(shape_for_line(e.line)))
      add_failure(out, input, "shape", e.step,
                  std::string("line ") + std::string(e.line) + " produced " +
                      e.shape_after.to_string());

    if (!check_success(before, alpha, e.state_after))
      add_failure(out, input, "success", e.step,
                  std::string("line ") + std::string(e.line) + " with " +
                      std::string(phi_name(e.alpha)));
    QuantReport q = check_quantitative_report(before.kappa, alpha, e.state_after.kappa);
    if (!q.all()) {
      const char* name = !q.q1 ? "Q1" : !q.q2 ? "Q2" : !q.q3 ? "Q3" : "Q4";
      add_failure(out, input, "q", e.step,
                  std::string(name) + " violated at line " + std::string(e.line) +
                      " by " + std::string(phi_name(e.alpha)) + ": input " +
                      before.kappa.to_string() + " output " +
                      e.state_after.kappa.to_string());
    }

    // After the trailing probe of iteration k the state must decode to the
    // interpreter's configuration after k delta steps.
    if (e.line == "2" || e.line == "8") {
      while (oracle_steps < e.step && !oracle_stuck) {
        auto next = step(tm, oracle_cfg);
        if (!next) {
          oracle_stuck = true;
          add_failure(out, input, "lockstep", e.step,
                      "interpreter halted before the simulation");
          break;
        }
        oracle_cfg = std::move(*next);
        ++oracle_steps;
      }
      if (!oracle_stuck) {
        auto decoded = conf_of(tm, e.state_after.kappa, Shape::Peek);
        if (!decoded)
          add_failure(out, input, "lockstep", e.step, "probe state does not decode");
        else if (!(*decoded == oracle_cfg))
          add_failure(out, input, "lockstep", e.step,
                      "decoded (q" + std::to_string(decoded->state) + ", " +
                          format_tape(decoded->tape) + ") vs interpreter (q" +
                          std::to_string(oracle_cfg.state) + ", " +
                          format_tape(oracle_cfg.tape) + ")");
      }
    }
    before = e.state_after;
  };

  RunResult oracle = run(tm, input, fuel);
  try {
    SimulationResult sim = simulate_tm(tm, op, input, fuel, sink);
    out.halted = sim.halted();
    out.exhausted = !sim.halted();
    if (oracle.halted != sim.halted()) {
      add_failure(out, input, "fuel", sim.steps,
                  std::string("interpreter ") + (oracle.halted ? "halted" : "ran out") +
                      ", simulation " + (sim.halted() ? "halted" : "ran out"));
    } else if (oracle.halted) {
      if (oracle.output != sim.output)
        add_failure(out, input, "output", sim.steps,
                    "interpreter '" + oracle.output + "' vs simulation '" +
                        sim.output + "'");
      if (oracle.steps != sim.steps)
        add_failure(out, input, "fuel", sim.steps,
                    "halted after " + std::to_string(oracle.steps) + " vs " +
                        std::to_string(sim.steps) + " steps");
    }
  } catch (const std::logic_error& err) {
    // IntegrityError from the driver, or an invariant tripped by a broken
    // operator under test.
    add_failure(out, input, "integrity", 0, err.what());
  }
  return out;
}

}  // namespace

EquivalenceReport run_equivalence(const TuringMachine& tm, const RevisionOperator& op,
                                  const EquivalenceConfig& config) {
  EquivalenceReport report;
  std::vector<std::string> inputs = words_up_to(tm, config.max_len);
  report.inputs = inputs.size();

  std::vector<InputOutcome> outcomes(inputs.size());
  CompiledOperator canonical(tm);

  auto work = [&](std::size_t i) {
    outcomes[i] = check_one_input(tm, op, canonical, inputs[i], config.fuel);
  };

  unsigned workers = config.parallel ? std::thread::hardware_concurrency() : 1;
  workers = std::max(1u, std::min<unsigned>(workers, 16));
  if (workers <= 1 || inputs.size() < 8) {
    for (std::size_t i = 0; i < inputs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        while (true) {
          std::size_t i = cursor.fetch_add(1);
          if (i >= inputs.size()) return;
          work(i);
        }
      });
    for (std::thread& t : pool) t.join();
  }

  for (const InputOutcome& o : outcomes) {
    report.revisions += o.revisions;
    report.halted_inputs += o.halted ? 1 : 0;
    report.exhausted_inputs += o.exhausted ? 1 : 0;
    for (const EquivalenceFailure& f : o.failures) {
      if (f.kind == "output") ++report.output_mismatches;
      else if (f.kind == "fuel") ++report.fuel_mismatches;
      else if (f.kind == "lockstep") ++report.lockstep_mismatches;
      else if (f.kind == "success") ++report.success_failures;
      else if (f.kind == "q") ++report.q_failures;
      else if (f.kind == "fallback") ++report.fallback_dispatches;
      else if (f.kind == "shape") ++report.shape_mismatches;
      else if (f.kind == "integrity") ++report.integrity_faults;
      if (report.failures.size() < kMaxStoredFailures) report.failures.push_back(f);
    }
  }
  return report;
}

EquivalenceReport run_equivalence(const TuringMachine& tm,
                                  const EquivalenceConfig& config) {
  CompiledOperator op(tm);
  return run_equivalence(tm, op.as_function(), config);
}

bool EquivalenceReport::pass() const {
  return outputs_match() && lockstep_holds() && traces_conform() &&
         shapes_disciplined();
}

std::string EquivalenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["machine"] = machine;
  j["inputs"] = inputs;
  j["revisions"] = revisions;
  j["halted_inputs"] = halted_inputs;
  j["exhausted_inputs"] = exhausted_inputs;
  j["output_mismatches"] = output_mismatches;
  j["fuel_mismatches"] = fuel_mismatches;
  j["lockstep_mismatches"] = lockstep_mismatches;
  j["success_failures"] = success_failures;
  j["q_failures"] = q_failures;
  j["fallback_dispatches"] = fallback_dispatches;
  j["shape_mismatches"] = shape_mismatches;
  j["integrity_faults"] = integrity_faults;
  j["verdict"] = pass() ? "pass" : "fail";
  nlohmann::ordered_json fs = nlohmann::ordered_json::array();
  for (const EquivalenceFailure& f : failures) {
    nlohmann::ordered_json e;
    e["input"] = f.input;
    e["kind"] = f.kind;
    e["step"] = f.step;
    e["detail"] = f.detail;
    fs.push_back(std::move(e));
  }
  j["failures"] = std::move(fs);
  return j.dump(2);
}

std::string EquivalenceReport::summary() const {
  std::ostringstream out;
  out << "equivalence[" << machine << "]: " << (pass() ? "pass" : "FAIL") << " ("
      << inputs << " inputs, " << revisions << " revisions; " << halted_inputs
      << " halted, " << exhausted_inputs << " exhausted)";
  if (output_mismatches + fuel_mismatches)
    out << "\n  outputs: " << output_mismatches << " mismatches, "
        << fuel_mismatches << " fuel disagreements";
  if (lockstep_mismatches) out << "\n  lockstep mismatches: " << lockstep_mismatches;
  if (success_failures) out << "\n  success failures: " << success_failures;
  if (q_failures) out << "\n  quantitative failures: " << q_failures;
  if (fallback_dispatches) out << "\n  fallback dispatches: " << fallback_dispatches;
  if (shape_mismatches) out << "\n  shape mismatches: " << shape_mismatches;
  if (integrity_faults) out << "\n  integrity faults: " << integrity_faults;
  std::size_t shown = 0;
  for (const EquivalenceFailure& f : failures) {
    if (++shown > 5) {
      out << "\n  ...";
      break;
    }
    out << "\n  [" << f.kind << "] input '" << f.input << "' step " << f.step
        << ": " << f.detail;
  }
  return out.str();
}

}  // namespace rankrev
