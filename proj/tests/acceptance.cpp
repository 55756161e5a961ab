// Acceptance suite: every criterion prints one [PASS]/[FAIL] line; the
// process exits with the number of failed criteria. Criterion numbers can
// be passed as arguments to run a subset.

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "rankrev/harness.hpp"

using namespace rankrev;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Corpus {
  std::string name;
  TuringMachine tm;
};

std::vector<Corpus> load_corpus() {
  std::vector<Corpus> out;
  for (const char* name : {"succ", "incr", "reverse", "palindrome", "halt", "loop"})
    out.push_back({name, load_tm(std::string(MACHINES_DIR) + "/" + name + ".tm")});
  return out;
}

constexpr unsigned kMaxLen = 6;
constexpr std::uint64_t kFuel = 10000;
constexpr std::uint64_t kRandomTrials = 10000;
constexpr std::uint64_t kRandomSeed = 20250811;
constexpr std::uint64_t kDivergenceFuel = 50;

struct Verdict {
  bool pass = false;
  std::string text;
};

// ---- criteria 1/2/4/5 share one equivalence sweep per machine ----------

std::map<std::string, EquivalenceReport> shared_reports;
double shared_runtime = 0;

void ensure_shared_reports(const std::vector<Corpus>& corpus) {
  if (!shared_reports.empty()) return;
  auto t0 = Clock::now();
  for (const Corpus& c : corpus) {
    EquivalenceConfig config;
    config.max_len = kMaxLen;
    config.fuel = kFuel;
    EquivalenceReport r = run_equivalence(c.tm, config);
    r.machine = c.name;
    shared_reports.emplace(c.name, std::move(r));
  }
  shared_runtime = seconds_since(t0);
}

Verdict criterion1(const std::vector<Corpus>& corpus) {
  ensure_shared_reports(corpus);
  std::uint64_t inputs = 0, mismatches = 0;
  std::string first;
  for (const Corpus& c : corpus) {
    const EquivalenceReport& r = shared_reports.at(c.name);
    inputs += r.inputs;
    mismatches += r.output_mismatches + r.fuel_mismatches;
    if (!r.outputs_match() && first.empty())
      for (const EquivalenceFailure& f : r.failures)
        if (f.kind == "output" || f.kind == "fuel") {
          first = c.name + " input '" + f.input + "': " + f.detail;
          break;
        }
  }
  std::ostringstream text;
  text << "oracle equivalence: 6 machines, all inputs up to length " << kMaxLen
       << " (" << inputs << " runs, fuel " << kFuel << "): " << mismatches
       << " output disagreements";
  if (!first.empty()) text << "; first: " << first;
  text.precision(1);
  text << std::fixed << " [" << shared_runtime << "s for the shared sweep]";
  return {mismatches == 0, text.str()};
}

Verdict criterion2(const std::vector<Corpus>& corpus) {
  ensure_shared_reports(corpus);
  std::uint64_t mismatches = 0, faults = 0;
  std::string first;
  for (const Corpus& c : corpus) {
    const EquivalenceReport& r = shared_reports.at(c.name);
    mismatches += r.lockstep_mismatches;
    faults += r.integrity_faults;
    if (first.empty())
      for (const EquivalenceFailure& f : r.failures)
        if (f.kind == "lockstep" || f.kind == "integrity") {
          first = c.name + " input '" + f.input + "': " + f.detail;
          break;
        }
  }
  std::ostringstream text;
  text << "lockstep invariant: decoded configuration equals the interpreter's "
          "after every iteration: "
       << mismatches << " mismatches, " << faults << " integrity faults";
  if (!first.empty()) text << "; first: " << first;
  return {mismatches + faults == 0, text.str()};
}

Verdict criterion3() {
  auto t0 = Clock::now();
  RevisionOperator fallback = [](const EpistemicState& s, Formula f) {
    return fallback_revise(s, f);
  };
  ConformanceConfig config;
  config.exhaustive = true;
  config.max_rank = 3;
  ConformanceReport report = run_conformance(fallback, config);
  std::ostringstream text;
  text.precision(1);
  text << "exhaustive fallback conformance: all rankings to rank 3, both "
          "flags, all formulas and formula pairs ("
       << report.trials << " cases, " << report.checks << " checks): "
       << report.failures.size() << " failures" << std::fixed << " ["
       << seconds_since(t0) << "s]";
  if (!report.pass()) text << "\n        " << report.summary();
  return {report.pass(), text.str()};
}

Verdict criterion4(const std::vector<Corpus>& corpus) {
  ensure_shared_reports(corpus);
  std::uint64_t trace_failures = 0, trace_revisions = 0;
  std::string first;
  for (const Corpus& c : corpus) {
    const EquivalenceReport& r = shared_reports.at(c.name);
    trace_failures += r.success_failures + r.q_failures;
    trace_revisions += r.revisions;
    if (first.empty())
      for (const EquivalenceFailure& f : r.failures)
        if (f.kind == "q" || f.kind == "success") {
          first = c.name + " input '" + f.input + "' step " +
                  std::to_string(f.step) + ": " + f.detail;
          break;
        }
  }

  std::uint64_t random_failures = 0, random_trials = 0;
  for (const Corpus& c : corpus) {
    ConformanceConfig config;
    config.trials = kRandomTrials;
    config.seed = kRandomSeed;
    config.max_rank = 3;
    config.with_dp = false;
    ConformanceReport r = run_conformance(CompiledOperator(c.tm).as_function(), config);
    random_trials += r.trials;
    random_failures += r.failures.size();
  }

  std::ostringstream text;
  text << "compiled-operator conformance: trace revisions " << trace_revisions
       << " with " << trace_failures << " success/Q failures; random trials "
       << random_trials << " with " << random_failures << " failures";
  if (!first.empty()) text << "\n        first trace counterexample: " << first;
  return {trace_failures + random_failures == 0, text.str()};
}

Verdict criterion5(const std::vector<Corpus>& corpus) {
  ensure_shared_reports(corpus);
  std::uint64_t fallbacks = 0, shape_misses = 0, revisions = 0;
  for (const Corpus& c : corpus) {
    const EquivalenceReport& r = shared_reports.at(c.name);
    fallbacks += r.fallback_dispatches;
    shape_misses += r.shape_mismatches;
    revisions += r.revisions;
  }
  std::ostringstream text;
  text << "shape discipline: " << revisions << " trace revisions, "
       << fallbacks << " fallback dispatches, " << shape_misses
       << " off-label shapes";
  return {fallbacks + shape_misses == 0, text.str()};
}

Verdict criterion6() {
  TuringMachine tm = load_tm(std::string(MACHINES_DIR) + "/succ.tm");  // 2 symbols
  const int n = tm.num_states();
  std::vector<std::string> words = words_up_to(tm, 4);
  std::vector<std::optional<char>> centers{std::nullopt};
  for (char c : tm.alphabet()) centers.push_back(c);

  std::uint64_t triples = 0, short_triples = 0, failures = 0;
  std::set<Nat> codes;
  for (const std::string& l : words) {
    for (const auto& c : centers) {
      for (const std::string& r : words) {
        Tape t{l, c, r};
        ++triples;
        if (l.size() + (c ? 1 : 0) + r.size() <= 4) ++short_triples;
        Nat code = enc_pos(tm, t);
        bool ok = code >= 2 * n && codes.insert(code).second;
        auto back = dec_pos(tm, code);
        ok = ok && back && *back == t;
        if (!ok) ++failures;
      }
    }
  }
  for (int v = 0; v < 2 * n; ++v)
    if (dec_pos(tm, v)) ++failures;

  std::ostringstream text;
  text << "encoding soundness: " << triples
       << " tape triples (sides to length 4; " << short_triples
       << " of total length <= 4): injectivity, roundtrip and the 2n floor: "
       << failures << " failures";
  return {triples >= 1000 && failures == 0, text.str()};
}

Verdict criterion7(const std::vector<Corpus>& corpus) {
  ensure_shared_reports(corpus);
  const Corpus* loop = nullptr;
  for (const Corpus& c : corpus)
    if (c.name == "loop") loop = &c;

  SimulationResult r = simulate_tm(loop->tm, "a", kDivergenceFuel);
  bool ok = !r.halted() && r.steps == kDivergenceFuel &&
            r.revisions_used == 2 + 5 * kDivergenceFuel;

  const EquivalenceReport& sweep = shared_reports.at("loop");
  bool sweep_ok = sweep.exhausted_inputs == sweep.inputs &&
                  sweep.revisions == sweep.inputs * (1 + 5 * kFuel);

  std::ostringstream text;
  text << "divergence handling: fuel " << kDivergenceFuel << " -> "
       << (r.halted() ? "halted" : "fuel_exhausted") << " at step " << r.steps
       << " with " << r.revisions_used << " revisions (expected "
       << 2 + 5 * kDivergenceFuel << "); sweep: " << sweep.exhausted_inputs << "/"
       << sweep.inputs << " inputs exhausted at fuel " << kFuel;
  return {ok && sweep_ok, text.str()};
}

// ---- criterion 8: planted mutations must be caught ----------------------

RevisionOperator mutant_fallback_no_bump() {
  return [](const EpistemicState& s, Formula f) {
    if (!is_consistent(f)) return EpistemicState::bottom(s.kappa);
    Rank m = *s.kappa.min_over(f);
    RankingFunction out = s.kappa;
    for (World w : all_worlds())
      if (f.contains(w)) out.at(w) -= m;  // counter-models keep their rank
    return EpistemicState::top(std::move(out));
  };
}

RevisionOperator mutant_trans_state_uncorrected(const TuringMachine& tm) {
  CompiledOperator op(tm);
  return [op](const EpistemicState& s, Formula f) {
    if (op.select(s, f) == Rule::TransPost) {
      const TuringMachine& tm = op.machine();
      const int n = tm.num_states();
      const RankingFunction& k = s.kappa;
      // Prior state read as wq - n + whalt instead of wq + n - whalt.
      Nat broken = k.at(World::WQ) - n + k.at(World::WHalt);
      auto tape =
          dec_pos(tm, k.at(World::WPos) + (n - k.at(World::WHalt)) - (n + 1));
      if (broken >= 1 && broken <= n - 1 && tape) {
        Configuration next =
            *step(tm, Configuration{static_cast<int>(broken.get_si()), *tape});
        return EpistemicState::top(RankingFunction(
            0, k.at(World::WHalt), k.at(World::WQ), n + enc_pos(tm, next.tape) + 1));
      }
      return fallback_revise(s, f);
    }
    return op(s, f);
  };
}

RevisionOperator mutant_no_pos_shift(const TuringMachine& tm) {
  CompiledOperator op(tm);
  return [op](const EpistemicState& s, Formula f) {
    if (op.select(s, f) == Rule::ConfTrans) {
      const TuringMachine& tm = op.machine();
      const RankingFunction& k = s.kappa;
      Configuration c = *conf_of(tm, k, Shape::Conf);
      char read = c.tape.center ? *c.tape.center : tm.blank();
      const int j = tm.delta(c.state, read).next_state;
      const long shift = static_cast<long>(c.state) - j;
      return EpistemicState::top(RankingFunction(
          0, k.at(World::WHalt) - shift, j, k.at(World::WPos)));  // shift skipped
    }
    return op(s, f);
  };
}

Verdict criterion8(const std::vector<Corpus>& corpus) {
  // Mutation 1: the exhaustive battery of criterion 3 must report failures.
  ConformanceConfig battery;
  battery.exhaustive = true;
  battery.max_rank = 3;
  ConformanceReport rep1 = run_conformance(mutant_fallback_no_bump(), battery);
  bool caught1 = !rep1.pass();

  // Mutations 2 and 3: the oracle-equivalence detectors of criteria 1-2
  // (and the trace checks of criterion 4) must flag at least one machine.
  auto caught_by_equivalence = [&](auto make_mutant) {
    for (const Corpus& c : corpus) {
      EquivalenceConfig config;
      config.max_len = 3;
      config.fuel = 500;
      EquivalenceReport r = run_equivalence(c.tm, make_mutant(c.tm), config);
      if (r.output_mismatches + r.fuel_mismatches + r.lockstep_mismatches +
              r.integrity_faults >
          0)
        return true;
    }
    return false;
  };
  bool caught2 = caught_by_equivalence(
      [](const TuringMachine& tm) { return mutant_trans_state_uncorrected(tm); });
  bool caught3 = caught_by_equivalence(
      [](const TuringMachine& tm) { return mutant_no_pos_shift(tm); });

  std::ostringstream text;
  text << "mutation sensitivity: dropped counter-model bump "
       << (caught1 ? "caught" : "MISSED") << " (" << rep1.failures.size()
       << " counterexamples reported); uncorrected prior-state formula "
       << (caught2 ? "caught" : "MISSED") << "; skipped position shift "
       << (caught3 ? "caught" : "MISSED");
  return {caught1 && caught2 && caught3, text.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto wanted = [&](int id) { return selected.empty() || selected.count(id); };

  std::vector<Corpus> corpus = load_corpus();
  std::vector<std::pair<int, Verdict>> results;

  if (wanted(1)) results.emplace_back(1, criterion1(corpus));
  if (wanted(2)) results.emplace_back(2, criterion2(corpus));
  if (wanted(3)) results.emplace_back(3, criterion3());
  if (wanted(4)) results.emplace_back(4, criterion4(corpus));
  if (wanted(5)) results.emplace_back(5, criterion5(corpus));
  if (wanted(6)) results.emplace_back(6, criterion6());
  if (wanted(7)) results.emplace_back(7, criterion7(corpus));
  if (wanted(8)) results.emplace_back(8, criterion8(corpus));

  int failed = 0;
  for (const auto& [id, verdict] : results) {
    std::cout << (verdict.pass ? "[PASS] " : "[FAIL] ") << id << ". "
              << verdict.text << "\n";
    failed += verdict.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed"
                            : std::to_string(failed) + " criterion(s) failed")
            << "\n";
  return failed;
}
