// Command-line front end: run a machine by iterated revision, run the
// direct interpreter, compare the two, run conformance batteries, and poke
// at the position encoding.
//
// Exit codes: 0 success / halted, 1 usage or file error, 2 fuel exhausted,
// 3 conformance failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rankrev/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFuel = 2;
constexpr int kExitConformance = 3;

std::string trim_blanks(const std::string& word, char blank) {
  std::size_t b = word.find_first_not_of(blank);
  if (b == std::string::npos) return "";
  std::size_t e = word.find_last_not_of(blank);
  return word.substr(b, e - b + 1);
}

int cmd_run(const std::string& machine_path, const std::string& input,
            std::uint64_t fuel, const std::string& trace_path, bool trim) {
  rankrev::TuringMachine tm = rankrev::load_tm(machine_path);

  std::ofstream trace_out;
  rankrev::TraceSink sink;
  if (!trace_path.empty()) {
    trace_out.open(trace_path);
    if (!trace_out) {
      std::cerr << "cannot open trace file: " << trace_path << "\n";
      return kExitUsage;
    }
    sink = [&trace_out](const rankrev::TraceEvent& e) {
      trace_out << rankrev::trace_event_json(e) << "\n";
    };
  }

  rankrev::SimulationResult r = rankrev::simulate_tm(tm, input, fuel, sink);
  if (!r.halted()) {
    std::cout << "fuel exhausted after " << r.steps << " steps ("
              << r.revisions_used << " revisions)\n";
    return kExitFuel;
  }
  std::cout << (trim ? trim_blanks(r.output, tm.blank()) : r.output) << "\n";
  std::cerr << "halted after " << r.steps << " steps, " << r.revisions_used
            << " revisions\n";
  return kExitOk;
}

int cmd_oracle(const std::string& machine_path, const std::string& input,
               std::uint64_t fuel) {
  rankrev::TuringMachine tm = rankrev::load_tm(machine_path);
  rankrev::RunResult r = rankrev::run(tm, input, fuel);
  if (!r.halted) {
    std::cout << "fuel exhausted after " << r.steps << " steps\n";
    return kExitFuel;
  }
  std::cout << r.output << "\n";
  std::cerr << "halted after " << r.steps << " steps\n";
  return kExitOk;
}

int cmd_compare(const std::string& machine_path, unsigned max_len,
                std::uint64_t fuel, bool json) {
  rankrev::TuringMachine tm = rankrev::load_tm(machine_path);
  rankrev::EquivalenceConfig config;
  config.max_len = max_len;
  config.fuel = fuel;
  rankrev::EquivalenceReport report = rankrev::run_equivalence(tm, config);
  report.machine = machine_path;
  std::cout << (json ? report.to_json() : report.summary()) << "\n";
  return report.pass() ? kExitOk : kExitConformance;
}

int cmd_check(const std::string& operator_spec, std::uint64_t samples,
              unsigned max_rank, std::uint64_t seed, bool exhaustive, bool json) {
  rankrev::RevisionOperator op;
  if (operator_spec == "fallback") {
    op = [](const rankrev::EpistemicState& s, rankrev::Formula f) {
      return rankrev::fallback_revise(s, f);
    };
  } else if (operator_spec.rfind("compiled:", 0) == 0) {
    rankrev::TuringMachine tm = rankrev::load_tm(operator_spec.substr(9));
    op = rankrev::CompiledOperator(std::move(tm)).as_function();
  } else {
    std::cerr << "operator must be 'fallback' or 'compiled:<machine-file>'\n";
    return kExitUsage;
  }

  rankrev::ConformanceConfig config;
  config.trials = samples;
  config.max_rank = max_rank;
  config.seed = seed;
  config.exhaustive = exhaustive;
  rankrev::ConformanceReport report = rankrev::run_conformance(op, config);
  std::cout << (json ? report.to_json() : report.summary()) << "\n";
  return report.pass() ? kExitOk : kExitConformance;
}

int cmd_encode(const std::string& machine_path, const std::string& triple) {
  rankrev::TuringMachine tm = rankrev::load_tm(machine_path);
  auto tape = rankrev::parse_tape(tm, triple);
  if (!tape) {
    std::cerr << "malformed triple (expected left|cell|right with ~ for empty): "
              << triple << "\n";
    return kExitUsage;
  }
  std::cout << rankrev::enc_pos(tm, *tape).get_str() << "\n";
  return kExitOk;
}

int cmd_decode(const std::string& machine_path, const std::string& value) {
  rankrev::TuringMachine tm = rankrev::load_tm(machine_path);
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    std::cerr << "expected a natural number, got: " << value << "\n";
    return kExitUsage;
  }
  auto tape = rankrev::dec_pos(tm, rankrev::Nat(value));
  std::cout << (tape ? rankrev::format_tape(*tape) : std::string("undefined")) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machines compiled into iterated belief revision"};
  app.require_subcommand(1);

  std::string machine, input, trace_path, value, triple;
  std::uint64_t fuel = 10000;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned max_len = 4;
  unsigned max_rank = 3;
  bool trim = false, json = false, exhaustive = false;
  std::string operator_spec = "fallback";

  CLI::App* run_cmd = app.add_subcommand("run", "execute a machine by iterated revision");
  run_cmd->add_option("machine", machine, "machine description file")->required();
  run_cmd->add_option("input", input, "input word (omit for the empty word)");
  run_cmd->add_option("--fuel", fuel, "maximum delta steps");
  run_cmd->add_option("--trace", trace_path, "write a JSONL revision trace");
  run_cmd->add_flag("--trim", trim, "strip leading/trailing blanks from the output");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "execute a machine directly");
  oracle_cmd->add_option("machine", machine, "machine description file")->required();
  oracle_cmd->add_option("input", input, "input word (omit for the empty word)");
  oracle_cmd->add_option("--fuel", fuel, "maximum delta steps");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "revision run vs interpreter on all short inputs");
  compare_cmd->add_option("machine", machine, "machine description file")->required();
  compare_cmd->add_option("--max-len", max_len, "maximum input length");
  compare_cmd->add_option("--fuel", fuel, "maximum delta steps per input");
  compare_cmd->add_flag("--json", json, "emit the full report as JSON");

  CLI::App* check_cmd = app.add_subcommand("check", "postulate conformance battery");
  check_cmd->add_option("--operator", operator_spec,
                        "'fallback' or 'compiled:<machine-file>'");
  check_cmd->add_option("--samples", samples, "random trials");
  check_cmd->add_option("--max-rank", max_rank, "maximum generated rank");
  check_cmd->add_option("--seed", seed, "random seed");
  check_cmd->add_flag("--exhaustive", exhaustive,
                      "enumerate every ranking up to max-rank instead of sampling");
  check_cmd->add_flag("--json", json, "emit the full report as JSON");

  CLI::App* encode_cmd = app.add_subcommand("encode", "position code of a tape triple");
  encode_cmd->add_option("triple", triple, "left|cell|right, ~ for empty")->required();
  encode_cmd->add_option("--machine", machine, "machine description file")->required();

  CLI::App* decode_cmd = app.add_subcommand("decode", "tape triple of a position code");
  decode_cmd->add_option("value", value, "natural number")->required();
  decode_cmd->add_option("--machine", machine, "machine description file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(machine, input, fuel, trace_path, trim);
    if (oracle_cmd->parsed()) return cmd_oracle(machine, input, fuel);
    if (compare_cmd->parsed()) return cmd_compare(machine, max_len, fuel, json);
    if (check_cmd->parsed())
      return cmd_check(operator_spec, samples, max_rank, seed, exhaustive, json);
    if (encode_cmd->parsed()) return cmd_encode(machine, triple);
    if (decode_cmd->parsed()) return cmd_decode(machine, value);
  } catch (const rankrev::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
