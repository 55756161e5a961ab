#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Deterministic single-tape Turing machines: the text-format parser, the
// direct interpreter used as the independent oracle, and the configuration
// stepper shared with the revision-based simulation.

namespace rankrev {

enum class Move : char { Left = 'L', Stay = 'N', Right = 'R' };

struct Transition {
  int next_state = 0;  // 1..n
  char write = 0;
  Move move = Move::Stay;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// States are 1..n with q_n the halting state; delta is total on the
/// non-halting states and undefined on q_n.
class TuringMachine {
 public:
  TuringMachine(int num_states, int start_state, std::string alphabet,
                char blank, std::map<std::pair<int, char>, Transition> delta);

  int num_states() const { return num_states_; }
  int start_state() const { return start_state_; }
  int halt_state() const { return num_states_; }
  const std::string& alphabet() const { return alphabet_; }
  char blank() const { return blank_; }

  bool has_symbol(char c) const { return symbol_index(c).has_value(); }
  /// 1-based index of a symbol in the alphabet ordering.
  std::optional<int> symbol_index(char c) const;
  char symbol_at(int index_1based) const { return alphabet_.at(index_1based - 1); }

  const Transition& delta(int state, char symbol) const;

 private:
  int num_states_;
  int start_state_;
  std::string alphabet_;  // ordered; index i (1-based) = alphabet_[i-1]
  char blank_;
  std::map<std::pair<int, char>, Transition> delta_;
};

/// Head position as <left word, cell under head, right word>. The cell is
/// nullopt only before the machine ever touches the tape (empty input).
struct Tape {
  std::string left;
  std::optional<char> center;
  std::string right;

  friend bool operator==(const Tape&, const Tape&) = default;
};

struct Configuration {
  int state = 0;
  Tape tape;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Parse failure with the offending line (0 when no line applies).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Machine description format (line oriented, `#` starts a comment):
///   states: 4
///   start: 1
///   alphabet: a b _
///   blank: _
///   delta:
///   1 a -> 2 b R
TuringMachine parse_tm(const std::string& text);
TuringMachine load_tm(const std::string& path);

Configuration start_config(const TuringMachine& tm, const std::string& input);

/// One delta step; nullopt when the configuration is already halting.
/// Reading an untouched cell yields the blank; moving past either end of
/// the written tape materializes a blank under the head.
std::optional<Configuration> step(const TuringMachine& tm, const Configuration& c);

struct RunResult {
  bool halted = false;
  std::string output;        // left + cell + right, no trimming
  std::uint64_t steps = 0;   // delta steps performed
  Configuration final_config;
};

/// Run at most `fuel` delta steps from the start configuration.
RunResult run(const TuringMachine& tm, const std::string& input, std::uint64_t fuel);

std::string tape_word(const Tape& t);

}  // namespace rankrev
