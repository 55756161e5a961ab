#include "rankrev/turing.hpp"

#include <cassert>
#include <fstream>
#include <sstream>

namespace rankrev {

TuringMachine::TuringMachine(int num_states, int start_state, std::string alphabet,
                             char blank,
                             std::map<std::pair<int, char>, Transition> delta)
    : num_states_(num_states),
      start_state_(start_state),
      alphabet_(std::move(alphabet)),
      blank_(blank),
      delta_(std::move(delta)) {
  assert(num_states_ >= 2);
  assert(start_state_ >= 1 && start_state_ <= num_states_);
  assert(has_symbol(blank_));
}

std::optional<int> TuringMachine::symbol_index(char c) const {
  auto pos = alphabet_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<int>(pos) + 1;
}

const Transition& TuringMachine::delta(int state, char symbol) const {
  auto it = delta_.find({state, symbol});
  assert(it != delta_.end());  // delta is total on non-halting states
  return it->second;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line_no, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected a number for " + what + ", got '" + tok + "'");
  }
}

}  // namespace

TuringMachine parse_tm(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  std::optional<int> num_states, start_state;
  std::optional<std::string> alphabet;
  std::optional<char> blank;
  bool in_delta = false;
  std::map<std::pair<int, char>, Transition> delta;
  std::map<std::pair<int, char>, int> entry_line;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<std::string> toks = tokenize(raw);
    if (toks.empty()) continue;

    if (!in_delta) {
      if (toks[0] == "states:" && toks.size() == 2) {
        num_states = parse_int(toks[1], line_no, "states");
        if (*num_states < 2) throw ParseError(line_no, "at least 2 states required");
      } else if (toks[0] == "start:" && toks.size() == 2) {
        start_state = parse_int(toks[1], line_no, "start");
      } else if (toks[0] == "alphabet:") {
        std::string a;
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (toks[i].size() != 1)
            throw ParseError(line_no, "symbols must be single characters, got '" + toks[i] + "'");
          if (a.find(toks[i][0]) != std::string::npos)
            throw ParseError(line_no, std::string("duplicate symbol '") + toks[i] + "'");
          a += toks[i][0];
        }
        if (a.empty()) throw ParseError(line_no, "alphabet must be non-empty");
        alphabet = a;
      } else if (toks[0] == "blank:" && toks.size() == 2 && toks[1].size() == 1) {
        blank = toks[1][0];
      } else if (toks[0] == "delta:" && toks.size() == 1) {
        if (!num_states || !start_state || !alphabet || !blank)
          throw ParseError(line_no, "states, start, alphabet and blank must precede delta");
        if (*start_state < 1 || *start_state > *num_states)
          throw ParseError(line_no, "start state out of range");
        if (alphabet->find(*blank) == std::string::npos)
          throw ParseError(line_no, "blank symbol not in alphabet");
        in_delta = true;
      } else {
        throw ParseError(line_no, "unrecognized header line");
      }
      continue;
    }

    // delta entry: q s -> q' s' M
    if (toks.size() != 6 || toks[2] != "->")
      throw ParseError(line_no, "expected 'state symbol -> state symbol move'");
    int from = parse_int(toks[0], line_no, "source state");
    if (from < 1 || from > *num_states)
      throw ParseError(line_no, "state index out of range: " + toks[0]);
    if (from == *num_states)
      throw ParseError(line_no, "transition from halt state");
    if (toks[1].size() != 1 || alphabet->find(toks[1][0]) == std::string::npos)
      throw ParseError(line_no, "unknown symbol '" + toks[1] + "'");
    char read = toks[1][0];
    int to = parse_int(toks[3], line_no, "target state");
    if (to < 1 || to > *num_states)
      throw ParseError(line_no, "state index out of range: " + toks[3]);
    if (toks[4].size() != 1 || alphabet->find(toks[4][0]) == std::string::npos)
      throw ParseError(line_no, "unknown symbol '" + toks[4] + "'");
    char write = toks[4][0];
    if (toks[5] != "L" && toks[5] != "N" && toks[5] != "R")
      throw ParseError(line_no, "move must be L, N or R, got '" + toks[5] + "'");
    Move move = static_cast<Move>(toks[5][0]);
    auto key = std::make_pair(from, read);
    if (delta.count(key))
      throw ParseError(line_no, "duplicate entry for state " + toks[0] + " symbol '" +
                                    toks[1] + "' (first at line " +
                                    std::to_string(entry_line[key]) + ")");
    delta[key] = Transition{to, write, move};
    entry_line[key] = line_no;
  }

  if (!in_delta) throw ParseError(0, "missing delta section");

  for (int q = 1; q < *num_states; ++q)
    for (char s : *alphabet)
      if (!delta.count({q, s}))
        throw ParseError(0, std::string("delta not total: missing entry for state ") +
                                std::to_string(q) + " symbol '" + s + "'");

  return TuringMachine(*num_states, *start_state, *alphabet, *blank, std::move(delta));
}

TuringMachine load_tm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open machine file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tm(buf.str());
}

Configuration start_config(const TuringMachine& tm, const std::string& input) {
  for (char c : input)
    if (!tm.has_symbol(c))
      throw std::invalid_argument(std::string("input symbol outside alphabet: '") + c + "'");
  Configuration c;
  c.state = tm.start_state();
  if (!input.empty()) {
    c.tape.center = input.front();
    c.tape.right = input.substr(1);
  }
  return c;
}

std::optional<Configuration> step(const TuringMachine& tm, const Configuration& c) {
  if (c.state == tm.halt_state()) return std::nullopt;
  char read = c.tape.center ? *c.tape.center : tm.blank();
  const Transition& t = tm.delta(c.state, read);
  Configuration n;
  n.state = t.next_state;
  n.tape = c.tape;
  n.tape.center = t.write;
  switch (t.move) {
    case Move::Stay:
      break;
    case Move::Right:
      n.tape.left += *n.tape.center;
      if (n.tape.right.empty()) {
        n.tape.center = tm.blank();
      } else {
        n.tape.center = n.tape.right.front();
        n.tape.right.erase(0, 1);
      }
      break;
    case Move::Left:
      n.tape.right.insert(n.tape.right.begin(), *n.tape.center);
      if (n.tape.left.empty()) {
        n.tape.center = tm.blank();
      } else {
        n.tape.center = n.tape.left.back();
        n.tape.left.pop_back();
      }
      break;
  }
  return n;
}

RunResult run(const TuringMachine& tm, const std::string& input, std::uint64_t fuel) {
  Configuration c = start_config(tm, input);
  RunResult r;
  while (true) {
    if (c.state == tm.halt_state()) {
      r.halted = true;
      r.output = tape_word(c.tape);
      r.final_config = c;
      return r;
    }
    if (r.steps == fuel) {
      r.halted = false;
      r.final_config = c;
      return r;
    }
    c = *step(tm, c);
    ++r.steps;
  }
}

std::string tape_word(const Tape& t) {
  std::string out = t.left;
  if (t.center) out += *t.center;
  out += t.right;
  return out;
}

}  // namespace rankrev
