#include "rankrev/encoding.hpp"

#include <cassert>
#include <stdexcept>

namespace rankrev {

Nat cantor_pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& z) {
  assert(z >= 0);
  Nat w = (sqrt(8 * z + 1) - 1) / 2;
  Nat y = z - w * (w + 1) / 2;
  Nat x = w - y;
  assert(cantor_pair(x, y) == z);
  return {x, y};
}

Nat enc_word(const TuringMachine& tm, const std::string& word) {
  const Nat k = static_cast<unsigned long>(tm.alphabet().size());
  Nat v = 0;
  for (char c : word) {
    auto idx = tm.symbol_index(c);
    if (!idx)
      throw std::invalid_argument(std::string("symbol outside alphabet: '") + c + "'");
    v = v * k + *idx;
  }
  return v;
}

std::string dec_word(const TuringMachine& tm, Nat value) {
  assert(value >= 0);
  const unsigned long k = tm.alphabet().size();
  std::string out;
  while (value > 0) {
    Nat digit = (value - 1) % k + 1;
    out.insert(out.begin(), tm.symbol_at(static_cast<int>(digit.get_ui())));
    value = (value - digit) / k;
  }
  return out;
}

Nat enc_pos(const TuringMachine& tm, const Tape& tape) {
  Nat center = 0;
  if (tape.center) {
    auto idx = tm.symbol_index(*tape.center);
    if (!idx)
      throw std::invalid_argument(std::string("symbol outside alphabet: '") +
                                  *tape.center + "'");
    center = *idx;
  }
  Nat inner = cantor_pair(enc_word(tm, tape.left), center);
  return 2 * tm.num_states() + cantor_pair(inner, enc_word(tm, tape.right));
}

std::optional<Tape> dec_pos(const TuringMachine& tm, const Nat& value) {
  const Nat floor = 2 * tm.num_states();
  if (value < floor) return std::nullopt;
  auto [inner, right_code] = cantor_unpair(value - floor);
  auto [left_code, center_code] = cantor_unpair(inner);
  if (center_code > static_cast<unsigned long>(tm.alphabet().size()))
    return std::nullopt;
  Tape t;
  t.left = dec_word(tm, left_code);
  t.right = dec_word(tm, right_code);
  if (center_code != 0)
    t.center = tm.symbol_at(static_cast<int>(center_code.get_ui()));
  return t;
}

std::string format_tape(const Tape& t) {
  std::string out = t.left.empty() ? "~" : t.left;
  out += '|';
  out += t.center ? std::string(1, *t.center) : "~";
  out += '|';
  out += t.right.empty() ? "~" : t.right;
  return out;
}

std::optional<Tape> parse_tape(const TuringMachine& tm, const std::string& text) {
  auto first = text.find('|');
  if (first == std::string::npos) return std::nullopt;
  auto second = text.find('|', first + 1);
  if (second == std::string::npos) return std::nullopt;
  if (text.find('|', second + 1) != std::string::npos) return std::nullopt;

  std::string l = text.substr(0, first);
  std::string c = text.substr(first + 1, second - first - 1);
  std::string r = text.substr(second + 1);

  auto word = [&](const std::string& part) -> std::optional<std::string> {
    if (part == "~") return std::string();
    if (part.empty()) return std::nullopt;
    for (char ch : part)
      if (!tm.has_symbol(ch)) return std::nullopt;
    return part;
  };

  Tape t;
  auto lw = word(l);
  auto rw = word(r);
  if (!lw || !rw) return std::nullopt;
  t.left = *lw;
  t.right = *rw;
  if (c == "~") {
    t.center = std::nullopt;
  } else if (c.size() == 1 && tm.has_symbol(c[0])) {
    t.center = c[0];
  } else {
    return std::nullopt;
  }
  return t;
}

}  // namespace rankrev
