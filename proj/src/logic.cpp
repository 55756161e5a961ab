#include "rankrev/logic.hpp"

#include <algorithm>

namespace rankrev {

std::string Formula::to_string() const {
  std::string out = "{";
  bool first = true;
  for (World w : all_worlds()) {
    if (!contains(w)) continue;
    if (!first) out += ',';
    out += world_name(w);
    first = false;
  }
  out += '}';
  return out;
}

std::optional<Formula> parse_formula(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  Formula f;
  if (s.empty()) return f;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string name = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    bool found = false;
    for (World w : all_worlds()) {
      if (name == world_name(w)) {
        if (f.contains(w)) return std::nullopt;  // duplicate
        f = f.with(w);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return f;
}

}  // namespace rankrev
