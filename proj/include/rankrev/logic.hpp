#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Propositional semantics over a fixed two-variable signature {a, b}.
// There are exactly four interpretations; formulas are represented
// extensionally as sets of these four worlds, so there are 16 formulas
// and all operations are set operations on a 4-bit mask.

namespace rankrev {

// Fixed bijection between the four truth assignments and the world names:
//   w0 = (-a,-b), whalt = (-a,b), wq = (a,-b), wpos = (a,b).
enum class World : std::uint8_t {
  W0 = 0,
  WHalt = 1,
  WQ = 2,
  WPos = 3,
};

inline constexpr int kNumWorlds = 4;

inline constexpr std::array<World, kNumWorlds> all_worlds() {
  return {World::W0, World::WHalt, World::WQ, World::WPos};
}

constexpr std::uint8_t world_bit(World w) {
  return static_cast<std::uint8_t>(1u << static_cast<std::uint8_t>(w));
}

constexpr std::string_view world_name(World w) {
  switch (w) {
    case World::W0: return "w0";
    case World::WHalt: return "whalt";
    case World::WQ: return "wq";
    case World::WPos: return "wpos";
  }
  return "?";
}

/// A formula, identified with its set of models.
class Formula {
 public:
  constexpr Formula() : mask_(0) {}
  constexpr explicit Formula(std::uint8_t mask) : mask_(mask & 0x0f) {}
  constexpr Formula(std::initializer_list<World> worlds) : mask_(0) {
    for (World w : worlds) mask_ |= world_bit(w);
  }

  static constexpr Formula none() { return Formula(std::uint8_t{0}); }
  static constexpr Formula all() { return Formula(std::uint8_t{0x0f}); }

  constexpr bool contains(World w) const { return mask_ & world_bit(w); }
  constexpr std::uint8_t mask() const { return mask_; }
  constexpr int count() const {
    int n = 0;
    for (World w : all_worlds()) n += contains(w) ? 1 : 0;
    return n;
  }

  constexpr Formula with(World w) const {
    return Formula(static_cast<std::uint8_t>(mask_ | world_bit(w)));
  }
  constexpr Formula without(World w) const {
    return Formula(static_cast<std::uint8_t>(mask_ & ~world_bit(w)));
  }

  friend constexpr bool operator==(Formula a, Formula b) = default;

  std::string to_string() const;

 private:
  std::uint8_t mask_;
};

constexpr bool entails(Formula f1, Formula f2) {
  return (f1.mask() & ~f2.mask()) == 0;
}

constexpr Formula complement(Formula f) {
  return Formula(static_cast<std::uint8_t>(~f.mask() & 0x0f));
}

constexpr bool is_consistent(Formula f) { return f.mask() != 0; }

constexpr Formula intersect(Formula a, Formula b) {
  return Formula(static_cast<std::uint8_t>(a.mask() & b.mask()));
}

// Textual form used by the CLI: `{w0,wpos}`, `{}` for the inconsistent
// formula. Parsing ignores whitespace; unknown names yield nullopt.
std::optional<Formula> parse_formula(std::string_view text);

}  // namespace rankrev
