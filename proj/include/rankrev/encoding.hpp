#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "rankrev/turing.hpp"

// Injective, decodable numbering of tape triples. Words are bijective
// base-k numerals (alphabet indexed 1..k, empty word = 0), the triple is
// folded with the Cantor pairing, and the whole code is offset by 2n so a
// position code can never fall into the rank band [0, 2n-1] occupied by
// state bookkeeping. The offset is what keeps the cross-boundary rank
// inequalities intact when position ranks are shifted during a transition.

namespace rankrev {

using Nat = mpz_class;

/// Cantor pairing (x+y)(x+y+1)/2 + y.
Nat cantor_pair(const Nat& x, const Nat& y);
std::pair<Nat, Nat> cantor_unpair(const Nat& z);

/// Bijective base-k value of a word; empty word encodes to 0.
/// Throws std::invalid_argument on symbols outside the alphabet.
Nat enc_word(const TuringMachine& tm, const std::string& word);
std::string dec_word(const TuringMachine& tm, Nat value);

/// Code of a tape triple: 2n + pair(pair(enc_word(left), center), enc_word(right))
/// with center = 0 for the untouched cell and the 1-based symbol index
/// otherwise. Injective, with enc_pos >= 2n always.
Nat enc_pos(const TuringMachine& tm, const Tape& tape);

/// Inverse of enc_pos; nullopt when the value is below the 2n floor (in
/// particular when negative) or the center component exceeds the alphabet.
std::optional<Tape> dec_pos(const TuringMachine& tm, const Nat& value);

// Triple text syntax used by the CLI: `left|center|right` with `~` for the
// empty word / untouched cell, e.g. `ab|a|~`.
std::string format_tape(const Tape& t);
std::optional<Tape> parse_tape(const TuringMachine& tm, const std::string& text);

}  // namespace rankrev
