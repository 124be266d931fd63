#pragma once

// Base-k numerals and the arithmetic relation automata the compiler builds on.

#include <optional>
#include <span>
#include <vector>

#include "autseq/automaton.hpp"

namespace autseq {

using Digits = std::vector<int>;

/// Canonical msd-first digits of n ("0" for zero), left-padded to `width`.
/// Throws InputError if width is shorter than the canonical length.
Digits encode(Value n, int base, std::optional<std::size_t> width = std::nullopt);
Value decode(std::span<const int> digits, int base);

/// Column word for a value tuple: every value padded to the longest length.
std::vector<Symbol> encode_tuple(const DigitTupleAlphabet& alphabet, std::span<const Value> values,
                                 std::optional<std::size_t> width = std::nullopt);

enum class Relation { eq, ne, lt, le, gt, ge };

/// Two tracks (a, b) with a `rel` b.
Automaton comparator_automaton(int base, Relation rel);

/// Three tracks (a, b, c) with a + b = c.
Automaton adder_automaton(int base);

/// One track equal to the constant c.
Automaton constant_automaton(int base, Value c);

}  // namespace autseq
