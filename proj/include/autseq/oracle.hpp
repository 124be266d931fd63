#pragma once

// Brute-force ground truth on finite words. Nothing in here touches the
// automata pipeline; tests use these functions to check it.

#include <cstddef>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace autseq::oracle {

using Letter = int;
using FiniteWord = std::vector<Letter>;

/// Converts text to a word over the character codes (so "0110" and "murmur"
/// both work with their natural order).
FiniteWord word_from_string(std::string_view text);
std::string word_to_string(std::span<const Letter> word);

/// Lexicographic order where a proper prefix is smaller.
bool lex_less(std::span<const Letter> a, std::span<const Letter> b);

bool is_primitive(std::span<const Letter> w);
bool is_lyndon(std::span<const Letter> w);

/// Half-open [start, start+length) pieces of the Lyndon factorization.
struct Piece {
    std::size_t start;
    std::size_t length;
    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Duval's algorithm; linear time.
std::vector<Piece> duval_pieces(std::span<const Letter> w);
std::vector<FiniteWord> duval_factorization(std::span<const Letter> w);

/// Start index of the lexicographically least suffix (naive scan).
std::size_t least_suffix(std::span<const Letter> w);

enum class FactorKind { primitive, lyndon, all };

/// Number of distinct length-n factors of `text` with the given property.
std::size_t count_factors(std::span<const Letter> text, std::size_t n, FactorKind kind);

/// Return words of `u` in `text`: the words between consecutive occurrence starts.
std::set<FiniteWord> return_words(std::span<const Letter> text, std::span<const Letter> u);

}  // namespace autseq::oracle
