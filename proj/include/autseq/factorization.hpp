#pragma once

// Lyndon factorization of automatic sequences, encoded by automata.

#include <optional>
#include <string>
#include <vector>

#include "autseq/automaton.hpp"
#include "autseq/predicate.hpp"
#include "autseq/sequences.hpp"

namespace autseq {

/// [start..end], or the ray [start..inf) when `end` is empty.
struct Occurrence {
    Value start = 0;
    std::optional<Value> end;

    bool is_ray() const noexcept { return !end.has_value(); }
    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

std::string to_string(const Occurrence& occ);
std::string to_string(const std::vector<Occurrence>& terms, const std::string& separator = "");

struct FactorizationEncoding {
    /// One track; accepts exactly the positions where a term begins.
    Automaton marker_automaton;
    bool finite = false;
    /// Filled when finite; the last term is the infinite Lyndon suffix (a ray).
    std::vector<Occurrence> terms_if_finite;

    /// Term starts below `bound`, ascending.
    std::vector<Value> starts_below(Value bound) const;
    /// Marker bits for positions 0..length-1.
    std::string bits(std::size_t length) const;
};

FactorizationEncoding factorization_start_automaton(PredicateLibrary& library);
FactorizationEncoding factorization_start_automaton(const SequenceDfao& seq);

/// Checks the marker automaton against Duval's algorithm on prefix(seq, n):
/// the markers below n cut it into nonincreasing Lyndon words, and the
/// factorization of every prefix ending at a marker is the one the markers give.
bool factorization_prefix_check(const SequenceDfao& seq, std::size_t n);
bool factorization_prefix_check(PredicateLibrary& library, const FactorizationEncoding& enc, std::size_t n);

/// Tracks (n, i): x[i..n-1] is the last term of the factorization of x[0..n-1].
Automaton prefix_last_term_automaton(PredicateLibrary& library);
Automaton prefix_last_term_automaton(const SequenceDfao& seq);

/// Factorization of x[0..n-1] read off the last-term automaton. Throws
/// InputError for n = 0.
std::vector<Occurrence> prefix_factorization(const Automaton& last_term, Value n);
std::vector<Occurrence> prefix_factorization(const SequenceDfao& seq, Value n);

/// Tracks (i, j, l): x[l..j-1] is the last term of the factorization of x[i..j-1].
Automaton factor_last_term_automaton(PredicateLibrary& library);
Automaton factor_last_term_automaton(const SequenceDfao& seq);

}  // namespace autseq
