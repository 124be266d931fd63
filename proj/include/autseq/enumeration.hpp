#pragma once

// Counting functions of automatic sequences as k-regular sequences.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "autseq/automaton.hpp"
#include "autseq/predicate.hpp"
#include "autseq/sequences.hpp"

namespace autseq {

using BigInt = boost::multiprecision::cpp_int;

enum class CountKind { primitive, lyndon, term_count };

std::string to_string(CountKind kind);
/// "primitive", "lyndon", "terms" (or "term_count"); throws InputError otherwise.
CountKind parse_count_kind(std::string_view text);

/// value(n) = u_eff * M[d1] * ... * M[dm] * v for the canonical digits d1..dm
/// of n, where u_eff = lim_a u * M[0]^a. The limit absorbs counted values that
/// are longer than n; it must be reached within `dimension` steps.
class LinearRepresentation {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        BigInt count;
    };
    using SparseMatrix = std::vector<Entry>;  // sorted by (row, col), no zeros

    /// Throws DivergenceError (naming a state on an offending M[0] cycle) when
    /// the closure does not settle.
    LinearRepresentation(int base, std::vector<BigInt> u, std::vector<SparseMatrix> matrices,
                         std::vector<BigInt> v);

    int base() const noexcept { return base_; }
    std::size_t dimension() const noexcept { return u_.size(); }
    const std::vector<BigInt>& u() const noexcept { return u_; }
    const std::vector<BigInt>& u_effective() const noexcept { return u_eff_; }
    const std::vector<BigInt>& v() const noexcept { return v_; }
    const SparseMatrix& matrix(int digit) const { return matrices_.at(static_cast<std::size_t>(digit)); }
    BigInt entry(int digit, std::size_t row, std::size_t col) const;

    /// row * M[digit]
    std::vector<BigInt> step(const std::vector<BigInt>& row, int digit) const;
    BigInt dot_v(const std::vector<BigInt>& row) const;

private:
    int base_;
    std::vector<BigInt> u_;
    std::vector<SparseMatrix> matrices_;
    std::vector<BigInt> v_;
    std::vector<BigInt> u_eff_;
};

BigInt evaluate_count(const LinearRepresentation& rep, Value n);

/// `dim D base k`, then `u` and a row, `M<d>` and D rows per digit, `v` and a row.
std::string to_text(const LinearRepresentation& rep);
LinearRepresentation representation_from_text(std::string_view text);

/// Tracks (n, i): the length-n factor at i is primitive / Lyndon and occurs
/// there for the first time. For term_count: i starts a term of the
/// factorization of x[0..n].
Automaton counting_pair_automaton(PredicateLibrary& library, CountKind kind);
Automaton counting_pair_automaton(const SequenceDfao& seq, CountKind kind);

/// Path-counting representation of a two-track automaton; value(n) is the
/// number of values on `counted_track` paired with n on the other track.
LinearRepresentation linear_representation(const Automaton& pairs, int counted_track);

/// f(n) = number of terms of the Lyndon factorization of x[0..n].
LinearRepresentation term_count_representation(PredicateLibrary& library);
LinearRepresentation term_count_representation(const SequenceDfao& seq);

struct SynthesisResult {
    enum class Outcome { dfao, unbounded, cap_exceeded };
    Outcome outcome = Outcome::cap_exceeded;
    /// Set when outcome == dfao. States are in breadth-first discovery order.
    std::optional<SequenceDfao> dfao;
    std::size_t states_explored = 0;
    /// Largest output seen among explored states.
    BigInt max_output = 0;
    /// Unbounded: the vector reached on `witness_prefix` is dominated by the
    /// one reached on `witness_prefix + witness_cycle`, strictly at a
    /// coordinate that the cycle maps back to itself.
    std::vector<int> witness_prefix;
    std::vector<int> witness_cycle;
    std::size_t witness_coordinate = 0;
};

/// Breadth-first exploration of the vectors u_eff * M[x]. `cap` bounds the
/// number of distinct vectors.
SynthesisResult synthesize_bounded(const LinearRepresentation& rep, std::size_t cap);

}  // namespace autseq
