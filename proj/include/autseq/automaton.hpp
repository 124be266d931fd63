#pragma once

// Deterministic multi-track automata over tuples of base-k digits.
//
// Words are read most-significant digit first. A word of length L over m
// tracks spells m numbers, each padded on the left with zeros to length L.
// Every automaton produced by this library is complete; a dead state may be
// present internally but is dropped by the text and DOT writers.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace autseq {

using Symbol = std::uint32_t;
using StateId = std::uint32_t;
using Value = std::uint64_t;

/// The m-tuples of base-k digits. Symbol numbering is the lexicographic order
/// of tuples, so track 0 is the most significant coordinate and the all-zero
/// column is symbol 0.
class DigitTupleAlphabet {
public:
    DigitTupleAlphabet(int base, int tracks);

    int base() const noexcept { return base_; }
    int tracks() const noexcept { return tracks_; }
    std::size_t size() const noexcept { return size_; }

    Symbol encode(std::span<const int> digits) const;
    std::vector<int> decode(Symbol symbol) const;
    int digit(Symbol symbol, int track) const noexcept {
        return static_cast<int>((symbol / weight_[static_cast<std::size_t>(track)]) %
                                static_cast<Symbol>(base_));
    }

    friend bool operator==(const DigitTupleAlphabet& a, const DigitTupleAlphabet& b) noexcept {
        return a.base_ == b.base_ && a.tracks_ == b.tracks_;
    }

private:
    int base_;
    int tracks_;
    std::size_t size_;
    std::vector<Symbol> weight_;
};

/// Caps for operations that can blow up.
struct Limits {
    std::size_t max_states = 1'000'000;
};

/// Immutable complete DFA.
class Automaton {
public:
    /// `transitions` is row-major: transitions[state * alphabet.size() + symbol].
    Automaton(DigitTupleAlphabet alphabet, StateId initial, std::vector<StateId> transitions,
              std::vector<bool> accepting);

    /// Accepts every word / no word.
    static Automaton universal(DigitTupleAlphabet alphabet);
    static Automaton empty(DigitTupleAlphabet alphabet);

    const DigitTupleAlphabet& alphabet() const noexcept { return alphabet_; }
    int base() const noexcept { return alphabet_.base(); }
    int tracks() const noexcept { return alphabet_.tracks(); }
    std::size_t state_count() const noexcept { return accepting_.size(); }
    StateId initial() const noexcept { return initial_; }
    StateId next(StateId state, Symbol symbol) const noexcept {
        return transitions_[static_cast<std::size_t>(state) * alphabet_.size() + symbol];
    }
    bool accepting(StateId state) const noexcept { return accepting_[state]; }
    std::span<const StateId> transitions() const noexcept { return transitions_; }

    /// Throws InputError on a symbol outside the alphabet.
    bool run(std::span<const Symbol> word) const;

    /// Runs the padded representation of a value tuple (one value per track).
    bool accepts(std::span<const Value> values) const;
    bool accepts(std::initializer_list<Value> values) const {
        return accepts(std::span<const Value>(values.begin(), values.size()));
    }

    bool is_empty() const;

    /// Number of states that are not the (unique after minimization) dead state.
    std::size_t live_state_count() const;

    friend bool operator==(const Automaton& a, const Automaton& b) = default;

private:
    DigitTupleAlphabet alphabet_;
    StateId initial_;
    std::vector<StateId> transitions_;
    std::vector<bool> accepting_;
};

enum class BoolOp { conjunction, disjunction, exclusive_or, implication };

/// Product construction; result minimized. Throws StructuralError on alphabet mismatch.
Automaton boolean_combine(const Automaton& a, const Automaton& b, BoolOp op);

/// Complement within all words over the alphabet.
Automaton negate(const Automaton& a);

/// Existential projection of one track, with leading-zero re-closure:
/// the kept tracks may be shorter than the witness, so the start set is every
/// state reachable on columns whose kept digits are all zero.
/// Throws StructuralError for single-track input, ResourceError past the cap.
Automaton project(const Automaton& a, int track, const Limits& limits = {});

/// Minimal complete DFA in canonical numbering (BFS over sorted symbols from
/// the initial state, dead state last). Unreachable states are removed.
Automaton minimize(const Automaton& a);

/// Automaton with a label per state (DFAO outputs, for instance).
struct LabelledAutomaton {
    Automaton automaton;
    std::vector<int> labels;
};

/// Moore-machine minimization: states are merged only if their labels agree
/// on every continuation. Numbering is canonical as in minimize().
LabelledAutomaton minimize_labelled(const Automaton& a, std::span<const int> labels,
                                    bool dead_last = false);

/// Language equality.
bool equivalent(const Automaton& a, const Automaton& b);

/// Re-embeds `a` into `new_tracks` tracks: old track t becomes track
/// `track_map[t]`; the remaining tracks are unconstrained.
Automaton cylindrify(const Automaton& a, int new_tracks, std::span<const int> track_map);

/// True iff finitely many value tuples are accepted.
bool is_value_language_finite(const Automaton& a);

/// All accepted value tuples, sorted. Throws DivergenceError if infinite.
std::vector<std::vector<Value>> enumerate_values(const Automaton& a);

/// Values v of track `free_track`, with at most `width` digits, such that the
/// tuple `fixed` (whose entry at free_track is ignored) with v substituted is
/// accepted. Sorted ascending. `width` must cover every fixed value.
std::vector<Value> accepted_completions(const Automaton& a, std::span<const Value> fixed, int free_track,
                                        std::size_t width);

/// Plain-text interchange format.
std::string to_text(const Automaton& a);
Automaton from_text(std::string_view text);

/// Graphviz rendering; `track_names` labels the edge tuples if given.
std::string to_dot(const Automaton& a, std::span<const std::string> track_names = {});

}  // namespace autseq
