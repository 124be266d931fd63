#pragma once

// k-automatic sequences given by deterministic automata with output.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "autseq/automaton.hpp"

namespace autseq {

using Letter = int;

/// Single-track DFA with one output letter per state. Letters are ordered as
/// integers. Reading any representation of n (with leading zeros) yields x[n].
class SequenceDfao {
public:
    SequenceDfao(Automaton automaton, std::vector<Letter> outputs);

    /// DFAO whose output is 1 on accepting states and 0 elsewhere.
    static SequenceDfao from_indicator(const Automaton& automaton);

    const Automaton& automaton() const noexcept { return automaton_; }
    int base() const noexcept { return automaton_.base(); }
    std::size_t state_count() const noexcept { return automaton_.state_count(); }
    Letter output(StateId state) const noexcept { return outputs_[state]; }
    const std::vector<Letter>& outputs() const noexcept { return outputs_; }

    /// Sorted distinct letters produced by reachable states.
    std::vector<Letter> letters() const;

    /// Swaps letters 0 and 1 (binary sequences only).
    SequenceDfao complemented() const;

private:
    Automaton automaton_;
    std::vector<Letter> outputs_;
};

/// Names accepted by builtin_sequence().
const std::vector<std::string>& builtin_sequence_names();

/// t, tbar (Thue-Morse), r, rbar (Rudin-Shapiro), p, pbar (paperfolding),
/// d, dbar (period-doubling). Throws InputError on an unknown name.
SequenceDfao builtin_sequence(std::string_view name);

Letter letter_at(const SequenceDfao& seq, Value n);
std::vector<Letter> prefix(const SequenceDfao& seq, std::size_t length);

/// Automaton text format plus one `output <id> <letter>` line per state.
std::string to_text(const SequenceDfao& seq);
SequenceDfao sequence_from_text(std::string_view text);

}  // namespace autseq
