#include "autseq/sequences.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "autseq/error.hpp"
#include "autseq/numeration.hpp"
#include "autseq/predicate.hpp"

namespace autseq {

SequenceDfao::SequenceDfao(Automaton automaton, std::vector<Letter> outputs)
    : automaton_(std::move(automaton)), outputs_(std::move(outputs)) {
    if (automaton_.tracks() != 1) throw StructuralError("a sequence automaton has exactly one track");
    if (outputs_.size() != automaton_.state_count()) {
        throw StructuralError("a sequence automaton needs one output per state");
    }
}

SequenceDfao SequenceDfao::from_indicator(const Automaton& automaton) {
    std::vector<Letter> out(automaton.state_count());
    for (StateId q = 0; q < automaton.state_count(); ++q) out[q] = automaton.accepting(q) ? 1 : 0;
    auto min = minimize_labelled(automaton, out);
    return SequenceDfao(std::move(min.automaton), std::move(min.labels));
}

std::vector<Letter> SequenceDfao::letters() const {
    const std::size_t sigma = automaton_.alphabet().size();
    std::vector<bool> seen(state_count(), false);
    std::vector<StateId> stack{automaton_.initial()};
    seen[automaton_.initial()] = true;
    std::set<Letter> out;
    while (!stack.empty()) {
        const StateId q = stack.back();
        stack.pop_back();
        out.insert(outputs_[q]);
        for (Symbol s = 0; s < sigma; ++s) {
            const StateId r = automaton_.next(q, s);
            if (!seen[r]) {
                seen[r] = true;
                stack.push_back(r);
            }
        }
    }
    return {out.begin(), out.end()};
}

SequenceDfao SequenceDfao::complemented() const {
    std::vector<Letter> out = outputs_;
    for (Letter& a : out) {
        if (a != 0 && a != 1) throw StructuralError("complemented(): sequence is not binary");
        a = 1 - a;
    }
    std::vector<bool> acc(out.size());
    for (std::size_t q = 0; q < out.size(); ++q) acc[q] = out[q] == 1;
    std::vector<StateId> tr(automaton_.transitions().begin(), automaton_.transitions().end());
    return SequenceDfao(Automaton(automaton_.alphabet(), automaton_.initial(), std::move(tr), std::move(acc)),
                        std::move(out));
}

namespace {

// Binary DFAO from a transition function over small integer states.
template <typename Next, typename Out>
SequenceDfao binary_dfao(StateId states, Next next, Out out) {
    const DigitTupleAlphabet alphabet(2, 1);
    std::vector<StateId> tr(states * 2);
    std::vector<bool> acc(states);
    std::vector<Letter> outputs(states);
    for (StateId q = 0; q < states; ++q) {
        tr[q * 2] = next(q, 0);
        tr[q * 2 + 1] = next(q, 1);
        outputs[q] = out(q);
        acc[q] = outputs[q] == 1;
    }
    Automaton a(alphabet, 0, std::move(tr), std::move(acc));
    auto min = minimize_labelled(a, outputs);
    return SequenceDfao(std::move(min.automaton), std::move(min.labels));
}

SequenceDfao thue_morse() {
    return binary_dfao(2, [](StateId q, int d) { return q ^ static_cast<StateId>(d); },
                       [](StateId q) { return static_cast<Letter>(q); });
}

SequenceDfao rudin_shapiro() {
    // State = 2 * parity + last digit.
    return binary_dfao(
        4,
        [](StateId q, int d) {
            const StateId parity = q >> 1;
            const StateId last = q & 1;
            const StateId flip = (last == 1 && d == 1) ? 1 : 0;
            return ((parity ^ flip) << 1) | static_cast<StateId>(d);
        },
        [](StateId q) { return static_cast<Letter>(q >> 1); });
}

// m = 2^a (2b + 1) maps to b mod 2. State = 2 * (digit before the last 1) + previous digit.
SequenceDfao folding_of_successor() {
    return binary_dfao(
        4,
        [](StateId q, int d) {
            const StateId before = q >> 1;
            const StateId prev = q & 1;
            const StateId next_before = d == 1 ? prev : before;
            return (next_before << 1) | static_cast<StateId>(d);
        },
        [](StateId q) { return static_cast<Letter>(q >> 1); });
}

SequenceDfao paperfolding() {
    Environment env(2);
    env.add_sequence("Q", folding_of_successor());
    return SequenceDfao::from_indicator(compile("Q[n+1] = 1", env).automaton);
}

SequenceDfao period_doubling() {
    Environment env(2);
    env.add_sequence("T", thue_morse());
    return SequenceDfao::from_indicator(compile("T[n] != T[n+1]", env).automaton);
}

}  // namespace

const std::vector<std::string>& builtin_sequence_names() {
    static const std::vector<std::string> names = {"t", "tbar", "r", "rbar", "p", "pbar", "d", "dbar"};
    return names;
}

SequenceDfao builtin_sequence(std::string_view name) {
    if (name == "t") return thue_morse();
    if (name == "tbar") return thue_morse().complemented();
    if (name == "r") return rudin_shapiro();
    if (name == "rbar") return rudin_shapiro().complemented();
    if (name == "p") return paperfolding();
    if (name == "pbar") return paperfolding().complemented();
    if (name == "d") return period_doubling();
    if (name == "dbar") return period_doubling().complemented();
    throw InputError("unknown sequence '" + std::string(name) + "'");
}

Letter letter_at(const SequenceDfao& seq, Value n) {
    const Digits digits = encode(n, seq.base());
    StateId q = seq.automaton().initial();
    for (int d : digits) q = seq.automaton().next(q, static_cast<Symbol>(d));
    return seq.output(q);
}

std::vector<Letter> prefix(const SequenceDfao& seq, std::size_t length) {
    std::vector<Letter> out(length);
    for (std::size_t n = 0; n < length; ++n) out[n] = letter_at(seq, n);
    return out;
}

std::string to_text(const SequenceDfao& seq) {
    const Automaton& a = seq.automaton();
    const std::size_t sigma = a.alphabet().size();
    std::ostringstream out;
    out << "base " << a.base() << " tracks 1\n";
    out << "initial " << a.initial() << '\n';
    for (StateId q = 0; q < a.state_count(); ++q) {
        out << "state " << q << " accepting " << (seq.output(q) != 0 ? 1 : 0) << '\n';
        out << "output " << q << ' ' << seq.output(q) << '\n';
        for (Symbol s = 0; s < sigma; ++s) out << s << " -> " << a.next(q, s) << '\n';
    }
    return out.str();
}

SequenceDfao sequence_from_text(std::string_view text) {
    Automaton a = from_text(text);
    if (a.tracks() != 1) throw InputError("sequence automaton must have one track");
    // from_text appends an implicit dead state for omitted transitions.
    const std::size_t declared = a.state_count() - 1;
    std::vector<Letter> outputs(a.state_count(), 0);
    std::vector<bool> given(a.state_count(), false);
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        long id = -1;
        long letter = -1;
        if (!(ls >> word) || word != "output") continue;
        if (!(ls >> id >> letter) || id < 0 || static_cast<std::size_t>(id) >= declared || letter < 0) {
            throw InputError("bad output line: " + line);
        }
        outputs[static_cast<std::size_t>(id)] = static_cast<Letter>(letter);
        given[static_cast<std::size_t>(id)] = true;
    }
    for (StateId q = 0; q < declared; ++q) {
        if (!given[q]) outputs[q] = a.accepting(q) ? 1 : 0;
    }
    // The implicit dead state must be unreachable: a DFAO is total.
    const auto dead = static_cast<StateId>(declared);
    std::vector<bool> seen(a.state_count(), false);
    std::vector<StateId> stack{a.initial()};
    seen[a.initial()] = true;
    while (!stack.empty()) {
        const StateId q = stack.back();
        stack.pop_back();
        if (q == dead) throw InputError("sequence automaton is missing transitions");
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            const StateId r = a.next(q, s);
            if (!seen[r]) {
                seen[r] = true;
                stack.push_back(r);
            }
        }
    }
    auto min = minimize_labelled(a, outputs);
    return SequenceDfao(std::move(min.automaton), std::move(min.labels));
}

}  // namespace autseq
