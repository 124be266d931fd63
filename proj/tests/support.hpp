#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "autseq/automaton.hpp"

namespace autseq::testing {

// Deterministic generators for the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Value value(Value lo, Value hi) { return std::uniform_int_distribution<Value>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    std::vector<int> word(std::size_t max_length, int alphabet, std::size_t min_length = 0) {
        std::vector<int> w(static_cast<std::size_t>(integer(static_cast<int>(min_length), static_cast<int>(max_length))));
        for (auto& a : w) a = integer(0, alphabet - 1);
        return w;
    }

    // Arbitrary complete DFA; not closed under leading zeros in general.
    Automaton dfa(int base, int tracks, int states) {
        DigitTupleAlphabet alphabet(base, tracks);
        std::vector<StateId> delta(static_cast<std::size_t>(states) * alphabet.size());
        for (auto& t : delta) t = static_cast<StateId>(integer(0, states - 1));
        std::vector<bool> accepting(static_cast<std::size_t>(states));
        for (std::size_t i = 0; i < accepting.size(); ++i) accepting[i] = coin(0.4);
        return Automaton(alphabet, 0, std::move(delta), std::move(accepting));
    }

private:
    std::mt19937_64 rng_;
};

// All words over `symbols` letters with length <= max_length, calling f(word).
template <class F>
void for_each_word(std::size_t symbols, std::size_t max_length, F&& f) {
    std::vector<Symbol> w;
    f(w);
    for (std::size_t len = 1; len <= max_length; ++len) {
        w.assign(len, 0);
        while (true) {
            f(w);
            std::size_t i = len;
            while (i > 0 && ++w[i - 1] == symbols) w[--i] = 0;
            if (i == 0) break;
        }
    }
}

}  // namespace autseq::testing
