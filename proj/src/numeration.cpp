#include "autseq/numeration.hpp"

#include <algorithm>

#include "autseq/error.hpp"

namespace autseq {

Digits encode(Value n, int base, std::optional<std::size_t> width) {
    if (base < 2) throw InputError("base must be at least 2");
    Digits d;
    const auto k = static_cast<Value>(base);
    do {
        d.push_back(static_cast<int>(n % k));
        n /= k;
    } while (n > 0);
    if (width) {
        if (*width < d.size()) throw InputError("encode: width shorter than the canonical length");
        d.resize(*width, 0);
    }
    std::reverse(d.begin(), d.end());
    return d;
}

Value decode(std::span<const int> digits, int base) {
    Value v = 0;
    for (int d : digits) {
        if (d < 0 || d >= base) throw InputError("decode: digit out of range");
        v = v * static_cast<Value>(base) + static_cast<Value>(d);
    }
    return v;
}

std::vector<Symbol> encode_tuple(const DigitTupleAlphabet& alphabet, std::span<const Value> values,
                                 std::optional<std::size_t> width) {
    if (values.size() != static_cast<std::size_t>(alphabet.tracks())) {
        throw InputError("encode_tuple: arity mismatch");
    }
    std::size_t len = 1;
    for (Value v : values) len = std::max(len, encode(v, alphabet.base()).size());
    if (width) {
        if (*width < len) throw InputError("encode_tuple: width too small");
        len = *width;
    }
    std::vector<Digits> rows;
    rows.reserve(values.size());
    for (Value v : values) rows.push_back(encode(v, alphabet.base(), len));
    std::vector<Symbol> word(len);
    std::vector<int> column(values.size());
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t t = 0; t < values.size(); ++t) column[t] = rows[t][i];
        word[i] = alphabet.encode(column);
    }
    return word;
}

Automaton comparator_automaton(int base, Relation rel) {
    // States: 0 = equal so far, 1 = a < b decided, 2 = a > b decided.
    const DigitTupleAlphabet alphabet(base, 2);
    std::vector<StateId> tr(3 * alphabet.size());
    for (Symbol s = 0; s < alphabet.size(); ++s) {
        const int x = alphabet.digit(s, 0);
        const int y = alphabet.digit(s, 1);
        tr[0 * alphabet.size() + s] = x == y ? 0 : (x < y ? 1 : 2);
        tr[1 * alphabet.size() + s] = 1;
        tr[2 * alphabet.size() + s] = 2;
    }
    std::vector<bool> acc(3);
    switch (rel) {
        case Relation::eq: acc = {true, false, false}; break;
        case Relation::ne: acc = {false, true, true}; break;
        case Relation::lt: acc = {false, true, false}; break;
        case Relation::le: acc = {true, true, false}; break;
        case Relation::gt: acc = {false, false, true}; break;
        case Relation::ge: acc = {true, false, true}; break;
    }
    return minimize(Automaton(alphabet, 0, std::move(tr), std::move(acc)));
}

Automaton adder_automaton(int base) {
    // State = carry owed to the position above (read so far, msd first);
    // state 2 is dead. Column (x, y, z) with incoming carry c satisfies
    // x + y + c = z + base * owed.
    const DigitTupleAlphabet alphabet(base, 3);
    const std::size_t sigma = alphabet.size();
    std::vector<StateId> tr(3 * sigma, 2);
    for (StateId owed = 0; owed < 2; ++owed) {
        for (Symbol s = 0; s < sigma; ++s) {
            const int x = alphabet.digit(s, 0);
            const int y = alphabet.digit(s, 1);
            const int z = alphabet.digit(s, 2);
            const int carry_in = z + base * static_cast<int>(owed) - x - y;
            if (carry_in == 0 || carry_in == 1) tr[owed * sigma + s] = static_cast<StateId>(carry_in);
        }
    }
    return minimize(Automaton(alphabet, 0, std::move(tr), {true, false, false}));
}

Automaton constant_automaton(int base, Value c) {
    // Accepts 0* encode(c). States 0..len-1 track the matched prefix, len accepts, len+1 dead.
    const DigitTupleAlphabet alphabet(base, 1);
    const Digits digits = encode(c, base);
    const std::size_t len = digits.size();
    const auto dead = static_cast<StateId>(len + 1);
    std::vector<StateId> tr((len + 2) * alphabet.size(), dead);
    std::vector<bool> acc(len + 2, false);
    acc[len] = true;
    for (std::size_t i = 0; i < len; ++i) {
        tr[i * alphabet.size() + static_cast<Symbol>(digits[i])] = static_cast<StateId>(i + 1);
    }
    // Leading zeros: stay in the start state. For c = 0 that makes the start accepting.
    tr[0] = 0;
    if (c == 0) acc[0] = true;
    return minimize(Automaton(alphabet, 0, std::move(tr), std::move(acc)));
}

}  // namespace autseq
