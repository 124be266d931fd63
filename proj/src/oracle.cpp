#include "autseq/oracle.hpp"

#include <algorithm>

#include "autseq/error.hpp"

namespace autseq::oracle {

namespace {

void require_nonempty(std::span<const Letter> w, const char* what) {
    if (w.empty()) throw InputError(std::string(what) + ": empty word");
}

}  // namespace

FiniteWord word_from_string(std::string_view text) {
    return FiniteWord(text.begin(), text.end());
}

std::string word_to_string(std::span<const Letter> word) {
    std::string out;
    out.reserve(word.size());
    for (Letter a : word) {
        out.push_back(a >= 0 && a < 10 ? static_cast<char>('0' + a) : static_cast<char>(a));
    }
    return out;
}

bool lex_less(std::span<const Letter> a, std::span<const Letter> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_primitive(std::span<const Letter> w) {
    require_nonempty(w, "is_primitive");
    const std::size_t n = w.size();
    for (std::size_t d = 1; d < n; ++d) {
        bool same = true;
        for (std::size_t k = 0; k < n && same; ++k) same = w[k] == w[(k + d) % n];
        if (same) return false;
    }
    return true;
}

bool is_lyndon(std::span<const Letter> w) {
    require_nonempty(w, "is_lyndon");
    for (std::size_t d = 1; d < w.size(); ++d) {
        if (!lex_less(w, w.subspan(d))) return false;
    }
    return true;
}

std::vector<Piece> duval_pieces(std::span<const Letter> w) {
    require_nonempty(w, "duval_factorization");
    std::vector<Piece> pieces;
    const std::size_t n = w.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        std::size_t k = i;
        while (j < n && w[k] <= w[j]) {
            k = w[k] < w[j] ? i : k + 1;
            ++j;
        }
        const std::size_t period = j - k;
        while (i <= k) {
            pieces.push_back({i, period});
            i += period;
        }
    }
    return pieces;
}

std::vector<FiniteWord> duval_factorization(std::span<const Letter> w) {
    std::vector<FiniteWord> out;
    for (const Piece& p : duval_pieces(w)) {
        auto sub = w.subspan(p.start, p.length);
        out.emplace_back(sub.begin(), sub.end());
    }
    return out;
}

std::size_t least_suffix(std::span<const Letter> w) {
    require_nonempty(w, "least_suffix");
    std::size_t best = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (lex_less(w.subspan(i), w.subspan(best))) best = i;
    }
    return best;
}

std::size_t count_factors(std::span<const Letter> text, std::size_t n, FactorKind kind) {
    if (n == 0) throw InputError("count_factors: n must be at least 1");
    if (n > text.size()) throw InputError("count_factors: n exceeds the text length");
    std::set<FiniteWord> seen;
    for (std::size_t i = 0; i + n <= text.size(); ++i) {
        auto f = text.subspan(i, n);
        seen.emplace(f.begin(), f.end());
    }
    std::size_t count = 0;
    for (const FiniteWord& f : seen) {
        switch (kind) {
            case FactorKind::all: ++count; break;
            case FactorKind::primitive: count += is_primitive(f) ? 1 : 0; break;
            case FactorKind::lyndon: count += is_lyndon(f) ? 1 : 0; break;
        }
    }
    return count;
}

std::set<FiniteWord> return_words(std::span<const Letter> text, std::span<const Letter> u) {
    require_nonempty(u, "return_words");
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i + u.size() <= text.size(); ++i) {
        if (std::equal(u.begin(), u.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) {
            starts.push_back(i);
        }
    }
    if (starts.size() < 2) throw InputError("return_words: factor occurs fewer than two times");
    std::set<FiniteWord> out;
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
        auto w = text.subspan(starts[k], starts[k + 1] - starts[k]);
        out.emplace(w.begin(), w.end());
    }
    return out;
}

}  // namespace autseq::oracle
