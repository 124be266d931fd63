#include "autseq/factorization.hpp"

#include <algorithm>

#include "autseq/error.hpp"
#include "autseq/numeration.hpp"
#include "autseq/oracle.hpp"

namespace autseq {

std::string to_string(const Occurrence& occ) {
    return "[" + std::to_string(occ.start) + ".." + (occ.end ? std::to_string(*occ.end) : std::string("inf)"))
           + (occ.end ? "]" : "");
}

std::string to_string(const std::vector<Occurrence>& terms, const std::string& separator) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) out += separator;
        out += to_string(terms[i]);
    }
    return out;
}

std::vector<Value> FactorizationEncoding::starts_below(Value bound) const {
    std::vector<Value> out;
    for (Value i = 0; i < bound; ++i) {
        if (marker_automaton.accepts({i})) out.push_back(i);
    }
    return out;
}

std::string FactorizationEncoding::bits(std::size_t length) const {
    std::string out(length, '0');
    for (Value i : starts_below(length)) out[i] = '1';
    return out;
}

FactorizationEncoding factorization_start_automaton(PredicateLibrary& library) {
    FactorizationEncoding enc{library.get("START").automaton, false, {}};
    enc.finite = is_value_language_finite(enc.marker_automaton);
    if (enc.finite) {
        std::vector<Value> starts;
        for (const auto& tuple : enumerate_values(enc.marker_automaton)) starts.push_back(tuple[0]);
        for (std::size_t k = 0; k < starts.size(); ++k) {
            if (k + 1 < starts.size()) {
                enc.terms_if_finite.push_back({starts[k], starts[k + 1] - 1});
            } else {
                enc.terms_if_finite.push_back({starts[k], std::nullopt});
            }
        }
    }
    return enc;
}

FactorizationEncoding factorization_start_automaton(const SequenceDfao& seq) {
    PredicateLibrary library(seq);
    return factorization_start_automaton(library);
}

bool factorization_prefix_check(PredicateLibrary& library, const FactorizationEncoding& enc, std::size_t n) {
    if (n == 0) throw InputError("factorization_prefix_check: n must be at least 1");
    const std::vector<Letter> word = prefix(library.sequence(), n);
    const std::span<const Letter> w(word);
    std::vector<Value> cuts = enc.starts_below(n);
    if (cuts.empty() || cuts.front() != 0) return false;
    cuts.push_back(n);
    std::vector<oracle::Piece> pieces;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        pieces.push_back({static_cast<std::size_t>(cuts[k]), static_cast<std::size_t>(cuts[k + 1] - cuts[k])});
    }
    // Every complete piece is Lyndon and no larger than the one before it. The
    // last piece is complete only when n itself is a marker.
    const bool last_complete = enc.marker_automaton.accepts({static_cast<Value>(n)});
    const std::size_t complete = last_complete ? pieces.size() : pieces.size() - 1;
    for (std::size_t k = 0; k < complete; ++k) {
        const auto piece = w.subspan(pieces[k].start, pieces[k].length);
        if (!oracle::is_lyndon(piece)) return false;
        if (k > 0 && oracle::lex_less(w.subspan(pieces[k - 1].start, pieces[k - 1].length), piece)) return false;
    }
    for (std::size_t k = 1; k <= complete; ++k) {
        const std::size_t end = pieces[k - 1].start + pieces[k - 1].length;
        const auto duval = oracle::duval_pieces(w.first(end));
        if (duval != std::vector<oracle::Piece>(pieces.begin(), pieces.begin() + static_cast<std::ptrdiff_t>(k))) {
            return false;
        }
    }
    return true;
}

bool factorization_prefix_check(const SequenceDfao& seq, std::size_t n) {
    PredicateLibrary library(seq);
    const FactorizationEncoding enc = factorization_start_automaton(library);
    return factorization_prefix_check(library, enc, n);
}

Automaton prefix_last_term_automaton(PredicateLibrary& library) { return library.get("PLT").automaton; }

Automaton prefix_last_term_automaton(const SequenceDfao& seq) {
    PredicateLibrary library(seq);
    return prefix_last_term_automaton(library);
}

std::vector<Occurrence> prefix_factorization(const Automaton& last_term, Value n) {
    if (n == 0) throw InputError("prefix_factorization: n must be at least 1");
    if (last_term.tracks() != 2) throw StructuralError("prefix_factorization: expected an (n, i) automaton");
    std::vector<Occurrence> terms;
    while (n > 0) {
        const std::size_t width = encode(n, last_term.base()).size();
        const std::vector<Value> candidates = accepted_completions(last_term, std::vector<Value>{n, 0}, 1, width);
        if (candidates.size() != 1) {
            throw StructuralError("prefix_factorization: expected exactly one last term for n = " +
                                  std::to_string(n) + ", found " + std::to_string(candidates.size()));
        }
        const Value i = candidates.front();
        if (i >= n) throw StructuralError("prefix_factorization: last term starts past the prefix");
        terms.push_back({i, n - 1});
        n = i;
    }
    std::reverse(terms.begin(), terms.end());
    return terms;
}

std::vector<Occurrence> prefix_factorization(const SequenceDfao& seq, Value n) {
    return prefix_factorization(prefix_last_term_automaton(seq), n);
}

Automaton factor_last_term_automaton(PredicateLibrary& library) { return library.get("FLT").automaton; }

Automaton factor_last_term_automaton(const SequenceDfao& seq) {
    PredicateLibrary library(seq);
    return factor_last_term_automaton(library);
}

}  // namespace autseq
