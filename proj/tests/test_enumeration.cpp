#include <doctest.h>

#include <bit>

#include "autseq/enumeration.hpp"
#include "autseq/error.hpp"
#include "autseq/numeration.hpp"
#include "autseq/oracle.hpp"

using namespace autseq;

namespace {

LinearRepresentation rep_for(const std::string& seq, CountKind kind) {
    PredicateLibrary lib(builtin_sequence(seq));
    return linear_representation(counting_pair_automaton(lib, kind), 1);
}

std::size_t pairs_for(const Automaton& a, Value n) {
    std::vector<Value> fixed{n, 0};
    return accepted_completions(a, fixed, 1, 16).size();
}

}  // namespace

TEST_CASE("count kinds") {
    CHECK(parse_count_kind("lyndon") == CountKind::lyndon);
    CHECK(parse_count_kind("terms") == CountKind::term_count);
    CHECK(to_string(CountKind::primitive) == "primitive");
    CHECK_THROWS_AS(parse_count_kind("all"), InputError);
}

TEST_CASE("counting pair automata") {
    PredicateLibrary lib(builtin_sequence("t"));
    auto cl = counting_pair_automaton(lib, CountKind::lyndon);
    auto cp = counting_pair_automaton(lib, CountKind::primitive);
    CHECK(pairs_for(cl, 3) == 2);
    CHECK(pairs_for(cl, 7) == 0);
    CHECK(pairs_for(cp, 1) == 2);
}

TEST_CASE("Lyndon and primitive counts of Thue-Morse") {
    auto lyn = rep_for("t", CountKind::lyndon);
    CHECK(evaluate_count(lyn, 1) == 2);
    CHECK(evaluate_count(lyn, 2) == 1);
    CHECK(evaluate_count(lyn, 3) == 2);
    CHECK(evaluate_count(lyn, 5) == 2);
    CHECK(evaluate_count(lyn, 7) == 0);
    CHECK(evaluate_count(lyn, 10) == 1);
    CHECK(evaluate_count(lyn, 0) == 0);
    auto prim = rep_for("t", CountKind::primitive);
    CHECK(evaluate_count(prim, 4) == 8);
    CHECK(evaluate_count(prim, 6) == 14);
}

TEST_CASE("term counts of Thue-Morse prefixes") {
    auto f = rep_for("t", CountKind::term_count);
    CHECK(evaluate_count(f, 0) == 1);
    CHECK(evaluate_count(f, 1) == 1);
    CHECK(evaluate_count(f, 2) == 1);
    CHECK(evaluate_count(f, 3) == 2);
}

TEST_CASE("counts agree with the oracle on every built-in") {
    for (const auto& name : builtin_sequence_names()) {
        PredicateLibrary lib(builtin_sequence(name));
        auto x = prefix(lib.sequence(), 4096);
        auto lyn = linear_representation(counting_pair_automaton(lib, CountKind::lyndon), 1);
        auto prim = linear_representation(counting_pair_automaton(lib, CountKind::primitive), 1);
        auto terms = term_count_representation(lib);
        for (std::size_t n = 1; n <= 32; ++n) {
            REQUIRE(evaluate_count(lyn, n) == oracle::count_factors(x, n, oracle::FactorKind::lyndon));
            REQUIRE(evaluate_count(prim, n) == oracle::count_factors(x, n, oracle::FactorKind::primitive));
        }
        for (std::size_t n = 0; n < 256; ++n) {
            std::vector<Letter> w(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n + 1));
            REQUIRE(evaluate_count(terms, n) == oracle::duval_factorization(w).size());
        }
    }
}

TEST_CASE("hand-built representations") {
    // Number of 1 digits in n: one state counting, one accepting sink.
    std::vector<LinearRepresentation::SparseMatrix> m(2);
    m[0] = {{0, 0, 1}, {1, 1, 1}};
    m[1] = {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    LinearRepresentation ones(2, {1, 0}, m, {0, 1});
    for (Value n = 0; n < 500; ++n) REQUIRE(evaluate_count(ones, n) == std::popcount(n));
    auto back = representation_from_text(to_text(ones));
    CHECK(to_text(back) == to_text(ones));
    CHECK(to_text(ones).rfind("dim 2 base 2\nu\n1 0\nM0\n", 0) == 0);

    // A digit-0 loop of weight 2 never settles.
    std::vector<LinearRepresentation::SparseMatrix> bad(2);
    bad[0] = {{0, 0, 2}};
    CHECK_THROWS_AS(LinearRepresentation(2, {1}, bad, {1}), DivergenceError);
    CHECK_THROWS_AS(LinearRepresentation(2, {1, 0}, m, {1}), InputError);
    CHECK_THROWS_AS(representation_from_text("dim 1 base 2\nu\n1\n"), InputError);
}

TEST_CASE("the closure counts values longer than n") {
    // Pairs (n, i) with i = n + 3: exactly one i per n, often with more digits.
    Environment env(2);
    auto c = compile("i = n + 3", env, std::vector<std::string>{"n", "i"});
    auto rep = linear_representation(c.automaton, 1);
    for (Value n = 0; n < 200; ++n) REQUIRE(evaluate_count(rep, n) == 1);
    auto infinite = compile("i > n", env, std::vector<std::string>{"n", "i"});
    CHECK_THROWS_AS(linear_representation(infinite.automaton, 1), DivergenceError);
    CHECK_THROWS_AS(linear_representation(Automaton::universal(DigitTupleAlphabet(2, 3)), 1), StructuralError);
}

TEST_CASE("synthesis") {
    auto lyn = rep_for("t", CountKind::lyndon);
    auto res = synthesize_bounded(lyn, 1000);
    REQUIRE(res.outcome == SynthesisResult::Outcome::dfao);
    CHECK(res.dfao->letters() == std::vector<Letter>{0, 1, 2});
    for (Value n = 0; n < 10000; ++n) REQUIRE(letter_at(*res.dfao, n) == evaluate_count(lyn, n));

    auto prim = rep_for("t", CountKind::primitive);
    auto grow = synthesize_bounded(prim, 10000);
    REQUIRE(grow.outcome == SynthesisResult::Outcome::unbounded);
    // Each pass around the cycle raises the witnessed coordinate.
    auto x = prim.u_effective();
    for (int d : grow.witness_prefix) x = prim.step(x, d);
    BigInt previous = x[grow.witness_coordinate];
    for (int k = 0; k < 6; ++k) {
        for (int d : grow.witness_cycle) x = prim.step(x, d);
        REQUIRE(x[grow.witness_coordinate] > previous);
        previous = x[grow.witness_coordinate];
    }

    auto capped = synthesize_bounded(lyn, 2);
    CHECK(capped.outcome == SynthesisResult::Outcome::cap_exceeded);
    CHECK(capped.states_explored == 2);
    CHECK_THROWS_AS(synthesize_bounded(lyn, 0), InputError);
}

TEST_CASE("synthesized automata agree with evaluation") {
    for (const char* name : {"p", "d", "pbar"}) {
        auto rep = rep_for(name, CountKind::lyndon);
        auto res = synthesize_bounded(rep, 100000);
        REQUIRE(res.outcome == SynthesisResult::Outcome::dfao);
        for (Value n = 0; n < 10000; ++n) REQUIRE(letter_at(*res.dfao, n) == evaluate_count(rep, n));
    }
}
