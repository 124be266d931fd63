#include <doctest.h>

#include <set>

#include "autseq/automaton.hpp"
#include "autseq/error.hpp"
#include "autseq/numeration.hpp"
#include "autseq/predicate.hpp"
#include "support.hpp"

using namespace autseq;
using autseq::testing::for_each_word;
using autseq::testing::Gen;

namespace {

// Track 0 has an even number of 1 digits.
Automaton even_ones(int tracks) {
    DigitTupleAlphabet alphabet(2, tracks);
    std::vector<StateId> delta(2 * alphabet.size());
    for (StateId s = 0; s < 2; ++s)
        for (Symbol c = 0; c < alphabet.size(); ++c)
            delta[s * alphabet.size() + c] = s ^ static_cast<StateId>(alphabet.digit(c, 0));
    return Automaton(alphabet, 0, std::move(delta), {true, false});
}

std::set<std::vector<Symbol>> language(const Automaton& a, std::size_t max_length) {
    std::set<std::vector<Symbol>> out;
    for_each_word(a.alphabet().size(), max_length, [&](const std::vector<Symbol>& w) {
        if (a.run(w)) out.insert(w);
    });
    return out;
}

}  // namespace

TEST_CASE("alphabet numbering is lexicographic with track 0 most significant") {
    DigitTupleAlphabet a(3, 2);
    CHECK(a.size() == 9);
    CHECK(a.encode(std::vector<int>{0, 0}) == 0);
    CHECK(a.encode(std::vector<int>{1, 0}) == 3);
    CHECK(a.encode(std::vector<int>{2, 1}) == 7);
    CHECK(a.decode(5) == std::vector<int>{1, 2});
    CHECK(a.digit(7, 0) == 2);
    CHECK(a.digit(7, 1) == 1);
    CHECK_THROWS_AS(a.encode(std::vector<int>{3, 0}), InputError);
    CHECK_THROWS_AS(DigitTupleAlphabet(1, 1), StructuralError);
}

TEST_CASE("run") {
    auto u = Automaton::universal(DigitTupleAlphabet(2, 1));
    CHECK(u.run(std::vector<Symbol>{}));
    std::vector<Symbol> bad{2};
    CHECK_THROWS_AS(u.run(bad), InputError);

    auto lf = builtin_predicate("LF", builtin_sequence("t"));
    CHECK(lf.holds({0, 2}));
    CHECK_FALSE(lf.holds({1, 2}));
    CHECK(lf.holds({3, 4}));
    CHECK(lf.holds({5, 8}));
}

TEST_CASE("boolean_combine examples") {
    Gen gen(11);
    auto b = gen.dfa(2, 1, 6);
    auto all = Automaton::universal(DigitTupleAlphabet(2, 1));
    CHECK(equivalent(boolean_combine(all, b, BoolOp::conjunction), b));
    auto e = even_ones(1);
    CHECK(boolean_combine(e, e, BoolOp::exclusive_or).is_empty());
    CHECK_THROWS_AS(boolean_combine(e, even_ones(2), BoolOp::conjunction), StructuralError);

    auto seq = builtin_sequence("t");
    PredicateLibrary lib(seq);
    auto implied = boolean_combine(lib.get("L").automaton, lib.get("P").automaton, BoolOp::implication);
    CHECK(equivalent(implied, Automaton::universal(implied.alphabet())));
}

TEST_CASE("negate examples") {
    auto all = Automaton::universal(DigitTupleAlphabet(2, 2));
    CHECK(negate(all).is_empty());
    Gen gen(12);
    for (int k = 0; k < 20; ++k) {
        auto a = gen.dfa(2, 2, gen.integer(1, 8));
        CHECK(equivalent(negate(negate(a)), a));
    }
    auto l = builtin_predicate("L", builtin_sequence("t"));
    CHECK(negate(l.automaton).accepts({1, 2}));
}

TEST_CASE("project examples") {
    auto empty = Automaton::empty(DigitTupleAlphabet(2, 2));
    CHECK(project(empty, 0).is_empty());
    auto eq = comparator_automaton(2, Relation::eq);
    auto p = project(eq, 0);
    CHECK(equivalent(p, Automaton::universal(DigitTupleAlphabet(2, 1))));
    CHECK_THROWS_AS(project(Automaton::universal(DigitTupleAlphabet(2, 1)), 0), StructuralError);

    // Witness longer than the kept value: "exists j > i" holds for every i.
    auto lt = comparator_automaton(2, Relation::lt);
    auto below_something = project(lt, 1);
    for (Value i = 0; i < 100; ++i) CHECK(below_something.accepts({i}));

    auto lf = builtin_predicate("LF", builtin_sequence("t"));
    auto starts = project(lf.automaton, 1);
    std::vector<Value> got;
    for (Value i = 0; i < 40; ++i)
        if (starts.accepts({i})) got.push_back(i);
    CHECK(got == std::vector<Value>{0, 3, 5, 9, 17, 33});
}

TEST_CASE("project caps the subset construction") {
    Gen gen(13);
    auto a = gen.dfa(2, 2, 40);
    Limits tiny;
    tiny.max_states = 2;
    CHECK_THROWS_AS(project(a, 1, tiny), ResourceError);
}

TEST_CASE("set operations agree with enumerated languages up to length 8") {
    Gen gen(14);
    for (int round = 0; round < 25; ++round) {
        int tracks = gen.integer(1, 2);
        auto a = gen.dfa(2, tracks, gen.integer(1, 20));
        auto b = gen.dfa(2, tracks, gen.integer(1, 20));
        const std::size_t len = tracks == 1 ? 8 : 4;
        auto la = language(a, len);
        auto lb = language(b, len);
        auto check = [&](const Automaton& r, auto pred) {
            for_each_word(a.alphabet().size(), len, [&](const std::vector<Symbol>& w) {
                bool in_a = la.count(w) > 0, in_b = lb.count(w) > 0;
                REQUIRE(r.run(w) == pred(in_a, in_b));
            });
        };
        check(boolean_combine(a, b, BoolOp::conjunction), [](bool x, bool y) { return x && y; });
        check(boolean_combine(a, b, BoolOp::disjunction), [](bool x, bool y) { return x || y; });
        check(boolean_combine(a, b, BoolOp::exclusive_or), [](bool x, bool y) { return x != y; });
        check(boolean_combine(a, b, BoolOp::implication), [](bool x, bool y) { return !x || y; });
        check(negate(a), [](bool x, bool) { return !x; });
    }
}

TEST_CASE("projection agrees with enumerated witnesses") {
    // Automata closed under leading zero columns, from the compiler.
    Gen gen(15);
    Environment env(2);
    const char* formulas[] = {"x + y = z", "x < y & y + 3 = z", "x = y + y & z < x + 2", "x + 1 = z | y = 5"};
    for (const char* f : formulas) {
        std::vector<std::string> order{"x", "y", "z"};
        auto c = compile(f, env, order);
        for (int track = 0; track < 3; ++track) {
            auto p = project(c.automaton, track);
            for (int trial = 0; trial < 60; ++trial) {
                std::vector<Value> kept{gen.value(0, 30), gen.value(0, 30)};
                bool expected = false;
                for (Value w = 0; w < 200 && !expected; ++w) {
                    std::vector<Value> full;
                    for (int t = 0, k = 0; t < 3; ++t) full.push_back(t == track ? w : kept[static_cast<std::size_t>(k++)]);
                    expected = c.automaton.accepts(full);
                }
                REQUIRE(p.accepts(kept) == expected);
            }
        }
    }
}

TEST_CASE("minimize preserves the language and is idempotent") {
    Gen gen(16);
    for (int round = 0; round < 30; ++round) {
        auto a = gen.dfa(2, 1, 12);
        auto m = minimize(a);
        CHECK(m.state_count() <= a.state_count());
        for_each_word(2, 10, [&](const std::vector<Symbol>& w) { REQUIRE(a.run(w) == m.run(w)); });
        auto mm = minimize(m);
        CHECK(mm.state_count() == m.state_count());
        CHECK(mm == m);
    }
}

TEST_CASE("different constructions of L minimize to the same automaton") {
    PredicateLibrary lib(builtin_sequence("t"));
    lib.get("LL");
    std::vector<std::string> order{"i", "j"};
    auto a = compile("i <= j & A s ((i < s & s <= j) => $LL(i,j,s,j))", lib.environment(), order);
    auto b = compile("i <= j & ~E s (s <= j & ~$LL(i,j,s,j) & s > i)", lib.environment(), order);
    CHECK(minimize(a.automaton) == minimize(b.automaton));
    CHECK(minimize(a.automaton) == minimize(lib.get("L").automaton));
}

TEST_CASE("finiteness of value languages") {
    CHECK(is_value_language_finite(Automaton::empty(DigitTupleAlphabet(2, 1))));
    CHECK_FALSE(is_value_language_finite(Automaton::universal(DigitTupleAlphabet(2, 1))));
    Environment env(2);
    auto c = compile("x < 37 & x + y = 40", env, std::vector<std::string>{"x", "y"});
    CHECK(is_value_language_finite(c.automaton));
    auto values = enumerate_values(c.automaton);
    CHECK(values.size() == 37);
    CHECK(values.front() == std::vector<Value>{0, 40});
    CHECK_THROWS_AS(enumerate_values(comparator_automaton(2, Relation::lt)), DivergenceError);
}

TEST_CASE("finiteness agrees with enumeration") {
    Gen gen(17);
    Environment env(2);
    for (int round = 0; round < 40; ++round) {
        Value bound = gen.value(1, 300);
        Value m = gen.value(0, 50);
        bool bounded = gen.coin();
        std::string f = bounded ? "x < " + std::to_string(bound) + " & x + " + std::to_string(m) + " > y"
                                : "x > " + std::to_string(bound) + " & y = " + std::to_string(m);
        auto c = compile(f, env, std::vector<std::string>{"x", "y"});
        bool finite = is_value_language_finite(c.automaton);
        CHECK(finite == bounded);
        if (finite) {
            std::size_t expected = 0;
            for (Value x = 0; x < bound; ++x) expected += static_cast<std::size_t>(x + m);
            CHECK(enumerate_values(c.automaton).size() == expected);
        }
    }
}

TEST_CASE("leading zero columns do not change compiled predicates") {
    Gen gen(18);
    auto seq = builtin_sequence("t");
    PredicateLibrary lib(seq);
    for (const char* name : {"P", "L", "LL", "LF", "FIRSTOCC", "START", "PLT"}) {
        const Automaton& a = lib.get(name).automaton;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<Symbol> w(static_cast<std::size_t>(gen.integer(0, 12)));
            for (auto& s : w) s = static_cast<Symbol>(gen.integer(0, static_cast<int>(a.alphabet().size()) - 1));
            std::vector<Symbol> padded{0};
            padded.insert(padded.end(), w.begin(), w.end());
            REQUIRE(a.run(w) == a.run(padded));
        }
    }
}

TEST_CASE("text and dot formats") {
    auto lt = comparator_automaton(2, Relation::lt);
    auto text = to_text(lt);
    auto back = from_text(text);
    CHECK(equivalent(back, lt));
    CHECK(minimize(back) == minimize(lt));
    CHECK_THROWS_AS(from_text("base 2 tracks 1\ninitial 0\nstate 0 accepting 2\n"), InputError);
    CHECK_THROWS_AS(from_text("nonsense"), InputError);
    auto dot = to_dot(lt, std::vector<std::string>{"a", "b"});
    CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("cylindrify and accepted completions") {
    auto lt = comparator_automaton(2, Relation::lt);
    auto c = cylindrify(lt, 3, std::vector<int>{2, 0});
    CHECK(c.accepts({5, 99, 3}));
    CHECK_FALSE(c.accepts({3, 0, 5}));
    std::vector<Value> fixed{0, 6};
    auto below = accepted_completions(lt, fixed, 0, 4);
    CHECK(below == std::vector<Value>{0, 1, 2, 3, 4, 5});
}
