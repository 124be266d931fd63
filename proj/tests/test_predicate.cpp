#include <doctest.h>

#include "autseq/error.hpp"
#include "autseq/numeration.hpp"
#include "autseq/oracle.hpp"
#include "autseq/predicate.hpp"
#include "support.hpp"

using namespace autseq;

namespace {

Environment tm_env() {
    Environment env(2);
    env.add_sequence("T", builtin_sequence("t"));
    return env;
}

std::vector<Letter> slice(const std::vector<Letter>& w, std::size_t i, std::size_t j) {
    return {w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j + 1)};
}

}  // namespace

TEST_CASE("parsing") {
    auto env = tm_env();
    auto e = parse_predicate("E d (0 < d & d < n & T[d] = T[n])", env);
    CHECK(e.kind == PredicateAst::Kind::exists);
    auto cmp = parse_predicate("T[i] = T[j]", env);
    CHECK(cmp.kind == PredicateAst::Kind::index_compare);
    auto a = parse_predicate("A j (j > i => T[j] = 1)", env);
    CHECK(a.kind == PredicateAst::Kind::forall);
    CHECK(parse_predicate("T[i] = 1").kind == PredicateAst::Kind::index_letter);
    CHECK(free_variables(parse_predicate("E x (x + y = z & y < w)")) == std::vector<std::string>{"y", "z", "w"});
    CHECK(to_string(parse_predicate("i<j&j<=k")) == to_string(parse_predicate("(i < j) & (j <= k)")));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_predicate("i < j &\n  (j < ");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 6);
    }
    CHECK_THROWS_AS(parse_predicate("2*n = m"), SyntaxError);
    CHECK_THROWS_AS(parse_predicate("a < b < c"), SyntaxError);
    CHECK_THROWS_AS(parse_predicate("E (x = 1)"), SyntaxError);
    CHECK_THROWS_AS(parse_predicate("x = "), SyntaxError);
    CHECK_THROWS_AS(parse_predicate("Q[i] = 1", tm_env()), InputError);
    CHECK_THROWS_AS(parse_predicate("$NOPE(i)", tm_env()), InputError);
}

TEST_CASE("compiling comparisons and arithmetic") {
    Environment env(2);
    std::vector<std::string> ij{"i", "j"};
    CHECK(compile("i < j", env, ij).automaton == minimize(comparator_automaton(2, Relation::lt)));
    auto c = compile("x + 3 = y + y", env, std::vector<std::string>{"x", "y"});
    for (Value x = 0; x < 60; ++x)
        for (Value y = 0; y < 60; ++y) REQUIRE(c.holds({x, y}) == (x + 3 == 2 * y));
    auto d = compile("x - 2 = y", env, std::vector<std::string>{"x", "y"});
    for (Value x = 0; x < 60; ++x)
        for (Value y = 0; y < 60; ++y) REQUIRE(d.holds({x, y}) == (x >= 2 && x - 2 == y));
    CHECK(compile("E x (x + x = 7)", env).truth() == false);
    CHECK(compile("A x E y (y > x)", env).truth() == true);
    CHECK(compile("true", env).closed());
    CHECK_THROWS_AS(compile("i < j", env).truth(), StructuralError);
}

TEST_CASE("free-variable order fixes tracks") {
    Environment env(2);
    auto c = compile("b < a", env, std::vector<std::string>{"a", "b", "extra"});
    CHECK(c.automaton.tracks() == 3);
    CHECK(c.holds({5, 2, 99}));
    CHECK_FALSE(c.holds({2, 5, 0}));
    CHECK_THROWS_AS(compile("b < a", env, std::vector<std::string>{"a"}), InputError);
}

TEST_CASE("forall is the dual of exists") {
    auto env = tm_env();
    const char* pairs[][2] = {
        {"A j (j > i => T[j] = T[i] | T[j+1] != T[i])", "~E j ~(j > i => T[j] = T[i] | T[j+1] != T[i])"},
        {"A u (u < n => T[i+u] = T[m+u])", "~E u ~(u < n => T[i+u] = T[m+u])"},
        {"A x A y (x + y = n => T[x] <= T[y] | x < y)", "~E x ~~E y ~(x + y = n => T[x] <= T[y] | x < y)"},
    };
    for (auto& p : pairs) {
        auto a = compile(p[0], env);
        auto b = compile(p[1], env, a.free_vars);
        CHECK(a.automaton == b.automaton);
    }
}

TEST_CASE("sequence indexing") {
    auto env = tm_env();
    auto t = prefix(builtin_sequence("t"), 300);
    auto c = compile("T[i+2] = 1 & T[i] < T[j]", env, std::vector<std::string>{"i", "j"});
    for (Value i = 0; i < 100; ++i)
        for (Value j = 0; j < 100; ++j) REQUIRE(c.holds({i, j}) == (t[i + 2] == 1 && t[i] < t[j]));
    auto none = compile("E i (T[i] = 2)", env);
    CHECK(none.truth() == false);
    CHECK(compile("E i (T[i] = T[i+1] & T[i+1] = T[i+2])", env).truth() == false);
    CHECK(compile("E i (T[i] = T[i+1])", env).truth() == true);
}

TEST_CASE("library predicates on Thue-Morse match the oracle") {
    PredicateLibrary lib(builtin_sequence("t"));
    auto t = prefix(builtin_sequence("t"), 512);
    const auto& P = lib.get("P");
    const auto& L = lib.get("L");
    CHECK(P.holds({0, 3}));
    CHECK_FALSE(P.holds({1, 2}));
    CHECK(P.holds({0, 5}));
    CHECK(L.holds({0, 2}));
    CHECK(L.holds({5, 8}));
    CHECK_FALSE(P.holds({3, 2}));
    for (Value i = 0; i < 200; ++i)
        for (Value j = i; j < 200; ++j) {
            auto w = slice(t, i, j);
            REQUIRE(P.holds({i, j}) == oracle::is_primitive(w));
            REQUIRE(L.holds({i, j}) == oracle::is_lyndon(w));
        }
    CHECK(boolean_combine(L.automaton, negate(P.automaton), BoolOp::conjunction).is_empty());
}

TEST_CASE("lexicographic comparison of factors") {
    PredicateLibrary lib(builtin_sequence("t"));
    auto t = prefix(builtin_sequence("t"), 512);
    const auto& LL = lib.get("LL");
    autseq::testing::Gen gen(41);
    for (int trial = 0; trial < 20000; ++trial) {
        Value i = gen.value(0, 99), m = gen.value(0, 99);
        Value j = gen.value(i, 149), n = gen.value(m, 149);
        REQUIRE(LL.holds({i, j, m, n}) == oracle::lex_less(slice(t, i, j), slice(t, m, n)));
    }
    // Prefix versus longer word, and a mismatch at the first letter.
    CHECK(LL.holds({0, 1, 0, 2}));
    CHECK(LL.holds({0, 2, 1, 1}));
    CHECK_FALSE(LL.holds({1, 1, 0, 2}));
}

TEST_CASE("infinite Lyndon suffixes") {
    PredicateLibrary tbar(builtin_sequence("tbar"));
    CHECK(tbar.get("Linf").holds({1}));
    CHECK_FALSE(tbar.get("Linf").holds({0}));
    PredicateLibrary t(builtin_sequence("t"));
    t.get("Linf");
    CHECK_FALSE(compile("E i $Linf(i)", t.environment()).truth());
}

TEST_CASE("first occurrences") {
    PredicateLibrary lib(builtin_sequence("t"));
    auto t = prefix(builtin_sequence("t"), 600);
    const auto& F = lib.get("FIRSTOCC");
    for (Value n = 1; n < 12; ++n)
        for (Value i = 0; i < 200; ++i) {
            bool first = true;
            for (Value j = 0; j < i && first; ++j) first = slice(t, j, j + n - 1) != slice(t, i, i + n - 1);
            REQUIRE(F.holds({n, i}) == first);
        }
}

TEST_CASE("containment predicates") {
    PredicateLibrary lib(builtin_sequence("t"));
    CHECK(lib.get("I").holds({3, 4, 2, 4}));
    CHECK(lib.get("I").holds({3, 4, 3, 4}));
    CHECK_FALSE(lib.get("SI").holds({3, 4, 3, 4}));
    CHECK(lib.get("SI").holds({3, 4, 3, 5}));
    CHECK_FALSE(lib.get("I").holds({3, 4, 4, 5}));
    CHECK_THROWS_AS(lib.get("NOPE"), InputError);
}

TEST_CASE("resource errors name the subformula") {
    Environment env(2);
    env.limits.max_states = 3;
    try {
        compile("E y E z (x + y = z & z < y + 7 & y + y = x)", env);
        FAIL("expected a resource error");
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("subformula") != std::string::npos);
    }
}
