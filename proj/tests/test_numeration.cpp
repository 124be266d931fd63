#include <doctest.h>

#include "autseq/automaton.hpp"
#include "autseq/error.hpp"
#include "autseq/numeration.hpp"
#include "support.hpp"

using namespace autseq;

TEST_CASE("encode and decode") {
    CHECK(encode(0, 2) == Digits{0});
    CHECK(encode(18, 2) == Digits{1, 0, 0, 1, 0});
    CHECK(encode(5, 2, 8) == Digits{0, 0, 0, 0, 0, 1, 0, 1});
    CHECK(encode(0, 3, 2) == Digits{0, 0});
    CHECK(encode(26, 3) == Digits{2, 2, 2});
    CHECK_THROWS_AS(encode(18, 2, 4), InputError);
    CHECK_THROWS_AS(encode(1, 1), InputError);
    for (int base = 2; base <= 5; ++base)
        for (Value n = 0; n < 2000; ++n) REQUIRE(decode(encode(n, base), base) == n);
}

TEST_CASE("encode is monotone under length-then-lexicographic order") {
    for (Value n = 0; n < 1000; ++n) {
        auto a = encode(n, 2), b = encode(n + 1, 2);
        bool less = a.size() < b.size() || (a.size() == b.size() && a < b);
        REQUIRE(less);
    }
}

TEST_CASE("encode_tuple pads to the longest value") {
    DigitTupleAlphabet alphabet(2, 2);
    std::vector<Value> values{1, 4};
    auto w = encode_tuple(alphabet, values);
    REQUIRE(w.size() == 3);
    CHECK(alphabet.decode(w[0]) == std::vector<int>{0, 1});
    CHECK(alphabet.decode(w[2]) == std::vector<int>{1, 0});
    CHECK(encode_tuple(alphabet, values, 5).size() == 5);
}

TEST_CASE("comparators") {
    auto eq = comparator_automaton(2, Relation::eq);
    CHECK(eq.accepts({7, 7}));
    CHECK_FALSE(eq.accepts({7, 8}));
    auto lt = comparator_automaton(2, Relation::lt);
    CHECK(lt.accepts({3, 10}));
    CHECK_FALSE(lt.accepts({10, 3}));
    auto le = comparator_automaton(2, Relation::le);
    CHECK(equivalent(le, boolean_combine(lt, eq, BoolOp::disjunction)));
    CHECK(equivalent(comparator_automaton(2, Relation::ne), negate(eq)));
    CHECK(equivalent(comparator_automaton(2, Relation::ge), negate(lt)));
}

TEST_CASE("less-than is the integer order on [0, 1000]") {
    for (int base : {2, 3}) {
        auto lt = comparator_automaton(base, Relation::lt);
        autseq::testing::Gen gen(21);
        for (int trial = 0; trial < 20000; ++trial) {
            Value a = gen.value(0, 1000), b = gen.value(0, 1000);
            REQUIRE(lt.accepts({a, b}) == (a < b));
        }
        for (Value a = 0; a <= 1000; ++a) REQUIRE_FALSE(lt.accepts({a, a}));
    }
}

TEST_CASE("adder") {
    auto add = adder_automaton(2);
    CHECK(add.accepts({2, 3, 5}));
    CHECK_FALSE(add.accepts({2, 3, 6}));
    for (Value a = 0; a <= 200; ++a)
        for (Value b = 0; b <= 200; ++b) {
            REQUIRE(add.accepts({a, b, a + b}));
            REQUIRE_FALSE(add.accepts({a, b, a + b + 1}));
            if (a + b > 0) REQUIRE_FALSE(add.accepts({a, b, a + b - 1}));
        }
    auto swapped = cylindrify(add, 3, std::vector<int>{1, 0, 2});
    CHECK(equivalent(swapped, add));
    auto add3 = adder_automaton(3);
    for (Value a = 0; a <= 60; ++a)
        for (Value b = 0; b <= 60; ++b)
            for (Value c = 0; c <= 121; ++c) REQUIRE(add3.accepts({a, b, c}) == (a + b == c));
}

TEST_CASE("constants") {
    for (Value c : {0, 1, 2, 17, 1000}) {
        auto a = constant_automaton(2, c);
        for (Value n = 0; n < 1100; ++n) REQUIRE(a.accepts({n}) == (n == c));
    }
}
