#include <doctest.h>

#include <random>

#include "hypersat/eval.hpp"
#include "hypersat/ltl2nba.hpp"
#include "hypersat/parser.hpp"
#include "test_util.hpp"

using namespace hypersat;

TEST_CASE("translate: basic languages") {
    AtomSet ap({"a"});
    SymbolicNba ga = translate(parse_ltl("G a", ap), ap);
    CHECK(member_lasso(ga, {{1}, {1}}));
    CHECK(!member_lasso(ga, {{1}, {0}}));

    SymbolicNba tt = translate(parse_ltl("true", ap), ap);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        CHECK(member_lasso(tt, testutil::random_lasso(rng, 1, 3, 3)));
    }
}

TEST_CASE("translate: intro example trace property") {
    AtomSet ap({"rec", "send"});
    LtlFormula psi = parse_ltl("(!rec) U (rec & X G !rec) & G (rec <-> X send)", ap);
    SymbolicNba a = translate(psi, ap);
    const Letter rec = 1, send = 2, none = 0;
    LassoWord good{{none, rec, send}, {none}};
    LassoWord bad{{rec, rec}, {none}};
    CHECK(eval_ltl_on_lasso(psi, good, ap)); // oracle agreement first
    CHECK(member_lasso(a, good));
    CHECK(!eval_ltl_on_lasso(psi, bad, ap));
    CHECK(!member_lasso(a, bad));
}

TEST_CASE("oracle equivalence: translate vs direct lasso evaluation") {
    AtomSet ap({"a", "b"});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        LtlFormula f = testutil::random_ltl(rng, ap, 1 + rng() % 12);
        SymbolicNba a = translate(f, ap);
        LassoWord w = testutil::random_lasso(rng, 2, 4, 3);
        CHECK(member_lasso(a, w) == eval_ltl_on_lasso(f, w, ap));
    }
}

TEST_CASE("translate of a conjunction equals the product (sampled)") {
    AtomSet ap({"a", "b"});
    std::mt19937_64 rng(7);
    for (int round = 0; round < 5; ++round) {
        LtlFormula f = testutil::random_ltl(rng, ap, 1 + rng() % 6);
        LtlFormula g = testutil::random_ltl(rng, ap, 1 + rng() % 6);
        SymbolicNba both = translate(LtlFormula::make_and(f, g), ap);
        SymbolicNba prod = intersect(translate(f, ap), translate(g, ap));
        for (int i = 0; i < 200; ++i) {
            LassoWord w = testutil::random_lasso(rng, 2, 3, 2);
            CHECK(member_lasso(both, w) == member_lasso(prod, w));
        }
    }
}

TEST_CASE("degeneralize: edge cases") {
    AtomSet ap({"a", "b"});
    // Empty accepting list: all-accepting copy.
    GeneralizedNba g;
    g.atoms = ap;
    g.num_states = 1;
    g.initial = {0};
    g.edges.push_back({0, Prop::tt(), 0});
    SymbolicNba d = degeneralize(g);
    CHECK(d.accepting.size() == d.num_states);

    // Single accepting set: state count unchanged.
    g.accepting_sets.push_back({0});
    SymbolicNba d1 = degeneralize(g);
    CHECK(d1.num_states == g.num_states);

    // Two obligations: (G F a) & (G F b), language preserved on samples.
    LtlFormula f = parse_ltl("(G F a) & (G F b)", ap);
    GeneralizedNba gen = translate_generalized(f, ap);
    SymbolicNba full = degeneralize(gen);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        LassoWord w = testutil::random_lasso(rng, 2, 3, 3);
        CHECK(member_lasso(full, w) == eval_ltl_on_lasso(f, w, ap));
    }
}

TEST_CASE("state count guard") {
    AtomSet ap({"a", "b"});
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        LtlFormula f = testutil::random_ltl(rng, ap, 1 + rng() % 10);
        CHECK_NOTHROW(translate(f, ap)); // the guard never fires on valid input
    }
}

TEST_CASE("to_state_labeled: G a has a single labeled state") {
    AtomSet ap({"a"});
    StateLabeledNba sl = to_state_labeled(reduce(translate(parse_ltl("G a", ap), ap)));
    REQUIRE(sl.num_states == 1);
    CHECK(sl.labels[0] == 1);
    REQUIRE(sl.edges.size() == 1);
    CHECK(sl.edges[0].first == 0);
    CHECK(sl.edges[0].second == 0);
}

TEST_CASE("to_state_labeled: guard true expands to all letters") {
    AtomSet ap({"a", "b"});
    SymbolicNba uni = universal_nba(ap);
    StateLabeledNba sl = to_state_labeled(uni);
    CHECK(sl.num_states == 4); // one per letter
    // every state has 4 successors
    for (std::size_t q = 0; q < sl.num_states; ++q) {
        std::size_t out = 0;
        for (const auto& [s, d] : sl.edges) {
            (void)d;
            if (s == q) ++out;
        }
        CHECK(out == 4);
    }
}

TEST_CASE("to_state_labeled preserves the language (sampled)") {
    AtomSet ap({"a", "b"});
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        SymbolicNba a = testutil::random_nba(rng, ap, 2 + rng() % 3);
        StateLabeledNba sl = to_state_labeled(a);
        SymbolicNba back = sl_to_nba(sl);
        for (int j = 0; j < 200; ++j) {
            LassoWord w = testutil::random_lasso(rng, 2, 3, 2);
            CHECK(member_lasso(back, w) == member_lasso(a, w));
        }
    }
}

TEST_CASE("to_state_labeled atom cap") {
    std::vector<std::string> names;
    for (int i = 0; i < 10; ++i) names.push_back("a" + std::to_string(i));
    AtomSet big(names);
    CHECK_THROWS_AS(to_state_labeled(universal_nba(big), 8), ResourceLimitError);
}
