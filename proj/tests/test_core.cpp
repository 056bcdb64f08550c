#include "credence/act.hpp"
#include "credence/dyadic.hpp"
#include "credence/finite.hpp"
#include "credence/outcome.hpp"
#include "credence/preference.hpp"
#include "credence/rational.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace credence;

namespace {

Dyadic d(const char* s) { return Dyadic::parse(s); }

DyadicEvent iv(const char* lo, const char* hi) { return DyadicEvent::interval(d(lo), d(hi)); }

// Random union of cells at depth k, built from an arbitrary unsorted
// interval list.
DyadicEvent random_dyadic(std::mt19937_64& rng, int k) {
    std::vector<Interval> parts;
    std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t j = 0; j < n; ++j) {
        if (rng() % 2) parts.push_back({Dyadic(j, k), j + 1 == n ? Dyadic::one() : Dyadic(j + 1, k)});
    }
    std::shuffle(parts.begin(), parts.end(), rng);
    return DyadicEvent(parts);
}

bool indicator(const DyadicEvent& e, const Rational& x) {
    for (const auto& i : e.intervals()) {
        if (i.lo.to_rational() <= x && x < i.hi.to_rational()) return true;
    }
    return false;
}

}  // namespace

TEST(Rational, ParsesWireForms) {
    EXPECT_EQ(parse_rational("3/10"), Rational(3, 10));
    EXPECT_EQ(parse_rational("3/2^3"), Rational(3, 8));
    EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
    EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(to_string(ratio(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rational(2)), "2/1");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Rational, ToleranceExponent) {
    EXPECT_EQ(exponent_for_tolerance(Rational(1, 1024)), 10);
    EXPECT_EQ(exponent_for_tolerance(Rational(1, 1000)), 10);
    EXPECT_EQ(exponent_for_tolerance(Rational(1)), 0);
    EXPECT_EQ(pow2_inverse(3), Rational(1, 8));
}

TEST(Dyadic, LowestTermsAndFormat) {
    EXPECT_EQ(Dyadic(4, 3), Dyadic(1, 1));
    EXPECT_EQ(Dyadic(3, 3).to_string(), "3/2^3");
    EXPECT_EQ(Dyadic::zero().to_string(), "0/2^0");
    EXPECT_EQ(Dyadic::parse("0.375"), Dyadic(3, 3));
    EXPECT_EQ(Dyadic::parse("6/16"), Dyadic(3, 3));
    EXPECT_EQ(Dyadic::parse("3/2^3").to_rational(), Rational(3, 8));
    EXPECT_THROW(Dyadic(1, 65), Error);
    EXPECT_THROW(Dyadic(3, 1), Error);
    EXPECT_THROW(Dyadic::parse("1/3"), Error);
    EXPECT_LT(Dyadic(1, 64), Dyadic(1, 63));
    EXPECT_EQ(midpoint(Dyadic::zero(), Dyadic::one()), Dyadic(1, 1));
}

TEST(DyadicEvent, ComplementExamples) {
    EXPECT_TRUE(DyadicEvent::omega().complement().is_empty());
    EXPECT_EQ(iv("0", "1/2").complement(), iv("1/2", "1"));
}

TEST(DyadicEvent, NormalizationMerges) {
    DyadicEvent a({{d("1/2"), d("3/4")}, {d("0"), d("1/4")}, {d("1/4"), d("1/2")}});
    EXPECT_EQ(a, iv("0", "3/4"));
    EXPECT_EQ(a.intervals().size(), 1u);
    DyadicEvent overlapping({{d("0"), d("1/2")}, {d("1/4"), d("3/4")}});
    EXPECT_EQ(overlapping, iv("0", "3/4"));
    EXPECT_THROW(DyadicEvent({{d("1/2"), d("1/4")}}), Error);
}

TEST(DyadicEvent, RandomAlgebraLaws) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        auto a = random_dyadic(rng, 4), b = random_dyadic(rng, 3), c = random_dyadic(rng, 5);
        EXPECT_EQ((a | b).complement(), a.complement() & b.complement());
        EXPECT_EQ((a & b).complement(), a.complement() | b.complement());
        EXPECT_EQ(a.complement().complement(), a);
        EXPECT_EQ((a | b) | c, a | (b | c));
        EXPECT_EQ((a & b) & c, a & (b & c));
        EXPECT_EQ(a - b, a & b.complement());
        EXPECT_TRUE((a | a.complement()).is_omega());
        EXPECT_TRUE((a & a.complement()).is_empty());
        EXPECT_EQ((a | b).length() + (a & b).length(), a.length() + b.length());
        EXPECT_EQ(a.contains(a & b), true);
        EXPECT_EQ(a.disjoint(b), (a & b).is_empty());
    }
}

TEST(DyadicEvent, EqualIndicatorsNormalizeIdentically) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_dyadic(rng, 4);
        // Same set written at a finer depth with split intervals.
        std::vector<Interval> fine;
        for (const auto& i : a.intervals()) {
            Dyadic m = midpoint(i.lo, i.hi);
            fine.push_back({m, i.hi});
            fine.push_back({i.lo, m});
        }
        DyadicEvent b(fine);
        EXPECT_EQ(a, b);
        for (int j = 0; j < 32; ++j) {
            Rational x(j, 32);
            EXPECT_EQ(indicator(a, x), indicator(b, x));
        }
    }
}

TEST(DyadicEvent, ExpressionRoundTrip) {
    auto e = parse_event_expression("[0,1/4) | [1/2,3/4)");
    EXPECT_EQ(e, iv("0", "1/4") | iv("1/2", "3/4"));
    EXPECT_EQ(parse_event_expression(to_expression(e)), e);
    EXPECT_EQ(parse_event_expression("omega"), DyadicEvent::omega());
    EXPECT_TRUE(parse_event_expression("empty").is_empty());
    EXPECT_EQ(parse_event_expression("coin:HTH"), iv("2/8", "3/8"));
    EXPECT_EQ(parse_event_expression("[0,1/2) u [1/2,1)"), DyadicEvent::omega());
    EXPECT_THROW(parse_event_expression("[0,1/3)"), Error);
}

TEST(DyadicEvent, CoinPhrase) {
    EXPECT_EQ(coin_phrase(iv("2/8", "3/8")), "the first 3 flips land H,T,H");
    EXPECT_EQ(coin_phrase(iv("1/2", "1")), "the first flip lands T");
}

TEST(DyadicAlgebra, Refine) {
    DyadicAlgebra alg;
    auto r0 = alg.refine(0);
    ASSERT_EQ(r0.size(), 1u);
    EXPECT_TRUE(r0[0].is_omega());
    auto r1 = alg.refine(1);
    ASSERT_EQ(r1.size(), 2u);
    EXPECT_EQ(r1[0], iv("0", "1/2"));
    EXPECT_EQ(r1[1], iv("1/2", "1"));
    auto r3 = alg.refine(3);
    ASSERT_EQ(r3.size(), 8u);
    DyadicEvent all;
    for (const auto& c : r3) {
        EXPECT_EQ(c.length(), Rational(1, 8));
        EXPECT_TRUE(all.disjoint(c));
        all = all | c;
    }
    EXPECT_TRUE(all.is_omega());
    EXPECT_EQ(alg.cell(64, UINT64_MAX).intervals().back().hi, Dyadic::one());
    EXPECT_THROW(DyadicAlgebra(10).refine(11), Error);
    try {
        DyadicAlgebra(10).refine(11);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DepthLimit);
    }
}

TEST(FiniteAlgebra, ComplementAndLaws) {
    FiniteAlgebra alg(3);
    EXPECT_EQ(alg.event(0b101).complement(), alg.event(0b010));
    EXPECT_TRUE(alg.omega().complement().is_empty());
    for (const auto& a : alg.events()) {
        for (const auto& b : alg.events()) {
            EXPECT_EQ((a | b).complement(), a.complement() & b.complement());
            EXPECT_EQ(a.complement().complement(), a);
        }
    }
    EXPECT_THROW(alg.event(0b1000), Error);
    EXPECT_THROW(FiniteAlgebra(2).omega() | alg.omega(), Error);
}

TEST(FiniteAlgebra, EmbeddingIsAHomomorphism) {
    for (int m = 1; m <= 6; ++m) {
        FiniteAlgebra alg(m);
        EXPECT_TRUE(alg.embed(alg.omega()).is_omega());
        for (const auto& a : alg.events()) {
            EXPECT_EQ(alg.embed(a.complement()), alg.embed(a).complement());
            for (const auto& b : alg.events()) {
                EXPECT_EQ(alg.embed(a | b), alg.embed(a) | alg.embed(b));
            }
        }
    }
    FiniteAlgebra three(3);
    EXPECT_EQ(three.embed_atom(2), iv("1/2", "1"));
}

TEST(Outcomes, OrderAndMoney) {
    auto os = OutcomeSet::money_order({outcome("$0"), outcome("$1"), outcome("$1M"), outcome("$5M")});
    EXPECT_TRUE(os.strictly(outcome("$5M"), outcome("$1M")));
    EXPECT_TRUE(os.weakly(outcome("$1"), outcome("$1")));
    EXPECT_EQ(*money_value(outcome("$1M")), Rational(1000000));
    EXPECT_EQ(money(Rational(12)).id, "$12");
    EXPECT_EQ(os.strict_pairs().size(), 6u);
    auto partial = OutcomeSet({outcome("doctor"), outcome("rockstar"), outcome("nothing")},
                              {{outcome("doctor"), outcome("nothing")}, {outcome("rockstar"), outcome("nothing")}});
    EXPECT_FALSE(partial.weakly(outcome("doctor"), outcome("rockstar")));
    EXPECT_FALSE(partial.weakly(outcome("rockstar"), outcome("doctor")));
    EXPECT_THROW(OutcomeSet({outcome("a")}, {{outcome("a"), outcome("b")}}), Error);
}

TEST(Acts, ConstructionExamples) {
    FiniteAlgebra urn(std::vector<std::string>{"R", "Y", "B"});
    auto good = outcome("GOOD");
    auto c = make_act<FiniteEvent>({{urn.omega(), good}});
    EXPECT_TRUE(c.is_constant());

    auto s = OutcomeSet::money_order({outcome("$0"), outcome("$1"), outcome("$2")});
    auto bet = make_act<FiniteEvent>(
        {{urn.event({"R"}), outcome("$1")}, {urn.event({"Y"}), outcome("$2")}, {urn.event({"B"}), outcome("$0")}}, &s);
    EXPECT_EQ(bet.outcome_count(), 3u);

    try {
        make_act<FiniteEvent>({{urn.event({"R"}), outcome("$1")}, {urn.event({"R", "Y"}), outcome("$2")}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OverlappingEvents);
    }
    try {
        make_act<FiniteEvent>({{urn.event({"R"}), outcome("$1")}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonExhaustive);
    }
    try {
        make_act<FiniteEvent>({{urn.omega(), outcome("$9")}}, &s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownOutcome);
    }
}

TEST(Acts, NormalizationIsIdempotentAndOrderInsensitive) {
    FiniteAlgebra alg(4);
    std::mt19937_64 rng(3);
    std::vector<Outcome> os = {outcome("a"), outcome("b"), outcome("c")};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Part<FiniteEvent>> parts;
        for (int i = 0; i < 4; ++i) parts.push_back({alg.atom(i), os[rng() % 3]});
        parts.push_back({alg.empty(), os[rng() % 3]});
        auto act = make_act(parts);
        std::shuffle(parts.begin(), parts.end(), rng);
        EXPECT_EQ(make_act(parts), act);
        EXPECT_EQ(make_act(act.parts()), act);
        for (const auto& p : act.parts()) EXPECT_FALSE(p.event.is_empty());
    }
}

TEST(Acts, TestActCollapsesAtBounds) {
    FiniteAlgebra alg(2);
    auto b = outcome("b"), w = outcome("w");
    EXPECT_EQ(test_act(b, w, alg.omega()), constant_act(b, alg.omega()));
    EXPECT_EQ(test_act(b, w, alg.empty()), constant_act(w, alg.omega()));
    EXPECT_EQ(test_act(b, w, alg.atom(0)).event_of(b), alg.atom(0));
}

TEST(PreferenceStore, MirrorConsistent) {
    FiniteAlgebra alg(2);
    auto b = outcome("b"), w = outcome("w");
    auto f = test_act(b, w, alg.atom(0)), g = test_act(b, w, alg.atom(1));
    FiniteStore store;
    store.prefer(f, g);
    EXPECT_EQ(store.get(f, g), Judgment::LeftWeak);
    EXPECT_EQ(store.get(g, f), Judgment::RightWeak);
    EXPECT_TRUE(store.strictly(f, g));
    EXPECT_FALSE(store.weakly(g, f));
    store.set(g, f, Judgment::Incomparable);
    EXPECT_EQ(store.get(f, g), Judgment::Incomparable);
    store.set(f, g, Judgment::Unknown);
    EXPECT_EQ(store.size(), 0u);
    EXPECT_EQ(store.get(f, f), Judgment::Both);
    EXPECT_NE(Judgment::Incomparable, Judgment::Unknown);
}
