#include "credence/agents.hpp"
#include "credence/representation.hpp"

#include "support/random_prefs.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace credence;

namespace {

DyadicEvent iv(const char* lo, const char* hi) { return DyadicEvent::interval(Dyadic::parse(lo), Dyadic::parse(hi)); }

std::unique_ptr<Oracle> eu_agent(MeasurePtr m) {
    AgentSpec s;
    s.measure = std::move(m);
    return make_agent(s);
}

MeasurePtr rain_measure() { return piecewise_measure({{0, 0}, {Rational(1, 2), Rational(3, 10)}, {1, 1}}); }

void expect_represents(const ComparativeOrder& order, const FiniteRepresentation& rep) {
    Rational sum = 0;
    for (const auto& p : rep.p) {
        EXPECT_GE(p, 0);
        sum += p;
    }
    EXPECT_EQ(sum, 1);
    for (const auto& x : order.algebra().events()) {
        for (const auto& y : order.algebra().events()) {
            Rational d = rep.probability(x) - rep.probability(y);
            ASSERT_EQ(d >= 0, order.weak(x, y));
            if (order.strict(x, y)) ASSERT_GE(d, rep.margin);
        }
    }
}

// Every probability vector with denominator `den`.
void for_each_grid_point(int atoms, int den, const std::function<void(const std::vector<Rational>&)>& visit) {
    std::vector<int> parts(atoms, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == atoms - 1) {
            parts[i] = left;
            std::vector<Rational> p;
            for (int v : parts) p.push_back(ratio(v, den));
            visit(p);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            parts[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, den);
}

Rational mass_of(const std::vector<Rational>& p, const FiniteEvent& e) { return credence::testing::event_mass(p, e); }

class ScriptedOracle final : public Oracle {
public:
    explicit ScriptedOracle(std::function<Judgment(const DyadicAct&, const DyadicAct&)> f) : f_(std::move(f)) {}
    Judgment compare(const DyadicAct& a, const DyadicAct& b) const override { return f_(a, b); }
    std::string describe() const override { return "scripted"; }

private:
    std::function<Judgment(const DyadicAct&, const DyadicAct&)> f_;
};

}  // namespace

TEST(RepresentFinite, SymmetricTwoAtoms) {
    FiniteAlgebra alg(2);
    auto order = ComparativeOrder::from_masses(alg, {Rational(1, 2), Rational(1, 2)});
    auto rep = represent_finite(order);
    EXPECT_EQ(rep.p, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
    EXPECT_TRUE(rep.unique);
    EXPECT_GT(rep.margin, 0);
}

TEST(RepresentFinite, HalvingMassesAreRecoveredExactly) {
    FiniteAlgebra alg(4);
    std::vector<Rational> hidden{Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)};
    auto order = ComparativeOrder::from_masses(alg, hidden);
    auto rep = represent_finite(order);
    expect_represents(order, rep);
    // The ties c ≈ d, b ≈ c ∪ d, a ≈ b ∪ c ∪ d pin every atom.
    EXPECT_TRUE(rep.unique);
    EXPECT_EQ(rep.p, hidden);
}

TEST(RepresentFinite, GenericMassesAreNotPinned) {
    FiniteAlgebra alg(4);
    auto order = ComparativeOrder::from_masses(alg, {Rational(1, 15), Rational(2, 15), Rational(4, 15), Rational(8, 15)});
    auto rep = represent_finite(order);
    expect_represents(order, rep);
    EXPECT_FALSE(rep.unique);
}

TEST(RepresentFinite, SoundOnRandomMeasureOrders) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteAlgebra alg(1 + static_cast<int>(rng() % 5));
        auto hidden = credence::testing::random_masses(rng, alg.atoms());
        auto order = ComparativeOrder::from_masses(alg, hidden);
        // Every order induced by a probability is qualitative.
        ASSERT_TRUE(check_qualitative_probability(order).all_hold());
        expect_represents(order, represent_finite(order));
    }
}

TEST(RepresentFinite, RejectsNonQualitativeOrders) {
    FiniteAlgebra alg(2);
    ComparativeOrder order(alg);
    for (const auto& x : alg.events()) {
        for (const auto& y : alg.events()) order.set(x, y, true);
    }
    try {
        represent_finite(order);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotQualitative);
    }
}

TEST(RepresentFinite, ChainConstraintsImplyTheWholeOrder) {
    FiniteAlgebra alg(3);
    auto order = ComparativeOrder::from_masses(alg, {Rational(1, 6), Rational(1, 3), Rational(1, 2)});
    auto chain = chain_constraints(order);
    EXPECT_EQ(chain.size(), 7u);
    for (const auto& c : chain) EXPECT_EQ(order.strict(c.x, c.y), c.strict);
}

TEST(Kraft, QualitativeButNotRepresentable) {
    auto found = find_kraft_gap();
    ASSERT_TRUE(found.has_value());
    const auto& order = found->order;
    EXPECT_EQ(order.algebra().atoms(), 5);
    EXPECT_TRUE(check_qualitative_probability(order).all_hold());
    try {
        represent_finite(order);
        FAIL();
    } catch (const NotRepresentableError& e) {
        EXPECT_EQ(e.conflict(), found->conflict);
    }
    const auto& conflict = found->conflict;
    ASSERT_FALSE(conflict.empty());
    EXPECT_EQ(representation_margin(5, conflict), Rational(0));
    for (std::size_t i = 0; i < conflict.size(); ++i) {
        const auto& c = conflict[i];
        EXPECT_EQ(order.strict(c.x, c.y), c.strict);
        auto fewer = conflict;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
        EXPECT_GT(*representation_margin(5, fewer), 0) << "constraint " << i << " is redundant";
    }
    // No grid probability satisfies the conflict.
    for (int den = 1; den <= 24; ++den) {
        for_each_grid_point(5, den, [&](const std::vector<Rational>& p) {
            bool all = true;
            for (const auto& c : conflict) {
                Rational d = mass_of(p, c.x) - mass_of(p, c.y);
                all = all && (c.strict ? d > 0 : d == 0);
            }
            ASSERT_FALSE(all);
        });
    }
}

TEST(Ladder, UniformCellsAreDyadicEighths) {
    auto agent = eu_agent(uniform_measure());
    auto ladder = build_equiprobable_partition(*agent, 3);
    ASSERT_EQ(ladder.cells.size(), 8u);
    for (std::uint64_t i = 0; i < 8; ++i) {
        EXPECT_EQ(ladder.cells[i], DyadicEvent::interval(Dyadic(i, 3), Dyadic(i + 1, 3)));
        EXPECT_EQ(ladder.slack[i], 0);
    }
    EXPECT_EQ(ladder.log.size(), 7u);
}

TEST(Ladder, SquareLawMedianBracketedToResolution) {
    auto agent = eu_agent(power_measure(2));
    auto ladder = build_equiprobable_partition(*agent, 1);
    Rational t = ladder.boundaries[1].to_rational();
    Rational below = t - pow2_inverse(40);
    EXPECT_GT(t * t, Rational(1, 2));
    EXPECT_LT(below * below, Rational(1, 2));
    EXPECT_LE(ladder.boundaries[1].exponent(), 40);
    EXPECT_EQ(ladder.slack[1], pow2_inverse(40));

    LadderOptions lower;
    lower.tie_break = TieBreak::Lower;
    auto other = build_equiprobable_partition(*agent, 1, lower);
    EXPECT_EQ(other.boundaries[1].to_rational(), below);
}

TEST(Ladder, DepthZeroAsksNothing) {
    auto agent = eu_agent(power_measure(3));
    auto ladder = build_equiprobable_partition(*agent, 0);
    ASSERT_EQ(ladder.cells.size(), 1u);
    EXPECT_TRUE(ladder.cells[0].is_omega());
    EXPECT_TRUE(ladder.log.empty());
}

TEST(Ladder, AtomMakesMedianImpossible) {
    auto agent = eu_agent(charge_measure(uniform_measure(), Dyadic(1, 1), Rational(1, 2)));
    try {
        build_equiprobable_partition(*agent, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoMedianFound);
    }
}

TEST(Ladder, IncomparableAnswersAbort) {
    ScriptedOracle shrug([](const DyadicAct&, const DyadicAct&) { return Judgment::Incomparable; });
    try {
        build_equiprobable_partition(shrug, 1);
        FAIL();
    } catch (const InconsistentAnswersError& e) {
        EXPECT_EQ(e.code(), ErrorCode::InconsistentAnswers);
        EXPECT_EQ(e.witness().size(), 1u);
    }
}

TEST(Ladder, PreferringSubsetsAborts) {
    // Strictly prefers the bet on the smaller event.
    ScriptedOracle contrarian([](const DyadicAct& a, const DyadicAct& b) {
        Rational la = a.event_of(outcome("$1")).length(), lb = b.event_of(outcome("$1")).length();
        return la < lb ? Judgment::LeftWeak : la > lb ? Judgment::RightWeak : Judgment::Both;
    });
    OracleChannel channel(contrarian);
    Ladder ladder(channel);
    EXPECT_THROW(measure_trace(ladder, iv("0", "1/2"), 2), InconsistentAnswersError);
}

TEST(KOf, UniformDyadicEventIsExact) {
    auto agent = eu_agent(uniform_measure());
    auto ladder = build_equiprobable_partition(*agent, 3);
    auto b = k_of(iv("0", "3/8"), ladder, *agent);
    EXPECT_EQ(b.k, 3u);
    EXPECT_EQ(b.lo, Rational(3, 8));
    EXPECT_EQ(b.hi, Rational(1, 2));
    EXPECT_EQ(b.estimate, Rational(3, 8));
}

TEST(KOf, ThreeTenthsAtEightCells) {
    auto agent = eu_agent(rain_measure());
    auto ladder = build_equiprobable_partition(*agent, 3);
    auto b = k_of(iv("0", "1/2"), ladder, *agent);
    EXPECT_EQ(b.k, 2u);
    EXPECT_EQ(b.lo, Rational(1, 4));
    EXPECT_EQ(b.hi, Rational(3, 8));
}

TEST(KOf, OmegaAndEmpty) {
    auto agent = eu_agent(power_measure(2));
    auto ladder = build_equiprobable_partition(*agent, 2);
    auto all = k_of(DyadicEvent::omega(), ladder, *agent);
    EXPECT_EQ(all.k, 4u);
    EXPECT_EQ(all.estimate, 1);
    EXPECT_EQ(all.hi, 1);
    auto none = k_of(DyadicEvent::empty(), ladder, *agent);
    EXPECT_EQ(none.k, 0u);
    EXPECT_EQ(none.hi, Rational(1, 4));
}

TEST(KOf, AgreesWithLazyMeasurementAndIsMonotone) {
    std::mt19937_64 rng(12);
    auto agent = eu_agent(piecewise_measure({{0, 0}, {Rational(1, 3), Rational(1, 2)}, {1, 1}}));
    auto ladder = build_equiprobable_partition(*agent, 5);
    OracleChannel channel(*agent);
    Ladder lazy(channel);
    DyadicAlgebra alg;
    for (int trial = 0; trial < 30; ++trial) {
        DyadicEvent x, bigger;
        for (int j = 0; j < 16; ++j) {
            auto c = alg.cell(4, static_cast<std::uint64_t>(j));
            int r = static_cast<int>(rng() % 3);
            if (r == 0) x = x | c;
            if (r != 2) bigger = bigger | c;
        }
        bigger = bigger | x;
        auto direct = k_of(x, ladder, *agent);
        EXPECT_EQ(direct.k, measure_trace(lazy, x, 5).back().k);
        EXPECT_LE(direct.k, k_of(bigger, ladder, *agent).k);
    }
}

TEST(Measure, RainExampleHeadline) {
    auto agent = eu_agent(rain_measure());
    std::vector<ProbabilityBracket> trace;
    auto b = measure_probability(*agent, iv("0", "1/2"), Rational(1, 1024), {}, &trace);
    EXPECT_EQ(b.n, 1024u);
    EXPECT_EQ(b.hi - b.lo, Rational(1, 1024));
    EXPECT_LE(b.lo, Rational(3, 10));
    EXPECT_GE(b.hi, Rational(3, 10));
    EXPECT_LE(abs(b.estimate - Rational(3, 10)), Rational(1, 1024));
    EXPECT_EQ(trace.size(), 11u);
    EXPECT_LT(b.slack, Rational(1, 1 << 20));
}

TEST(Measure, EmptyEventGivesFirstCell) {
    auto agent = eu_agent(uniform_measure());
    auto b = measure_probability(*agent, DyadicEvent::empty(), Rational(1, 16));
    EXPECT_EQ(b.estimate, 0);
    EXPECT_EQ(b.hi, Rational(1, 16));
}

TEST(Measure, ToleranceBounds) {
    EXPECT_EQ(depth_for_tolerance(Rational(1, 1024)), 10);
    EXPECT_EQ(depth_for_tolerance(Rational(1, 1000)), 10);
    EXPECT_THROW(depth_for_tolerance(0), Error);
    EXPECT_THROW(depth_for_tolerance(pow2_inverse(31)), Error);
}

TEST(Measure, ConvergesAndNestsOnRandomMeasures) {
    std::mt19937_64 rng(40);
    DyadicAlgebra alg;
    for (int trial = 0; trial < 6; ++trial) {
        MeasurePtr m = trial % 3 == 0 ? uniform_measure()
                     : trial % 3 == 1 ? power_measure(2)
                                      : piecewise_measure({{0, 0}, {Rational(1, 4), Rational(1, 10)}, {Rational(3, 4), Rational(4, 5)}, {1, 1}});
        auto agent = eu_agent(m);
        OracleChannel channel(*agent);
        Ladder ladder(channel);
        for (int e = 0; e < 5; ++e) {
            DyadicEvent x;
            for (int j = 0; j < 32; ++j) {
                if (rng() % 2) x = x | alg.cell(5, static_cast<std::uint64_t>(j));
            }
            auto trace = measure_trace(ladder, x, 8);
            Rational q = m->mass(x);
            for (std::size_t d = 0; d < trace.size(); ++d) {
                const auto& b = trace[d];
                EXPECT_LE(abs(b.estimate - q), Rational(1, static_cast<long>(b.n)));
                if (d > 0) {
                    EXPECT_GE(b.lo, trace[d - 1].lo);
                    EXPECT_LE(b.hi, trace[d - 1].hi);
                }
            }
        }
    }
}

TEST(Measure, TieBreaksAgreeWithinTwoCells) {
    auto agent = eu_agent(power_measure(2));
    LadderOptions lower;
    lower.tie_break = TieBreak::Lower;
    for (auto x : {iv("0", "1/2"), iv("1/4", "3/4"), iv("1/8", "7/8"), iv("3/4", "1")}) {
        auto a = measure_probability(*agent, x, Rational(1, 256));
        auto b = measure_probability(*agent, x, Rational(1, 256), lower);
        EXPECT_LE(abs(a.estimate - b.estimate), Rational(2, 256));
    }
}

TEST(Measure, AgreesWithRamseyIndifference) {
    auto m = piecewise_measure({{0, 0}, {Rational(1, 2), Rational(2, 5)}, {1, 1}});
    auto agent = eu_agent(m);
    for (auto x : {iv("0", "1/2"), iv("1/4", "1"), iv("1/8", "3/8")}) {
        Rational q = m->mass(x);
        // Sure amount the agent finds exactly as good as the bet.
        auto bet = test_act(outcome("$1"), outcome("$0"), x);
        ASSERT_EQ(agent->compare(constant_act(money(q), DyadicEvent::omega()), bet), Judgment::Both);
        Rational ramsey = ramsey_estimate(1, q, 0);
        auto b = measure_probability(*agent, x, Rational(1, 512));
        EXPECT_LE(abs(b.estimate - ramsey), Rational(1, 512) + b.slack);
    }
}

TEST(Measure, TraceCsv) {
    auto agent = eu_agent(uniform_measure());
    std::vector<ProbabilityBracket> trace;
    measure_probability(*agent, iv("0", "3/4"), Rational(1, 2), {}, &trace);
    EXPECT_EQ(trace_csv(trace), "m,n,k,lo,hi\n0,1,0,0/1,1/1\n1,2,1,1/2,1/1\n");
}

TEST(EventRichness, FiniteNontrivialOrdersFailAtTheLeastEvent) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        FiniteAlgebra alg(1 + static_cast<int>(rng() % 4));
        auto order = ComparativeOrder::from_masses(alg, credence::testing::random_masses(rng, alg.atoms()));
        auto r = check_event_richness(order);
        ASSERT_EQ(r.verdict, Verdict::Fail);
        ASSERT_TRUE(r.minimal);
        auto [x, z] = *r.witness;
        EXPECT_TRUE(z.is_empty());
        EXPECT_TRUE(order.strict(x, z));
        for (const auto& y : alg.events()) {
            EXPECT_FALSE(order.strict(x, y) && order.strict(y, alg.empty()));
        }
    }
}

TEST(EventRichness, TrivialOrderIsVacuous) {
    FiniteAlgebra alg(3);
    ComparativeOrder order(alg);
    for (const auto& x : alg.events()) {
        for (const auto& y : alg.events()) order.set(x, y, true);
    }
    EXPECT_EQ(check_event_richness(order).verdict, Verdict::Vacuous);
}

TEST(EventRichness, UniformDyadicPair) {
    auto agent = eu_agent(uniform_measure());
    std::vector<std::pair<DyadicEvent, DyadicEvent>> pairs{{iv("0", "1/2"), iv("0", "1/4")}};
    auto shallow = check_event_richness(*agent, pairs, 4);
    EXPECT_EQ(shallow.verdict, Verdict::Pass);
    EXPECT_EQ(shallow.depth, 3);
    auto sixteen = check_event_richness(*agent, pairs, 4, {}, 4);
    EXPECT_EQ(sixteen.verdict, Verdict::Pass);
    EXPECT_EQ(sixteen.depth, 4);
    auto coarse = check_event_richness(*agent, pairs, 2);
    EXPECT_EQ(coarse.verdict, Verdict::Fail);
    EXPECT_EQ(coarse.pairs[0].failing_cell, iv("1/4", "1/2"));
    std::vector<std::pair<DyadicEvent, DyadicEvent>> reversed{{iv("0", "1/4"), iv("0", "1/2")}};
    EXPECT_EQ(check_event_richness(*agent, reversed, 3).verdict, Verdict::Vacuous);
    EXPECT_THROW(check_event_richness(*agent, pairs, kMaxRichnessDepth + 1), Error);
}

TEST(Mpc, CountablyAdditiveChainPasses) {
    auto agent = eu_agent(uniform_measure());
    auto chain = truncation_chain(iv("0", "1/2"), 20);
    EXPECT_EQ(chain.events[0], iv("0", "1/4"));
    EXPECT_EQ(chain.events[2], iv("0", "7/16"));
    auto r = check_mpc(*agent, {chain}, {iv("1/2", "1")});
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.triggered, 1u);
}

TEST(Mpc, ChargeViolatesContinuity) {
    auto agent = eu_agent(charge_measure(uniform_measure(), Dyadic(1, 1), Rational(1, 4)));
    auto chain = truncation_chain(iv("0", "1/2"), 20);
    auto r = check_mpc(*agent, {chain}, {iv("1/2", "1")});
    EXPECT_EQ(r.verdict, Verdict::Fail);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->probe, iv("1/2", "1"));
    EXPECT_EQ(r.witness->events.limit, iv("0", "1/2"));
}

TEST(Mpc, EmptyChainListIsVacuous) {
    auto agent = eu_agent(uniform_measure());
    EXPECT_EQ(check_mpc(*agent, {}, {iv("0", "1")}).verdict, Verdict::Vacuous);
}
