#include "credence/advice.hpp"
#include "credence/agents.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace credence;

namespace {

FiniteAct act_from_atoms(int atoms, const std::vector<Outcome>& pay) {
    std::map<Outcome, std::uint32_t> bits;
    for (int i = 0; i < atoms; ++i) bits[pay[i]] |= 1u << i;
    std::vector<Part<FiniteEvent>> parts;
    for (const auto& [o, b] : bits) parts.push_back({FiniteEvent(b, atoms), o});
    return make_act<FiniteEvent>(std::move(parts));
}

FiniteAct random_act(std::mt19937_64& rng, int atoms, const std::vector<Outcome>& os) {
    std::vector<Outcome> pay;
    for (int i = 0; i < atoms; ++i) pay.push_back(os[rng() % os.size()]);
    return act_from_atoms(atoms, pay);
}

std::vector<Rational> random_p(std::mt19937_64& rng, int atoms) {
    std::vector<Rational> p(atoms);
    Rational sum = 0;
    for (auto& x : p) {
        x = static_cast<long>(rng() % 5);
        sum += x;
    }
    if (sum == 0) {
        p[0] = 1;
        sum = 1;
    }
    for (auto& x : p) x /= sum;
    return p;
}

// Total or partial orders over three outcomes.
OutcomeSet random_order(std::mt19937_64& rng, const std::vector<Outcome>& os) {
    std::vector<std::pair<Outcome, Outcome>> weak;
    if (rng() % 3 == 0) {
        // o0 above o1 and o2, which are incomparable
        weak = {{os[0], os[1]}, {os[0], os[2]}};
    } else {
        std::vector<int> level(os.size());
        for (auto& l : level) l = static_cast<int>(rng() % 3);
        for (std::size_t i = 0; i < os.size(); ++i) {
            for (std::size_t j = 0; j < os.size(); ++j) {
                if (i != j && level[i] >= level[j]) weak.emplace_back(os[i], os[j]);
            }
        }
    }
    return OutcomeSet(os, weak);
}

// Direct evaluation of the defining inequalities.
Dominance brute_force(const FiniteAct& f, const FiniteAct& g, const std::vector<Rational>& p, const OutcomeSet& os) {
    int atoms = static_cast<int>(p.size());
    auto reach = [&](const FiniteAct& a, const Outcome& o) {
        Rational s = 0;
        for (int i = 0; i < atoms; ++i) {
            for (const auto& part : a.parts()) {
                if (part.event.has_atom(i) && os.weakly(part.outcome, o)) s += p[i];
            }
        }
        return s;
    };
    bool ge = true, le = true, gt = false, lt = false;
    for (const auto& o : os.outcomes()) {
        Rational a = reach(f, o), b = reach(g, o);
        ge = ge && a >= b;
        le = le && a <= b;
        gt = gt || a > b;
        lt = lt || a < b;
    }
    if (ge && le) return Dominance::Equivalent;
    if (ge) return gt ? Dominance::StrictlyDominates : Dominance::Dominates;
    if (le) return lt ? Dominance::StrictlyDominated : Dominance::Dominated;
    return Dominance::Incomparable;
}

std::vector<LabeledAct> urn_options(const LotteryFixture& urn) {
    return {{"1", urn.act("1")}, {"2", urn.act("2")}};
}

FiniteAct bet(const FiniteAlgebra& alg, const std::vector<std::string>& atoms) {
    return test_act(outcome("$1"), outcome("$0"), alg.event(atoms));
}

class ConstantOracle final : public Oracle {
public:
    explicit ConstantOracle(Judgment j) : j_(j) {}
    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override { return f == g ? Judgment::Both : j_; }
    std::string describe() const override { return "constant"; }

private:
    Judgment j_;
};

}  // namespace

TEST(Dominance, BirnbaumThresholdsExact) {
    auto fx = birnbaum_fixture();
    auto v = stochastic_dominance(fx.act("5"), fx.act("6"), fx.masses, fx.outcomes);
    EXPECT_EQ(v.relation, Dominance::StrictlyDominates);
    std::map<std::string, std::pair<Rational, Rational>> rows;
    for (const auto& r : v.profile) rows[r.threshold.id] = {*r.p_f, *r.p_g};
    EXPECT_EQ(rows["$12"], std::pair(Rational(1), Rational(1)));
    EXPECT_EQ(rows["$14"], std::pair(Rational(19, 20), Rational(9, 10)));
    EXPECT_EQ(rows["$90"], std::pair(Rational(9, 10), Rational(9, 10)));
    EXPECT_EQ(rows["$96"], std::pair(Rational(9, 10), Rational(17, 20)));
    EXPECT_EQ(v.tight, (std::vector<Outcome>{outcome("$12"), outcome("$90")}));
    EXPECT_EQ(v.strict, (std::vector<Outcome>{outcome("$14"), outcome("$96")}));
    EXPECT_TRUE(v.violated.empty());
    EXPECT_EQ(stochastic_dominance(fx.act("6"), fx.act("5"), fx.masses, fx.outcomes).relation,
              Dominance::StrictlyDominated);
}

TEST(Dominance, ActAgainstItselfIsEquivalent) {
    auto fx = birnbaum_fixture();
    auto v = stochastic_dominance(fx.act("6"), fx.act("6"), fx.masses, fx.outcomes);
    EXPECT_EQ(v.relation, Dominance::Equivalent);
    EXPECT_EQ(v.tight.size(), fx.outcomes.outcomes().size());
}

TEST(Dominance, MatchesBruteForceOnRandomInstances) {
    std::mt19937_64 rng(7);
    std::vector<Outcome> os{outcome("a"), outcome("b"), outcome("c")};
    for (int t = 0; t < 500; ++t) {
        auto order = random_order(rng, os);
        auto p = random_p(rng, 4);
        auto f = random_act(rng, 4, os), g = random_act(rng, 4, os);
        auto v = stochastic_dominance(f, g, p, order);
        ASSERT_EQ(v.relation, brute_force(f, g, p, order)) << "instance " << t;
        EXPECT_EQ(stochastic_dominance(g, f, p, order).relation, mirror(v.relation));
        if (v.relation == Dominance::StrictlyDominates) EXPECT_FALSE(v.strict.empty());
    }
}

TEST(Dominance, ReflexiveAndTransitive) {
    std::mt19937_64 rng(21);
    std::vector<Outcome> os{outcome("a"), outcome("b"), outcome("c")};
    int chains = 0;
    for (int t = 0; t < 300; ++t) {
        auto order = random_order(rng, os);
        auto p = random_p(rng, 4);
        std::vector<FiniteAct> acts;
        for (int i = 0; i < 4; ++i) acts.push_back(random_act(rng, 4, os));
        for (const auto& f : acts) {
            EXPECT_TRUE(dominates(stochastic_dominance(f, f, p, order).relation));
            for (const auto& g : acts) {
                for (const auto& h : acts) {
                    if (dominates(stochastic_dominance(f, g, p, order).relation) &&
                        dominates(stochastic_dominance(g, h, p, order).relation)) {
                        ++chains;
                        EXPECT_TRUE(dominates(stochastic_dominance(f, h, p, order).relation));
                    }
                }
            }
        }
    }
    EXPECT_GT(chains, 1000);
}

TEST(Dominance, RelabelingByOrderIsomorphism) {
    std::mt19937_64 rng(5);
    std::vector<Outcome> money{outcome("$0"), outcome("$5"), outcome("$9")};
    std::vector<Outcome> named{outcome("bad"), outcome("fair"), outcome("good")};
    auto by_money = OutcomeSet::money_order(money);
    auto by_name = OutcomeSet::from_ranking({{named[2]}, {named[1]}, {named[0]}});
    for (int t = 0; t < 200; ++t) {
        std::vector<std::size_t> pay_f(4), pay_g(4);
        for (auto& x : pay_f) x = rng() % 3;
        for (auto& x : pay_g) x = rng() % 3;
        auto build = [&](const std::vector<std::size_t>& pay, const std::vector<Outcome>& os) {
            std::vector<Outcome> out;
            for (auto i : pay) out.push_back(os[i]);
            return act_from_atoms(4, out);
        };
        auto p = random_p(rng, 4);
        EXPECT_EQ(stochastic_dominance(build(pay_f, money), build(pay_g, money), p, by_money).relation,
                  stochastic_dominance(build(pay_f, named), build(pay_g, named), p, by_name).relation);
    }
}

TEST(Dominance, MutualDominanceMeansEqualProfiles) {
    std::mt19937_64 rng(9);
    auto os = std::vector<Outcome>{outcome("$0"), outcome("$1"), outcome("$2")};
    auto order = OutcomeSet::money_order(os);
    int equal = 0;
    for (int t = 0; t < 400; ++t) {
        auto p = random_p(rng, 4);
        auto f = random_act(rng, 4, os), g = random_act(rng, 4, os);
        auto fg = stochastic_dominance(f, g, p, order), gf = stochastic_dominance(g, f, p, order);
        bool both = dominates(fg.relation) && dominates(gf.relation);
        bool same = true;
        for (std::size_t i = 0; i < fg.profile.size(); ++i) same = same && *fg.profile[i].p_f == *fg.profile[i].p_g;
        EXPECT_EQ(both, same);
        equal += same;
    }
    EXPECT_GT(equal, 0);
}

TEST(Dominance, IncomparableOutcomesAddNothing) {
    FiniteAlgebra alg(2);
    auto hi = outcome("hi"), x = outcome("x"), y = outcome("y");
    OutcomeSet order({hi, x, y}, {{hi, x}, {hi, y}});
    auto f = make_act<FiniteEvent>({{alg.atom(0), hi}, {alg.atom(1), x}});
    auto g = make_act<FiniteEvent>({{alg.atom(0), hi}, {alg.atom(1), y}});
    auto v = stochastic_dominance(f, g, {Rational(1, 2), Rational(1, 2)}, order);
    EXPECT_EQ(v.relation, Dominance::Incomparable);
    for (const auto& r : v.profile) {
        // g's y on the second atom counts toward neither x nor anything but y.
        if (r.threshold == x) EXPECT_EQ(*r.p_g, Rational(1, 2));
        if (r.threshold == y) EXPECT_EQ(*r.p_f, Rational(1, 2));
    }
}

TEST(Dominance, Errors) {
    auto fx = birnbaum_fixture();
    auto missing = [](const FiniteEvent& e) -> std::optional<Rational> {
        if (e.is_omega()) return Rational(1);
        return std::nullopt;
    };
    try {
        stochastic_dominance(fx.act("5"), fx.act("6"), EventProbability(missing), fx.outcomes);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingProbability);
    }
    auto narrow = OutcomeSet::money_order({outcome("$12"), outcome("$14")});
    try {
        stochastic_dominance(fx.act("5"), fx.act("6"), fx.masses, narrow);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownOutcome);
    }
}

TEST(Advice, UrnFromSingleElicitedPreference) {
    auto urn = urn_fixture();
    FiniteStore store;
    store.prefer(bet(urn.algebra, {"R"}), bet(urn.algebra, {"B"}));
    auto report = advise(urn_options(urn), store, urn.outcomes, urn.algebra);
    EXPECT_EQ(report.mode, "comparative");
    EXPECT_EQ(report.recommended, std::vector<std::string>{"1"});
    ASSERT_EQ(report.options.size(), 2u);
    EXPECT_FALSE(report.options[0].dominated);
    EXPECT_TRUE(report.options[1].dominated);
    EXPECT_EQ(report.options[1].dominated_by, "1");
    EXPECT_EQ(report.options[1].witness, outcome("$1"));
    ASSERT_EQ(report.pairs.size(), 1u);
    EXPECT_EQ(report.pairs[0].verdict.relation, Dominance::StrictlyDominates);
    const auto& chain = report.pairs[0].inferences;
    auto ry = urn.algebra.event({"R", "Y"}), by = urn.algebra.event({"B", "Y"});
    bool elicited = false, added = false;
    for (const auto& step : chain) {
        if (step.rule == "elicited" && step.x == urn.algebra.event({"R"}) && step.y == urn.algebra.event({"B"}) &&
            step.relation == Comparison::Greater) {
            elicited = true;
        }
        if (step.rule == "alternative-prize" && step.x == ry && step.y == by && step.relation == Comparison::Greater &&
            step.common == urn.algebra.event({"Y"})) {
            added = elicited;
        }
    }
    EXPECT_TRUE(added);
    ASSERT_TRUE(report.diagnosis);
    EXPECT_TRUE(report.diagnosis->all_hold());
}

TEST(Advice, UrnWithoutAnyJudgmentStaysUndecided) {
    auto urn = urn_fixture();
    auto report = advise(urn_options(urn), FiniteStore{}, urn.outcomes, urn.algebra);
    EXPECT_TRUE(report.recommended.empty());
    EXPECT_EQ(report.pairs[0].verdict.relation, Dominance::Incomparable);
    EXPECT_EQ(report.note, "no dominance relation among the options");
}

TEST(Advice, SingletonHasNoFlags) {
    auto urn = urn_fixture();
    auto report = advise({{"1", urn.act("1")}}, urn.masses, urn.outcomes);
    EXPECT_FALSE(report.options[0].dominated);
    EXPECT_TRUE(report.recommended.empty());
    EXPECT_TRUE(report.pairs.empty());
    EXPECT_EQ(report.note, "no dominance relation among the options");
}

TEST(Advice, CrossingUpperSetsGiveNoRecommendation) {
    // f pays $2 on a, $0 elsewhere; g pays $1 on a and b. P(f >= $2) = 1/3 > 0
    // while P(f >= $1) = 1/3 < 2/3.
    FiniteAlgebra alg(std::vector<std::string>{"a", "b", "c"});
    auto order = OutcomeSet::money_order({outcome("$0"), outcome("$1"), outcome("$2")});
    auto f = act_from_atoms(3, {outcome("$2"), outcome("$0"), outcome("$0")});
    auto g = act_from_atoms(3, {outcome("$1"), outcome("$1"), outcome("$0")});
    std::vector<Rational> p{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    auto report = advise({{"f", f}, {"g", g}}, p, order);
    EXPECT_EQ(report.mode, "probability");
    EXPECT_EQ(report.pairs[0].verdict.relation, Dominance::Incomparable);
    EXPECT_TRUE(report.recommended.empty());
    EXPECT_EQ(report.note, "no dominance relation among the options");
}

TEST(Advice, FlagsCarryWitnesses) {
    std::mt19937_64 rng(3);
    auto os = std::vector<Outcome>{outcome("$0"), outcome("$1"), outcome("$2")};
    auto order = OutcomeSet::money_order(os);
    int flagged = 0;
    for (int t = 0; t < 100; ++t) {
        auto p = random_p(rng, 4);
        std::vector<LabeledAct> options;
        for (int i = 0; i < 4; ++i) options.push_back({"o" + std::to_string(i), random_act(rng, 4, os)});
        auto report = advise(options, p, order);
        for (std::size_t i = 0; i < options.size(); ++i) {
            const auto& o = report.options[i];
            if (!o.dominated) continue;
            ++flagged;
            ASSERT_TRUE(o.witness && o.dominated_by);
            const auto& winner =
                std::find_if(options.begin(), options.end(), [&](const auto& x) { return x.label == *o.dominated_by; })
                    ->act;
            auto v = stochastic_dominance(winner, options[i].act, p, order);
            EXPECT_EQ(v.relation, Dominance::StrictlyDominates);
            EXPECT_NE(std::find(v.strict.begin(), v.strict.end(), *o.witness), v.strict.end());
        }
        for (const auto& label : report.recommended) {
            auto it = std::find_if(report.options.begin(), report.options.end(),
                                   [&](const auto& x) { return x.label == label; });
            EXPECT_FALSE(it->dominated);
        }
    }
    EXPECT_GT(flagged, 0);
}

TEST(Advice, FullElicitationMatchesNumericVerdicts) {
    std::mt19937_64 rng(17);
    FiniteAlgebra alg(3);
    auto os = std::vector<Outcome>{outcome("$0"), outcome("$1"), outcome("$2")};
    auto order = OutcomeSet::money_order(os);
    for (int t = 0; t < 20; ++t) {
        auto p = random_p(rng, 3);
        AgentSpec spec;
        spec.measure = atom_measure(alg, p);
        auto agent = make_agent(spec);
        std::vector<LabeledAct> options;
        for (int i = 0; i < 3; ++i) options.push_back({"o" + std::to_string(i), random_act(rng, 3, os)});
        auto numeric = advise(options, p, order);
        auto full = advise(options, populate_store(*agent, order, alg), order, alg);
        auto asked = advise(options, *agent, order, alg);
        for (std::size_t k = 0; k < numeric.pairs.size(); ++k) {
            EXPECT_EQ(full.pairs[k].verdict.relation, numeric.pairs[k].verdict.relation);
            EXPECT_EQ(asked.pairs[k].verdict.relation, numeric.pairs[k].verdict.relation);
        }
        EXPECT_EQ(full.recommended, numeric.recommended);
        EXPECT_EQ(asked.recommended, numeric.recommended);
    }
}

TEST(Advice, OracleModeOnUrn) {
    auto urn = urn_fixture();
    AgentSpec spec;
    spec.measure = urn.measure();
    auto agent = make_agent(spec);
    auto report = advise(urn_options(urn), *agent, urn.outcomes, urn.algebra);
    EXPECT_EQ(report.recommended, std::vector<std::string>{"1"});
}

TEST(Advice, AlternativePrizeViolationFailsElicitation) {
    auto urn = urn_fixture();
    FiniteStore store;
    store.prefer(bet(urn.algebra, {"R"}), bet(urn.algebra, {"B"}));
    store.prefer(bet(urn.algebra, {"B", "Y"}), bet(urn.algebra, {"R", "Y"}));
    try {
        advise(urn_options(urn), store, urn.outcomes, urn.algebra);
        FAIL();
    } catch (const AdviceError& e) {
        EXPECT_EQ(e.code(), ErrorCode::ElicitationFailed);
        ASSERT_TRUE(e.partial().diagnosis);
        const auto& ap = (*e.partial().diagnosis)[Axiom::AlternativePrize];
        EXPECT_EQ(ap.verdict, Verdict::Fail);
        ASSERT_TRUE(ap.witness);
        EXPECT_EQ(ap.witness->judgments.size(), 2u);
        EXPECT_EQ(e.partial().options.size(), 2u);
        EXPECT_TRUE(e.partial().recommended.empty());
    }
}

TEST(Advice, CycleAndSubsetPreferenceAreDiagnosed) {
    auto urn = urn_fixture();
    FiniteStore cycle;
    cycle.prefer(bet(urn.algebra, {"R"}), bet(urn.algebra, {"B"}));
    cycle.prefer(bet(urn.algebra, {"B"}), bet(urn.algebra, {"Y"}));
    cycle.prefer(bet(urn.algebra, {"Y"}), bet(urn.algebra, {"R"}));
    try {
        advise(urn_options(urn), cycle, urn.outcomes, urn.algebra);
        FAIL();
    } catch (const AdviceError& e) {
        const auto& ro = (*e.partial().diagnosis)[Axiom::RestrictedOrdering];
        EXPECT_EQ(ro.verdict, Verdict::Fail);
        EXPECT_EQ(ro.witness->judgments.size(), 3u);
    }
    FiniteStore subset;
    subset.prefer(bet(urn.algebra, {"R"}), bet(urn.algebra, {"R", "B"}));
    try {
        advise(urn_options(urn), subset, urn.outcomes, urn.algebra);
        FAIL();
    } catch (const AdviceError& e) {
        EXPECT_EQ((*e.partial().diagnosis)[Axiom::CertainPrize].verdict, Verdict::Fail);
    }
}

TEST(Advice, IncomparableAnswersFailElicitation) {
    auto urn = urn_fixture();
    ConstantOracle oracle(Judgment::Incomparable);
    try {
        advise(urn_options(urn), oracle, urn.outcomes, urn.algebra);
        FAIL();
    } catch (const AdviceError& e) {
        EXPECT_EQ((*e.partial().diagnosis)[Axiom::RestrictedOrdering].verdict, Verdict::Fail);
    }
}

TEST(Advice, BadOptions) {
    auto urn = urn_fixture();
    EXPECT_THROW(advise({}, urn.masses, urn.outcomes), Error);
    EXPECT_THROW(advise({{"1", urn.act("1")}, {"1", urn.act("2")}}, urn.masses, urn.outcomes), Error);
}
