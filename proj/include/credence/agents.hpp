#pragma once

#include "credence/act.hpp"
#include "credence/finite.hpp"
#include "credence/measure.hpp"
#include "credence/oracle.hpp"
#include "credence/outcome.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace credence {

// Utility table; outcomes missing from the table fall back to their money
// value when `money_linear` is set.
struct Utility {
    std::map<Outcome, Rational> table;
    bool money_linear = true;

    // Throws Error(UnknownAct) when the outcome has no utility.
    Rational operator()(const Outcome& o) const;
};

Rational expected_utility(const DyadicAct& act, const Measure& p, const Utility& u);

enum class AgentKind {
    Eu,
    Allais,
    BirnbaumHeuristic,
    ThrillSeeker,
    Ellsberg,
    ZenMonk,
    PartialIncomparability,
    NoisyWrapper,
};

std::string_view to_string(AgentKind k);
AgentKind parse_agent_kind(std::string_view text);

struct AgentSpec {
    AgentKind kind = AgentKind::Eu;
    MeasurePtr measure;              // defaults to uniform
    std::vector<MeasurePtr> priors;  // ellsberg; defaults to the urn priors
    Utility utility;
    std::uint64_t seed = 0;

    // thrill-seeker: bonus added to every non-constant act; unset means any
    // gamble beats any sure outcome, with EU breaking ties.
    std::optional<Rational> thrill;
    // birnbaum-heuristic: acts with three or more outcomes use decision
    // weights (1 - lambda) p_i + lambda / n.
    Rational lambda = Rational(1, 2);
    // noisy-wrapper: flip probability, and whether test acts are exposed.
    Rational noise = Rational(1, 10);
    bool noise_on_test_acts = false;
    // allais: forced strict preferences (left ≻ right); empty means the
    // fixture pattern (1) ≻ (2), (4) ≻ (3).
    std::vector<std::pair<DyadicAct, DyadicAct>> overrides;
    // partial-incomparability and noisy-wrapper wrap this agent (default eu).
    std::shared_ptr<const AgentSpec> inner;
};

// Throws BadParams for malformed specs.
std::unique_ptr<Oracle> make_agent(const AgentSpec& spec);

// Exact lotteries over a shared finite algebra.
struct LotteryFixture {
    std::string name;
    FiniteAlgebra algebra;
    std::vector<Rational> masses;
    OutcomeSet outcomes;
    std::map<std::string, FiniteAct> acts;

    const FiniteAct& act(const std::string& label) const;
    MeasurePtr measure() const { return atom_measure(algebra, masses); }
    // Probability of an event under the fixture masses.
    Rational probability(const FiniteEvent& e) const;
};

LotteryFixture allais_fixture();
LotteryFixture birnbaum_fixture();
// Urn with atoms R, Y, B and the two options of the advice example. Masses
// are the illustrative (1/2, 1/4, 1/4); the advice pipeline never reads them.
LotteryFixture urn_fixture();

struct EuConsistency {
    bool feasible = false;
    std::map<Outcome, Rational> utility;  // when feasible
    Rational margin;                      // maximized, capped at 1
    std::vector<Rational> certificate;    // when infeasible: λ >= 0, Σλ = 1, Σ λ_i d_i = 0
};

// Is there u with EU(f) > EU(g) for every observed (f, g)?
EuConsistency check_eu_consistency(const LotteryFixture& fixture,
                                   const std::vector<std::pair<std::string, std::string>>& observed);

}  // namespace credence
