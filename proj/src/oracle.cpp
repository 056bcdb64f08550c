#include "credence/oracle.hpp"

namespace credence {

Judgment BudgetedOracle::compare(const DyadicAct& f, const DyadicAct& g) const {
    if (used_ >= budget_) throw Error(ErrorCode::QueryBudgetExceeded, "query budget of " + std::to_string(budget_) + " spent");
    ++used_;
    return inner_.compare(f, g);
}

OutcomeSet induced_outcomes(const Oracle& oracle, const std::vector<Outcome>& outcomes) {
    std::vector<std::pair<Outcome, Outcome>> weak;
    auto omega = DyadicEvent::omega();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
            Judgment a = oracle.compare(constant_act(outcomes[i], omega), constant_act(outcomes[j], omega));
            if (left_weak(a)) weak.emplace_back(outcomes[i], outcomes[j]);
            if (right_weak(a)) weak.emplace_back(outcomes[j], outcomes[i]);
        }
    }
    return OutcomeSet(outcomes, weak);
}

Judgment ask(const Oracle& oracle, const FiniteAlgebra& algebra, const FiniteAct& f, const FiniteAct& g) {
    return oracle.compare(embed_act(algebra, f), embed_act(algebra, g));
}

FiniteStore populate_store(const Oracle& oracle, const OutcomeSet& outcomes, const FiniteAlgebra& algebra) {
    FiniteStore store;
    auto events = algebra.events();
    for (const auto& [b, w] : outcomes.strict_pairs()) {
        for (std::size_t i = 0; i < events.size(); ++i) {
            for (std::size_t j = i + 1; j < events.size(); ++j) {
                auto f = test_act(b, w, events[i]);
                auto g = test_act(b, w, events[j]);
                if (f.is_constant() && g.is_constant()) continue;
                store.set(f, g, ask(oracle, algebra, f, g));
            }
        }
    }
    const auto& os = outcomes.outcomes();
    for (std::size_t i = 0; i < os.size(); ++i) {
        for (std::size_t j = i + 1; j < os.size(); ++j) {
            bool ij = outcomes.weakly(os[i], os[j]), ji = outcomes.weakly(os[j], os[i]);
            Judgment jd = ij && ji ? Judgment::Both : ij ? Judgment::LeftWeak : ji ? Judgment::RightWeak : Judgment::Incomparable;
            store.set(constant_act(os[i], algebra.omega()), constant_act(os[j], algebra.omega()), jd);
        }
    }
    return store;
}

}  // namespace credence
