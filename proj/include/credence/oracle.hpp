#pragma once

#include "credence/act.hpp"
#include "credence/finite.hpp"
#include "credence/preference.hpp"

#include <cstddef>
#include <memory>
#include <string>

namespace credence {

// Black-box respondent over acts on the dyadic algebra. Answers use the
// Judgment vocabulary with LeftWeak read as "prefers the left act"; Unknown
// is never returned. Implementations are deterministic and thread-safe.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual Judgment compare(const DyadicAct& f, const DyadicAct& g) const = 0;
    virtual std::string describe() const = 0;
};

// Forwards to another oracle and throws Error(QueryBudgetExceeded) once
// `budget` queries have been spent. Not thread-safe.
class BudgetedOracle final : public Oracle {
public:
    BudgetedOracle(const Oracle& inner, std::size_t budget) : inner_(inner), budget_(budget) {}

    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override;
    std::string describe() const override { return inner_.describe(); }
    std::size_t used() const { return used_; }

private:
    const Oracle& inner_;
    std::size_t budget_;
    mutable std::size_t used_ = 0;
};

// Outcome order read off constant-act answers: o ≿ o' iff o̲ ≿ o̲'.
OutcomeSet induced_outcomes(const Oracle& oracle, const std::vector<Outcome>& outcomes);

Judgment ask(const Oracle& oracle, const FiniteAlgebra& algebra, const FiniteAct& f, const FiniteAct& g);

// Every test-act comparison of every strict family on the finite algebra,
// each asked once through the embedding, plus constant-act comparisons.
FiniteStore populate_store(const Oracle& oracle, const OutcomeSet& outcomes, const FiniteAlgebra& algebra);

}  // namespace credence
