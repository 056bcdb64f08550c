#pragma once

#include "credence/rational.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace credence {

// Opaque outcome identifier. Identifiers of the form "$<amount>" (with an
// optional k or M suffix) are also read as money by money_value().
struct Outcome {
    std::string id;

    friend bool operator==(const Outcome&, const Outcome&) = default;
    friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

inline Outcome outcome(std::string id) { return Outcome{std::move(id)}; }

std::optional<Rational> money_value(const Outcome& o);
Outcome money(const Rational& amount);

// Declared outcomes with a weak preference that may be partial and need not
// be transitive. Reflexive on declared outcomes.
class OutcomeSet {
public:
    OutcomeSet() = default;
    OutcomeSet(std::vector<Outcome> outcomes, const std::vector<std::pair<Outcome, Outcome>>& weak_pairs);

    // Tiers from best to worst; outcomes in one tier are indifferent, and
    // every earlier tier is strictly preferred to every later one.
    static OutcomeSet from_ranking(const std::vector<std::vector<Outcome>>& tiers);
    // Money outcomes ordered by amount. Throws Error(Parse) on non-money ids.
    static OutcomeSet money_order(const std::vector<Outcome>& outcomes);

    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    bool contains(const Outcome& o) const;

    bool weakly(const Outcome& a, const Outcome& b) const;
    bool strictly(const Outcome& a, const Outcome& b) const { return weakly(a, b) && !weakly(b, a); }
    bool indifferent(const Outcome& a, const Outcome& b) const { return weakly(a, b) && weakly(b, a); }

    // Every (b, w) with b strictly preferred to w, ordered by (b.id, w.id).
    std::vector<std::pair<Outcome, Outcome>> strict_pairs() const;

    // Non-reflexive declared pairs, sorted.
    std::vector<std::pair<Outcome, Outcome>> weak_pairs() const;

private:
    std::vector<Outcome> outcomes_;
    std::set<std::pair<Outcome, Outcome>> weak_;
};

}  // namespace credence
