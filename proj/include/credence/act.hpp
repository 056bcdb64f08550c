#pragma once

#include "credence/dyadic.hpp"
#include "credence/errors.hpp"
#include "credence/finite.hpp"
#include "credence/outcome.hpp"

#include <algorithm>
#include <compare>
#include <concepts>
#include <optional>
#include <vector>

namespace credence {

template <class E>
concept Event = std::totally_ordered<E> && requires(const E& a, const E& b) {
    { a | b } -> std::same_as<E>;
    { a & b } -> std::same_as<E>;
    { a.complement() } -> std::same_as<E>;
    { a.is_empty() } -> std::same_as<bool>;
    { a.is_omega() } -> std::same_as<bool>;
    { a.disjoint(b) } -> std::same_as<bool>;
    { a.contains(b) } -> std::same_as<bool>;
};

template <Event E>
struct Part {
    E event;
    Outcome outcome;

    friend bool operator==(const Part&, const Part&) = default;
    friend auto operator<=>(const Part&, const Part&) = default;
};

// Finite-valued act {o1,E1; ...; on,En}. Always normalized: one part per
// outcome, no empty events, parts sorted by outcome, events partition Ω.
template <Event E>
class Act {
public:
    const std::vector<Part<E>>& parts() const { return parts_; }

    std::size_t outcome_count() const { return parts_.size(); }
    bool is_constant() const { return parts_.size() == 1; }

    std::vector<Outcome> outcomes() const {
        std::vector<Outcome> out;
        for (const auto& p : parts_) out.push_back(p.outcome);
        return out;
    }

    // Event on which the act yields o (empty if never).
    E event_of(const Outcome& o) const {
        for (const auto& p : parts_) {
            if (p.outcome == o) return p.event;
        }
        return parts_.front().event & parts_.front().event.complement();
    }

    // States on which the act yields an outcome declared weakly preferred
    // to threshold. Incomparable outcomes contribute nothing.
    E upper_event(const Outcome& threshold, const OutcomeSet& outcomes) const {
        E acc = parts_.front().event & parts_.front().event.complement();
        for (const auto& p : parts_) {
            if (outcomes.weakly(p.outcome, threshold)) acc = acc | p.event;
        }
        return acc;
    }

    friend bool operator==(const Act&, const Act&) = default;
    friend auto operator<=>(const Act&, const Act&) = default;

    template <Event F>
    friend Act<F> make_act(std::vector<Part<F>> parts, const OutcomeSet* declared);

private:
    std::vector<Part<E>> parts_;
};

// Validates and normalizes. Errors: OverlappingEvents, NonExhaustive,
// UnknownOutcome (only when `declared` is given), BadParams for no parts.
template <Event E>
Act<E> make_act(std::vector<Part<E>> parts, const OutcomeSet* declared = nullptr) {
    if (parts.empty()) throw Error(ErrorCode::BadParams, "an act needs at least one part");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (declared && !declared->contains(parts[i].outcome)) {
            throw Error(ErrorCode::UnknownOutcome, "unknown outcome " + parts[i].outcome.id);
        }
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (!parts[i].event.disjoint(parts[j].event)) {
                throw Error(ErrorCode::OverlappingEvents, "act parts overlap");
            }
        }
    }
    E all = parts.front().event;
    for (const auto& p : parts) all = all | p.event;
    if (!all.is_omega()) throw Error(ErrorCode::NonExhaustive, "act parts do not cover the state space");

    std::sort(parts.begin(), parts.end(),
              [](const Part<E>& a, const Part<E>& b) { return a.outcome < b.outcome; });
    Act<E> act;
    for (auto& p : parts) {
        if (p.event.is_empty()) continue;
        if (!act.parts_.empty() && act.parts_.back().outcome == p.outcome) {
            act.parts_.back().event = act.parts_.back().event | p.event;
        } else {
            act.parts_.push_back(std::move(p));
        }
    }
    return act;
}

template <Event E>
Act<E> constant_act(const Outcome& o, const E& omega) {
    return make_act<E>({Part<E>{omega, o}});
}

// {b, X; w, X^C}. Collapses to a constant act when X is Ω or ∅.
template <Event E>
Act<E> test_act(const Outcome& good, const Outcome& bad, const E& on) {
    return make_act<E>({Part<E>{on, good}, Part<E>{on.complement(), bad}});
}

template <Event E>
bool is_test_shaped(const Act<E>& act) {
    return act.outcome_count() <= 2;
}

using FiniteAct = Act<FiniteEvent>;
using DyadicAct = Act<DyadicEvent>;

// Maps a finite act onto the dyadic realization of its algebra.
DyadicAct embed_act(const FiniteAlgebra& algebra, const FiniteAct& act);

}  // namespace credence
