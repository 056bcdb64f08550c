#include "credence/outcome.hpp"

#include "credence/errors.hpp"

#include <algorithm>

namespace credence {

std::optional<Rational> money_value(const Outcome& o) {
    if (o.id.size() < 2 || o.id.front() != '$') return std::nullopt;
    std::string body = o.id.substr(1);
    Rational scale = 1;
    if (body.back() == 'M') {
        scale = 1000000;
        body.pop_back();
    } else if (body.back() == 'k') {
        scale = 1000;
        body.pop_back();
    }
    try {
        return parse_rational(body) * scale;
    } catch (const Error&) {
        return std::nullopt;
    }
}

Outcome money(const Rational& amount) {
    Rational a = amount;
    a.canonicalize();
    if (a.get_den() == 1) return Outcome{"$" + a.get_num().get_str()};
    return Outcome{"$" + a.get_str()};
}

OutcomeSet::OutcomeSet(std::vector<Outcome> outcomes, const std::vector<std::pair<Outcome, Outcome>>& weak_pairs)
    : outcomes_(std::move(outcomes)) {
    std::sort(outcomes_.begin(), outcomes_.end());
    if (std::adjacent_find(outcomes_.begin(), outcomes_.end()) != outcomes_.end()) {
        throw Error(ErrorCode::BadParams, "duplicate outcome");
    }
    for (const auto& o : outcomes_) weak_.insert({o, o});
    for (const auto& [a, b] : weak_pairs) {
        if (!contains(a) || !contains(b)) {
            throw Error(ErrorCode::UnknownOutcome, "order mentions undeclared outcome " + (contains(a) ? b.id : a.id));
        }
        weak_.insert({a, b});
    }
}

OutcomeSet OutcomeSet::from_ranking(const std::vector<std::vector<Outcome>>& tiers) {
    std::vector<Outcome> all;
    std::vector<std::pair<Outcome, Outcome>> pairs;
    for (std::size_t t = 0; t < tiers.size(); ++t) {
        for (const auto& a : tiers[t]) {
            all.push_back(a);
            for (std::size_t u = t; u < tiers.size(); ++u) {
                for (const auto& b : tiers[u]) pairs.emplace_back(a, b);
            }
        }
    }
    return OutcomeSet(std::move(all), pairs);
}

OutcomeSet OutcomeSet::money_order(const std::vector<Outcome>& outcomes) {
    std::vector<std::pair<Outcome, Outcome>> pairs;
    for (const auto& a : outcomes) {
        auto va = money_value(a);
        if (!va) throw Error(ErrorCode::Parse, "not a money outcome: " + a.id);
        for (const auto& b : outcomes) {
            auto vb = money_value(b);
            if (!vb) throw Error(ErrorCode::Parse, "not a money outcome: " + b.id);
            if (*va >= *vb) pairs.emplace_back(a, b);
        }
    }
    return OutcomeSet(outcomes, pairs);
}

bool OutcomeSet::contains(const Outcome& o) const {
    return std::binary_search(outcomes_.begin(), outcomes_.end(), o);
}

bool OutcomeSet::weakly(const Outcome& a, const Outcome& b) const { return weak_.count({a, b}) > 0; }

std::vector<std::pair<Outcome, Outcome>> OutcomeSet::strict_pairs() const {
    std::vector<std::pair<Outcome, Outcome>> out;
    for (const auto& [a, b] : weak_) {
        if (a != b && !weakly(b, a)) out.emplace_back(a, b);
    }
    return out;  // std::set iteration is already (b.id, w.id) ordered
}

std::vector<std::pair<Outcome, Outcome>> OutcomeSet::weak_pairs() const {
    std::vector<std::pair<Outcome, Outcome>> out;
    for (const auto& p : weak_) {
        if (p.first != p.second) out.push_back(p);
    }
    return out;
}

}  // namespace credence
