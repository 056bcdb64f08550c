#pragma once

#include "credence/act.hpp"

#include <map>
#include <string_view>
#include <utility>
#include <vector>

namespace credence {

// Judgment about an ordered act pair (f, g).
//   LeftWeak     f ≿ g only (so f ≻ g)
//   RightWeak    g ≿ f only
//   Both         f ~ g
//   Incomparable judged, neither direction holds
//   Unknown      never asked
enum class Judgment { LeftWeak, RightWeak, Both, Incomparable, Unknown };

std::string_view to_string(Judgment j);
Judgment parse_judgment(std::string_view text);

constexpr Judgment mirror(Judgment j) {
    switch (j) {
        case Judgment::LeftWeak: return Judgment::RightWeak;
        case Judgment::RightWeak: return Judgment::LeftWeak;
        default: return j;
    }
}

constexpr bool left_weak(Judgment j) { return j == Judgment::LeftWeak || j == Judgment::Both; }
constexpr bool right_weak(Judgment j) { return j == Judgment::RightWeak || j == Judgment::Both; }

template <Event E>
struct JudgmentRecord {
    Act<E> left;
    Act<E> right;
    Judgment judgment;

    friend bool operator==(const JudgmentRecord&, const JudgmentRecord&) = default;
};

// Partial relation over acts, keyed by unordered pair. Reflexive: f ≿ f.
template <Event E>
class PreferenceStore {
public:
    // Overwrites any earlier judgment on the same unordered pair.
    void set(const Act<E>& f, const Act<E>& g, Judgment j) {
        if (f == g) {
            if (j != Judgment::Both) {
                throw Error(ErrorCode::BadParams, "an act is always indifferent to itself");
            }
            return;
        }
        if (j == Judgment::Unknown) {
            judgments_.erase(key(f, g));
            return;
        }
        judgments_[key(f, g)] = f < g ? j : mirror(j);
    }

    void prefer(const Act<E>& f, const Act<E>& g) { set(f, g, Judgment::LeftWeak); }
    void indifferent(const Act<E>& f, const Act<E>& g) { set(f, g, Judgment::Both); }
    void incomparable(const Act<E>& f, const Act<E>& g) { set(f, g, Judgment::Incomparable); }

    Judgment get(const Act<E>& f, const Act<E>& g) const {
        if (f == g) return Judgment::Both;
        auto it = judgments_.find(key(f, g));
        if (it == judgments_.end()) return Judgment::Unknown;
        return f < g ? it->second : mirror(it->second);
    }

    bool weakly(const Act<E>& f, const Act<E>& g) const { return left_weak(get(f, g)); }
    bool strictly(const Act<E>& f, const Act<E>& g) const { return get(f, g) == Judgment::LeftWeak; }

    std::size_t size() const { return judgments_.size(); }

    // Records with left < right, in act order.
    std::vector<JudgmentRecord<E>> records() const {
        std::vector<JudgmentRecord<E>> out;
        for (const auto& [k, j] : judgments_) out.push_back({k.first, k.second, j});
        return out;
    }

    friend bool operator==(const PreferenceStore&, const PreferenceStore&) = default;

private:
    static std::pair<Act<E>, Act<E>> key(const Act<E>& f, const Act<E>& g) {
        return f < g ? std::pair{f, g} : std::pair{g, f};
    }

    std::map<std::pair<Act<E>, Act<E>>, Judgment> judgments_;
};

using FiniteStore = PreferenceStore<FiniteEvent>;

}  // namespace credence
