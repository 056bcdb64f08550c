#pragma once

#include "credence/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace credence {

// Largest exponent a dyadic endpoint may carry.
inline constexpr int kMaxDyadicExponent = 64;

// A dyadic rational num / 2^exp in [0, 1], always in lowest terms
// (num odd, or num == 0 with exp == 0).
class Dyadic {
public:
    constexpr Dyadic() = default;
    // Throws Error(DepthLimit) when exp exceeds kMaxDyadicExponent and
    // Error(BadParams) when the value lies outside [0, 1].
    Dyadic(std::uint64_t num, int exp);

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(1, 0); }

    std::uint64_t numerator() const { return num_; }
    int exponent() const { return exp_; }

    // Numerator over 2^k for k >= exponent(); k <= 64.
    unsigned __int128 scaled(int k) const;

    Rational to_rational() const;

    // "num/2^k", e.g. "3/2^3"; zero is "0/2^0", one is "1/2^0".
    std::string to_string() const;

    // Accepts "num/2^k", "num/den" with den a power of two, "0", "1" and
    // finite binary-representable decimals such as "0.375".
    static Dyadic parse(std::string_view text);

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    // (a + b) / 2. Throws Error(DepthLimit) when the result needs more than
    // kMaxDyadicExponent bits.
    friend Dyadic midpoint(const Dyadic& a, const Dyadic& b);

private:
    std::uint64_t num_ = 0;
    int exp_ = 0;
};

struct Interval {
    Dyadic lo;
    Dyadic hi;

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

// A finite union of half-open intervals [a/2^k, b/2^k) inside [0, 1),
// kept sorted, disjoint and maximally merged, so equal sets compare equal.
class DyadicEvent {
public:
    DyadicEvent() = default;
    // Normalizes an arbitrary list; empty and reversed intervals are rejected
    // with Error(BadParams).
    explicit DyadicEvent(std::vector<Interval> intervals);

    static DyadicEvent empty() { return DyadicEvent(); }
    static DyadicEvent omega();
    static DyadicEvent interval(Dyadic lo, Dyadic hi);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool is_empty() const { return intervals_.empty(); }
    bool is_omega() const;

    DyadicEvent complement() const;
    bool contains(const DyadicEvent& other) const;
    bool disjoint(const DyadicEvent& other) const;

    friend DyadicEvent operator|(const DyadicEvent& a, const DyadicEvent& b);
    friend DyadicEvent operator&(const DyadicEvent& a, const DyadicEvent& b);
    friend DyadicEvent operator-(const DyadicEvent& a, const DyadicEvent& b);

    // Lebesgue length, used by the uniform measure.
    Rational length() const;

    // Largest exponent among the endpoints.
    int depth() const;

    friend bool operator==(const DyadicEvent&, const DyadicEvent&) = default;
    friend auto operator<=>(const DyadicEvent&, const DyadicEvent&) = default;

private:
    std::vector<Interval> intervals_;
};

// Unboundedly refinable field of dyadic-interval unions on [0, 1).
class DyadicAlgebra {
public:
    explicit DyadicAlgebra(int depth_cap = kMaxDyadicExponent);

    int depth_cap() const { return depth_cap_; }
    DyadicEvent omega() const { return DyadicEvent::omega(); }

    // The j-th of the 2^k equal-width cells.
    DyadicEvent cell(int k, std::uint64_t j) const;

    // Materializes all 2^k cells. Throws Error(DepthLimit) above the cap, and
    // also above kMaxMaterializedDepth since the result would not fit in memory.
    std::vector<DyadicEvent> refine(int k) const;

    static constexpr int kMaxMaterializedDepth = 24;

private:
    int depth_cap_;
};

// Event expressions used on the command line and in HTTP queries:
//   "[0,1/2)", "[0,1/4) | [1/2,3/4)", "omega", "empty", "coin:HTH".
// Terms may be joined by '|', '+', 'u' or "∪".
DyadicEvent parse_event_expression(std::string_view text);
std::string to_expression(const DyadicEvent& event);

// The cell [j/2^k, (j+1)/2^k) as a sequence of k coin flips, H for 0 bits.
std::string coin_phrase(const DyadicEvent& event);

}  // namespace credence
