#pragma once

#include "credence/dyadic.hpp"
#include "credence/finite.hpp"
#include "credence/rational.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace credence {

// Hidden finitely additive probability on the dyadic algebra, evaluated
// exactly.
class Measure {
public:
    virtual ~Measure() = default;
    virtual Rational mass(const DyadicEvent& e) const = 0;
    virtual std::string describe() const = 0;
    // False for charges whose mass need not be continuous along increasing
    // chains.
    virtual bool countably_additive() const { return true; }
};

using MeasurePtr = std::shared_ptr<const Measure>;

// Measures given by a distribution function F with F(0) = 0, F(1) = 1;
// mass([a,b)) = F(b) - F(a).
class DistributionMeasure : public Measure {
public:
    Rational mass(const DyadicEvent& e) const override;
    virtual Rational cdf(const Rational& t) const = 0;
};

MeasurePtr uniform_measure();

// F(t) = t^k, k >= 1.
MeasurePtr power_measure(int k);

// Linear interpolation through (x_i, F_i), x from 0 to 1 strictly
// increasing, F from 0 to 1 non-decreasing. Throws BadParams otherwise.
MeasurePtr piecewise_measure(std::vector<std::pair<Rational, Rational>> points);

// Atom i of the finite algebra's embedding gets masses[i], spread uniformly
// over its interval. Masses must be nonnegative and sum to 1.
MeasurePtr atom_measure(const FiniteAlgebra& algebra, std::vector<Rational> masses);

// (1 - weight) * base + weight * δ, where δ(X) = 1 iff X contains an
// interval [a, point) for some a < point. Finitely but not countably
// additive when weight > 0.
MeasurePtr charge_measure(MeasurePtr base, Dyadic point, Rational weight);

// Masses of all atoms of `algebra` under the embedding.
std::vector<Rational> atom_masses(const Measure& m, const FiniteAlgebra& algebra);

}  // namespace credence
