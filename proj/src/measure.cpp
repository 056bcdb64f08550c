#include "credence/measure.hpp"

#include "credence/errors.hpp"

namespace credence {

Rational DistributionMeasure::mass(const DyadicEvent& e) const {
    Rational total = 0;
    for (const auto& i : e.intervals()) total += cdf(i.hi.to_rational()) - cdf(i.lo.to_rational());
    return total;
}

namespace {

class Uniform final : public DistributionMeasure {
public:
    Rational cdf(const Rational& t) const override { return t; }
    std::string describe() const override { return "uniform"; }
};

class Power final : public DistributionMeasure {
public:
    explicit Power(int k) : k_(k) {}
    Rational cdf(const Rational& t) const override {
        Rational r = 1;
        for (int i = 0; i < k_; ++i) r *= t;
        return r;
    }
    std::string describe() const override { return "power t^" + std::to_string(k_); }

private:
    int k_;
};

class Piecewise final : public DistributionMeasure {
public:
    explicit Piecewise(std::vector<std::pair<Rational, Rational>> pts) : pts_(std::move(pts)) {}
    Rational cdf(const Rational& t) const override {
        if (t <= 0) return 0;
        if (t >= 1) return 1;
        for (std::size_t i = 1; i < pts_.size(); ++i) {
            const auto& [x0, y0] = pts_[i - 1];
            const auto& [x1, y1] = pts_[i];
            if (t <= x1) return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
        }
        return 1;
    }
    std::string describe() const override {
        std::string s = "piecewise";
        for (const auto& [x, y] : pts_) s += " (" + to_string(x) + "," + to_string(y) + ")";
        return s;
    }
    const std::vector<std::pair<Rational, Rational>>& points() const { return pts_; }

private:
    std::vector<std::pair<Rational, Rational>> pts_;
};

class Charge final : public Measure {
public:
    Charge(MeasurePtr base, Dyadic point, Rational weight)
        : base_(std::move(base)), point_(point), weight_(std::move(weight)) {}

    Rational mass(const DyadicEvent& e) const override {
        bool hit = false;
        for (const auto& i : e.intervals()) hit = hit || (i.lo < point_ && point_ <= i.hi);
        return (1 - weight_) * base_->mass(e) + (hit ? weight_ : Rational(0));
    }
    std::string describe() const override {
        return "charge at " + point_.to_string() + "- weight " + to_string(weight_) + " over " + base_->describe();
    }
    bool countably_additive() const override { return weight_ == 0 && base_->countably_additive(); }

private:
    MeasurePtr base_;
    Dyadic point_;
    Rational weight_;
};

}  // namespace

MeasurePtr uniform_measure() { return std::make_shared<Uniform>(); }

MeasurePtr power_measure(int k) {
    if (k < 1) throw Error(ErrorCode::BadParams, "power must be at least 1");
    return std::make_shared<Power>(k);
}

MeasurePtr piecewise_measure(std::vector<std::pair<Rational, Rational>> points) {
    if (points.size() < 2 || points.front().first != 0 || points.front().second != 0 || points.back().first != 1 ||
        points.back().second != 1) {
        throw Error(ErrorCode::BadParams, "piecewise distribution must run from (0,0) to (1,1)");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].first <= points[i - 1].first || points[i].second < points[i - 1].second) {
            throw Error(ErrorCode::BadParams, "piecewise distribution must be increasing");
        }
    }
    return std::make_shared<Piecewise>(std::move(points));
}

MeasurePtr atom_measure(const FiniteAlgebra& algebra, std::vector<Rational> masses) {
    if (static_cast<int>(masses.size()) != algebra.atoms()) throw Error(ErrorCode::BadParams, "one mass per atom required");
    Rational sum = 0;
    for (const auto& m : masses) {
        if (m < 0) throw Error(ErrorCode::BadParams, "negative atom mass");
        sum += m;
    }
    if (sum != 1) throw Error(ErrorCode::BadParams, "atom masses must sum to 1");
    std::vector<std::pair<Rational, Rational>> pts{{0, 0}};
    Rational acc = 0;
    for (int i = 0; i < algebra.atoms(); ++i) {
        acc += masses[i];
        pts.emplace_back(algebra.embed_atom(i).intervals().back().hi.to_rational(), acc);
    }
    return piecewise_measure(std::move(pts));
}

MeasurePtr charge_measure(MeasurePtr base, Dyadic point, Rational weight) {
    if (weight < 0 || weight > 1) throw Error(ErrorCode::BadParams, "charge weight must lie in [0,1]");
    if (point == Dyadic::zero()) throw Error(ErrorCode::BadParams, "charge point must be positive");
    return std::make_shared<Charge>(std::move(base), point, std::move(weight));
}

std::vector<Rational> atom_masses(const Measure& m, const FiniteAlgebra& algebra) {
    std::vector<Rational> out;
    for (int i = 0; i < algebra.atoms(); ++i) out.push_back(m.mass(algebra.embed_atom(i)));
    return out;
}

}  // namespace credence
