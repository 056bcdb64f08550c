#include "credence/agents.hpp"

#include "credence/errors.hpp"
#include "credence/lp.hpp"

#include <gmpxx.h>

#include <set>

namespace credence {

Rational Utility::operator()(const Outcome& o) const {
    auto it = table.find(o);
    if (it != table.end()) return it->second;
    if (money_linear) {
        if (auto v = money_value(o)) return *v;
    }
    throw Error(ErrorCode::UnknownAct, "no utility for outcome " + o.id);
}

Rational expected_utility(const DyadicAct& act, const Measure& p, const Utility& u) {
    Rational total = 0;
    for (const auto& part : act.parts()) total += p.mass(part.event) * u(part.outcome);
    return total;
}

std::string_view to_string(AgentKind k) {
    switch (k) {
        case AgentKind::Eu: return "eu";
        case AgentKind::Allais: return "allais";
        case AgentKind::BirnbaumHeuristic: return "birnbaum-heuristic";
        case AgentKind::ThrillSeeker: return "thrill-seeker";
        case AgentKind::Ellsberg: return "ellsberg";
        case AgentKind::ZenMonk: return "zen-monk";
        case AgentKind::PartialIncomparability: return "partial-incomparability";
        case AgentKind::NoisyWrapper: return "noisy-wrapper";
    }
    return "?";
}

AgentKind parse_agent_kind(std::string_view text) {
    for (auto k : {AgentKind::Eu, AgentKind::Allais, AgentKind::BirnbaumHeuristic, AgentKind::ThrillSeeker,
                   AgentKind::Ellsberg, AgentKind::ZenMonk, AgentKind::PartialIncomparability,
                   AgentKind::NoisyWrapper}) {
        if (to_string(k) == text) return k;
    }
    throw Error(ErrorCode::BadParams, "unknown agent kind '" + std::string(text) + "'");
}

namespace {

Judgment by_value(const Rational& a, const Rational& b) {
    if (a > b) return Judgment::LeftWeak;
    if (a < b) return Judgment::RightWeak;
    return Judgment::Both;
}

class EuAgent : public Oracle {
public:
    EuAgent(MeasurePtr p, Utility u) : p_(std::move(p)), u_(std::move(u)) {}
    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override {
        return by_value(expected_utility(f, *p_, u_), expected_utility(g, *p_, u_));
    }
    std::string describe() const override { return "eu over " + p_->describe(); }

protected:
    MeasurePtr p_;
    Utility u_;
};

class AllaisAgent final : public EuAgent {
public:
    AllaisAgent(MeasurePtr p, Utility u, std::vector<std::pair<DyadicAct, DyadicAct>> overrides)
        : EuAgent(std::move(p), std::move(u)), overrides_(std::move(overrides)) {}
    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override {
        for (const auto& [better, worse] : overrides_) {
            if (f == better && g == worse) return Judgment::LeftWeak;
            if (g == better && f == worse) return Judgment::RightWeak;
        }
        return EuAgent::compare(f, g);
    }
    std::string describe() const override { return "allais over " + p_->describe(); }

private:
    std::vector<std::pair<DyadicAct, DyadicAct>> overrides_;
};

class BirnbaumAgent final : public EuAgent {
public:
    BirnbaumAgent(MeasurePtr p, Utility u, Rational lambda)
        : EuAgent(std::move(p), std::move(u)), lambda_(std::move(lambda)) {}
    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override { return by_value(value(f), value(g)); }
    std::string describe() const override { return "birnbaum-heuristic lambda " + to_string(lambda_); }

private:
    Rational value(const DyadicAct& f) const {
        if (f.outcome_count() < 3) return expected_utility(f, *p_, u_);
        Rational n = static_cast<long>(f.outcome_count());
        Rational v = 0;
        for (const auto& part : f.parts()) v += ((1 - lambda_) * p_->mass(part.event) + lambda_ / n) * u_(part.outcome);
        return v;
    }
    Rational lambda_;
};

class ThrillSeeker final : public EuAgent {
public:
    ThrillSeeker(MeasurePtr p, Utility u, std::optional<Rational> thrill)
        : EuAgent(std::move(p), std::move(u)), thrill_(std::move(thrill)) {}
    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override {
        bool fg = !f.is_constant(), gg = !g.is_constant();
        Rational vf = expected_utility(f, *p_, u_), vg = expected_utility(g, *p_, u_);
        if (thrill_) return by_value(vf + (fg ? *thrill_ : Rational(0)), vg + (gg ? *thrill_ : Rational(0)));
        if (fg != gg) return fg ? Judgment::LeftWeak : Judgment::RightWeak;
        return by_value(vf, vg);
    }
    std::string describe() const override { return "thrill-seeker over " + p_->describe(); }

private:
    std::optional<Rational> thrill_;
};

// Maxmin expected utility over a finite set of priors.
class EllsbergAgent final : public Oracle {
public:
    EllsbergAgent(std::vector<MeasurePtr> priors, Utility u) : priors_(std::move(priors)), u_(std::move(u)) {}
    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override { return by_value(value(f), value(g)); }
    std::string describe() const override { return "ellsberg maxmin over " + std::to_string(priors_.size()) + " priors"; }

private:
    Rational value(const DyadicAct& f) const {
        Rational best = expected_utility(f, *priors_.front(), u_);
        for (const auto& q : priors_) best = std::min(best, expected_utility(f, *q, u_));
        return best;
    }
    std::vector<MeasurePtr> priors_;
    Utility u_;
};

class ZenMonk final : public Oracle {
public:
    Judgment compare(const DyadicAct&, const DyadicAct&) const override { return Judgment::Both; }
    std::string describe() const override { return "zen-monk"; }
};

class PartialIncomparability final : public Oracle {
public:
    explicit PartialIncomparability(std::unique_ptr<Oracle> inner) : inner_(std::move(inner)) {}
    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override {
        if (f.outcome_count() > 2 || g.outcome_count() > 2) return Judgment::Incomparable;
        return inner_->compare(f, g);
    }
    std::string describe() const override { return "partial-incomparability around " + inner_->describe(); }

private:
    std::unique_ptr<Oracle> inner_;
};

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::string act_key(const DyadicAct& a) {
    std::string s;
    for (const auto& p : a.parts()) s += p.outcome.id + "@" + to_expression(p.event) + ";";
    return s;
}

class NoisyWrapper final : public Oracle {
public:
    NoisyWrapper(std::unique_ptr<Oracle> inner, Rational eta, std::uint64_t seed, bool test_acts)
        : inner_(std::move(inner)), eta_(std::move(eta)), seed_(seed), test_acts_(test_acts) {}

    Judgment compare(const DyadicAct& f, const DyadicAct& g) const override {
        Judgment j = inner_->compare(f, g);
        bool exposed = test_acts_ || f.outcome_count() > 2 || g.outcome_count() > 2;
        if (!exposed || !flips(f, g)) return j;
        if (j == Judgment::LeftWeak) return Judgment::RightWeak;
        if (j == Judgment::RightWeak) return Judgment::LeftWeak;
        return j;
    }
    std::string describe() const override { return "noisy-wrapper eta " + to_string(eta_) + " around " + inner_->describe(); }

private:
    // Symmetric in (f, g) so mirrored queries stay mirror-consistent.
    bool flips(const DyadicAct& f, const DyadicAct& g) const {
        std::string a = act_key(f), b = act_key(g);
        if (b < a) std::swap(a, b);
        std::uint64_t h = splitmix(fnv1a(a + "|" + b) ^ splitmix(seed_));
        mpz_class num;
        mpz_import(num.get_mpz_t(), 1, 1, sizeof h, 0, 0, &h);
        mpz_class den = 1;
        den <<= 64;
        return ratio(num, den) < eta_;
    }

    std::unique_ptr<Oracle> inner_;
    Rational eta_;
    std::uint64_t seed_;
    bool test_acts_;
};

FiniteAct act_of(const FiniteAlgebra& alg, std::vector<std::pair<std::vector<std::string>, std::string>> parts) {
    std::vector<Part<FiniteEvent>> ps;
    for (auto& [atoms, o] : parts) ps.push_back({alg.event(atoms), outcome(o)});
    return make_act(std::move(ps));
}

std::vector<Outcome> outcomes_of(std::initializer_list<const char*> ids) {
    std::vector<Outcome> out;
    for (const char* id : ids) out.push_back(outcome(id));
    return out;
}

}  // namespace

std::unique_ptr<Oracle> make_agent(const AgentSpec& spec) {
    MeasurePtr p = spec.measure ? spec.measure : uniform_measure();
    switch (spec.kind) {
        case AgentKind::Eu: return std::make_unique<EuAgent>(p, spec.utility);
        case AgentKind::Allais: {
            auto overrides = spec.overrides;
            if (overrides.empty()) {
                auto fx = allais_fixture();
                auto e = [&](const char* label) { return embed_act(fx.algebra, fx.act(label)); };
                overrides = {{e("1"), e("2")}, {e("4"), e("3")}};
                if (!spec.measure) p = fx.measure();
            }
            return std::make_unique<AllaisAgent>(p, spec.utility, std::move(overrides));
        }
        case AgentKind::BirnbaumHeuristic:
            if (spec.lambda < 0 || spec.lambda > 1) throw Error(ErrorCode::BadParams, "lambda must lie in [0,1]");
            return std::make_unique<BirnbaumAgent>(spec.measure ? p : birnbaum_fixture().measure(), spec.utility,
                                                   spec.lambda);
        case AgentKind::ThrillSeeker:
            if (spec.thrill && *spec.thrill <= 0) throw Error(ErrorCode::BadParams, "thrill must be positive");
            return std::make_unique<ThrillSeeker>(p, spec.utility, spec.thrill);
        case AgentKind::Ellsberg: {
            auto priors = spec.priors;
            if (priors.empty()) {
                FiniteAlgebra urn(std::vector<std::string>{"R", "Y", "B"});
                priors = {atom_measure(urn, {Rational(1, 3), Rational(1, 2), Rational(1, 6)}),
                          atom_measure(urn, {Rational(1, 3), Rational(1, 6), Rational(1, 2)})};
            }
            return std::make_unique<EllsbergAgent>(std::move(priors), spec.utility);
        }
        case AgentKind::ZenMonk: return std::make_unique<ZenMonk>();
        case AgentKind::PartialIncomparability:
        case AgentKind::NoisyWrapper: {
            AgentSpec inner_spec;
            if (spec.inner) {
                inner_spec = *spec.inner;
            } else {
                inner_spec.measure = spec.measure;
                inner_spec.utility = spec.utility;
            }
            auto inner = make_agent(inner_spec);
            if (spec.kind == AgentKind::PartialIncomparability) {
                return std::make_unique<PartialIncomparability>(std::move(inner));
            }
            if (spec.noise < 0 || spec.noise > 1) throw Error(ErrorCode::BadParams, "noise must lie in [0,1]");
            return std::make_unique<NoisyWrapper>(std::move(inner), spec.noise, spec.seed, spec.noise_on_test_acts);
        }
    }
    throw Error(ErrorCode::BadParams, "unhandled agent kind");
}

const FiniteAct& LotteryFixture::act(const std::string& label) const {
    auto it = acts.find(label);
    if (it == acts.end()) throw Error(ErrorCode::UnknownAct, "fixture " + name + " has no act '" + label + "'");
    return it->second;
}

Rational LotteryFixture::probability(const FiniteEvent& e) const {
    Rational p = 0;
    for (int i = 0; i < algebra.atoms(); ++i) {
        if (e.has_atom(i)) p += masses[i];
    }
    return p;
}

LotteryFixture allais_fixture() {
    FiniteAlgebra alg(std::vector<std::string>{"A", "B", "C"});
    LotteryFixture fx{"allais", alg, {Rational(1, 100), Rational(1, 10), Rational(89, 100)},
                      OutcomeSet::money_order(outcomes_of({"$0", "$1M", "$5M"})), {}};
    fx.acts.emplace("1", act_of(alg, {{{"A", "B", "C"}, "$1M"}}));
    fx.acts.emplace("2", act_of(alg, {{{"A"}, "$0"}, {{"B"}, "$5M"}, {{"C"}, "$1M"}}));
    fx.acts.emplace("3", act_of(alg, {{{"A", "B"}, "$1M"}, {{"C"}, "$0"}}));
    fx.acts.emplace("4", act_of(alg, {{{"A"}, "$0"}, {{"B"}, "$5M"}, {{"C"}, "$0"}}));
    return fx;
}

LotteryFixture birnbaum_fixture() {
    FiniteAlgebra alg(std::vector<std::string>{"a", "b", "c", "d"});
    LotteryFixture fx{"birnbaum", alg, {Rational(1, 20), Rational(1, 20), Rational(1, 20), Rational(17, 20)},
                      OutcomeSet::money_order(outcomes_of({"$12", "$14", "$90", "$96"})), {}};
    fx.acts.emplace("5", act_of(alg, {{{"a"}, "$12"}, {{"b"}, "$14"}, {{"c", "d"}, "$96"}}));
    fx.acts.emplace("6", act_of(alg, {{{"a", "b"}, "$12"}, {{"c"}, "$90"}, {{"d"}, "$96"}}));
    return fx;
}

LotteryFixture urn_fixture() {
    FiniteAlgebra alg(std::vector<std::string>{"R", "Y", "B"});
    LotteryFixture fx{"urn", alg, {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                      OutcomeSet::money_order(outcomes_of({"$0", "$1", "$2"})), {}};
    fx.acts.emplace("1", act_of(alg, {{{"R"}, "$1"}, {{"Y"}, "$2"}, {{"B"}, "$0"}}));
    fx.acts.emplace("2", act_of(alg, {{{"B"}, "$1"}, {{"Y"}, "$2"}, {{"R"}, "$0"}}));
    return fx;
}

EuConsistency check_eu_consistency(const LotteryFixture& fixture,
                                   const std::vector<std::pair<std::string, std::string>>& observed) {
    std::set<Outcome> seen;
    for (const auto& [f, g] : observed) {
        for (const auto* label : {&f, &g}) {
            for (const auto& o : fixture.act(*label).outcomes()) seen.insert(o);
        }
    }
    std::vector<Outcome> os(seen.begin(), seen.end());
    const int k = static_cast<int>(os.size());

    // d_i[o] = P_f(o) - P_g(o)
    std::vector<std::vector<Rational>> diffs;
    for (const auto& [f, g] : observed) {
        std::vector<Rational> d(k);
        for (int j = 0; j < k; ++j) {
            d[j] = fixture.probability(fixture.act(f).event_of(os[j])) -
                   fixture.probability(fixture.act(g).event_of(os[j]));
        }
        diffs.push_back(std::move(d));
    }

    // Variables u+_j, u-_j, then d+, d-; maximize δ = d+ - d- <= 1.
    lp::Problem prob;
    prob.variables = 2 * k + 2;
    for (const auto& d : diffs) {
        std::vector<Rational> row(prob.variables);
        for (int j = 0; j < k; ++j) {
            row[2 * j] = d[j];
            row[2 * j + 1] = -d[j];
        }
        row[2 * k] = -1;
        row[2 * k + 1] = 1;
        prob.add(std::move(row), lp::Sense::GreaterEq, 0);
    }
    {
        std::vector<Rational> row(prob.variables);
        row[2 * k] = 1;
        row[2 * k + 1] = -1;
        prob.add(std::move(row), lp::Sense::LessEq, 1);
    }
    prob.objective.assign(prob.variables, 0);
    prob.objective[2 * k] = 1;
    prob.objective[2 * k + 1] = -1;
    auto sol = lp::solve(prob);

    EuConsistency out;
    out.margin = sol.value;
    if (sol.status == lp::Status::Optimal && sol.value > 0) {
        out.feasible = true;
        for (int j = 0; j < k; ++j) out.utility[os[j]] = sol.x[2 * j] - sol.x[2 * j + 1];
        return out;
    }

    // Gordan alternative: λ >= 0, Σλ = 1, Σ λ_i d_i = 0.
    lp::Problem alt;
    alt.variables = static_cast<int>(diffs.size());
    for (int j = 0; j < k; ++j) {
        std::vector<Rational> row(alt.variables);
        for (int i = 0; i < alt.variables; ++i) row[i] = diffs[i][j];
        alt.add(std::move(row), lp::Sense::Equal, 0);
    }
    alt.add(std::vector<Rational>(alt.variables, 1), lp::Sense::Equal, 1);
    auto cert = lp::solve(alt);
    if (cert.status != lp::Status::Optimal) throw Error(ErrorCode::BadParams, "no Gordan certificate found");
    out.certificate = cert.x;
    return out;
}

}  // namespace credence
