#include "credence/comparative.hpp"

#include <bit>
#include <map>
#include <random>
#include <tuple>

namespace credence {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Vacuous: return "vacuous";
    }
    return "?";
}

std::string_view to_string(Axiom a) {
    switch (a) {
        case Axiom::OutcomeIndependence: return "Outcome Independence";
        case Axiom::NonDegeneracy: return "Non-Degeneracy";
        case Axiom::RestrictedOrdering: return "Restricted Ordering";
        case Axiom::CertainPrize: return "Certain Prize";
        case Axiom::AlternativePrize: return "Alternative Prize";
    }
    return "?";
}

std::string_view to_string(QpCondition c) {
    switch (c) {
        case QpCondition::Ordering: return "Ordering";
        case QpCondition::Boundedness: return "Boundedness";
        case QpCondition::NonTriviality: return "Non-Triviality";
        case QpCondition::QualitativeAdditivity: return "Qualitative Additivity";
    }
    return "?";
}

template <Event E>
bool AxiomReport<E>::all_hold() const {
    for (const auto& r : results) {
        if (!holds(r.verdict)) return false;
    }
    return true;
}

template struct AxiomReport<FiniteEvent>;
template struct AxiomReport<DyadicEvent>;

bool QpReport::all_hold() const {
    for (const auto& r : results) {
        if (!holds(r.verdict)) return false;
    }
    return true;
}

namespace {

Judgment outcome_judgment(const OutcomeSet& outcomes, const Outcome& a, const Outcome& b) {
    bool ab = outcomes.weakly(a, b), ba = outcomes.weakly(b, a);
    if (ab && ba) return Judgment::Both;
    if (ab) return Judgment::LeftWeak;
    if (ba) return Judgment::RightWeak;
    return Judgment::Incomparable;
}

struct Family {
    Outcome b;
    Outcome w;
};

std::vector<Family> families_of(const OutcomeSet& outcomes) {
    std::vector<Family> out;
    for (const auto& [b, w] : outcomes.strict_pairs()) out.push_back({b, w});
    return out;
}

std::string family_text(const Family& f) { return "(" + f.b.id + ", " + f.w.id + ")"; }

// Aggregates one axiom's instances into a verdict.
template <Event E>
struct Tally {
    AxiomResult<E> result;
    bool saw_instance = false;

    void instance() { saw_instance = true; }
    void violation(PreferenceWitness<E> w) {
        if (!result.witness) result.witness = std::move(w);
        ++result.violations;
    }
    AxiomResult<E> finish(bool vacuous_allowed) {
        if (result.violations > 0) {
            result.verdict = Verdict::Fail;
        } else {
            result.verdict = (vacuous_allowed && !saw_instance) ? Verdict::Vacuous : Verdict::Pass;
        }
        return std::move(result);
    }
};

// Instance checks shared by the exhaustive and sampled drivers. `Src`
// provides families(), judge(f, X, Y) and record(f, X, Y).
template <Event E, class Src>
struct Checks {
    Src& src;
    std::string (*describe)(const Src&, const E&);

    bool weak(std::size_t f, const E& x, const E& y) { return left_weak(src.judge(f, x, y)); }
    bool strict(std::size_t f, const E& x, const E& y) { return src.judge(f, x, y) == Judgment::LeftWeak; }

    void oi(const E& x, const E& y, Tally<E>& t) {
        const auto& fams = src.families();
        if (fams.size() < 2) return;
        t.instance();
        std::optional<std::size_t> yes, no;
        for (std::size_t f = 0; f < fams.size(); ++f) {
            if (weak(f, x, y)) {
                if (!yes) yes = f;
            } else if (!no) {
                no = f;
            }
        }
        if (yes && no) {
            t.violation({"bet on " + describe(src, x) + " over " + describe(src, y) + " is weakly preferred under " +
                             family_text(fams[*yes]) + " but not under " + family_text(fams[*no]),
                         {src.record(*yes, x, y), src.record(*no, x, y)}});
        }
    }

    void ro_complete(std::size_t f, const E& x, const E& y, Tally<E>& t) {
        t.instance();
        if (!weak(f, x, y) && !weak(f, y, x)) {
            t.violation({"bets on " + describe(src, x) + " and " + describe(src, y) + " under " +
                             family_text(src.families()[f]) + " are not compared",
                         {src.record(f, x, y)}});
        }
    }

    void ro_transitive(std::size_t f, const E& x, const E& y, const E& z, Tally<E>& t) {
        t.instance();
        if (weak(f, x, y) && weak(f, y, z) && !weak(f, x, z)) {
            t.violation({"under " + family_text(src.families()[f]) + ": " + describe(src, x) + " ≿ " +
                             describe(src, y) + " ≿ " + describe(src, z) + " but not " + describe(src, x) + " ≿ " +
                             describe(src, z),
                         {src.record(f, x, y), src.record(f, y, z), src.record(f, x, z)}});
        }
    }

    void cp(std::size_t f, const E& x, const E& omega, const E& empty, Tally<E>& t) {
        t.instance();
        if (!weak(f, omega, x)) {
            t.violation({"the bet on " + describe(src, x) + " under " + family_text(src.families()[f]) +
                             " is strictly preferred or incomparable to the sure prize",
                         {src.record(f, omega, x)}});
        } else if (!weak(f, x, empty)) {
            t.violation({"the sure booby prize is not weakly worse than the bet on " + describe(src, x) + " under " +
                             family_text(src.families()[f]),
                         {src.record(f, x, empty)}});
        }
    }

    // Z disjoint from both x and y.
    void ap(std::size_t f, const E& x, const E& y, const E& z, Tally<E>& t) {
        E xz = x | z, yz = y | z;
        bool before = strict(f, x, y), after = strict(f, xz, yz);
        if (before || after) t.instance();
        if (before != after) {
            t.violation({"under " + family_text(src.families()[f]) + ": " + describe(src, x) +
                             (before ? " ≻ " : " not≻ ") + describe(src, y) + " but " + describe(src, xz) +
                             (after ? " ≻ " : " not≻ ") + describe(src, yz) + " with common part " +
                             describe(src, z),
                         {src.record(f, x, y), src.record(f, xz, yz)}});
        }
    }
};

// Dense per-family judgment matrices over all 2^m events.
class FiniteSource {
public:
    FiniteSource(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra)
        : prefs_(prefs), outcomes_(outcomes), algebra_(algebra), n_(algebra.event_count()) {
        validate();
        fams_ = families_of(outcomes);
        matrix_.resize(fams_.size());
        for (std::size_t f = 0; f < fams_.size(); ++f) {
            auto& m = matrix_[f];
            m.assign(n_ * n_, Judgment::Unknown);
            std::vector<FiniteAct> acts;
            for (std::uint32_t x = 0; x < n_; ++x) acts.push_back(test_act(fams_[f].b, fams_[f].w, algebra.event(x)));
            for (std::uint32_t x = 0; x < n_; ++x) {
                for (std::uint32_t y = x; y < n_; ++y) {
                    Judgment j = lookup(acts[x], acts[y]);
                    m[x * n_ + y] = j;
                    m[y * n_ + x] = mirror(j);
                }
            }
        }
    }

    const std::vector<Family>& families() const { return fams_; }
    const FiniteAlgebra& algebra() const { return algebra_; }

    Judgment judge(std::size_t f, const FiniteEvent& x, const FiniteEvent& y) const {
        return matrix_[f][x.bits() * n_ + y.bits()];
    }

    JudgmentRecord<FiniteEvent> record(std::size_t f, const FiniteEvent& x, const FiniteEvent& y) const {
        return {test_act(fams_[f].b, fams_[f].w, x), test_act(fams_[f].b, fams_[f].w, y), judge(f, x, y)};
    }

    ComparativeOrder order_of(std::size_t f) const {
        ComparativeOrder o(algebra_);
        for (std::uint32_t x = 0; x < n_; ++x) {
            for (std::uint32_t y = 0; y < n_; ++y) {
                o.set(algebra_.event(x), algebra_.event(y), left_weak(matrix_[f][x * n_ + y]));
            }
        }
        o.prize_pair = std::pair{fams_[f].b, fams_[f].w};
        return o;
    }

private:
    Judgment lookup(const FiniteAct& a, const FiniteAct& b) const {
        if (a == b) return Judgment::Both;
        if (a.is_constant() && b.is_constant()) {
            return outcome_judgment(outcomes_, a.parts()[0].outcome, b.parts()[0].outcome);
        }
        return prefs_.get(a, b);
    }

    void validate() const {
        for (const auto& r : prefs_.records()) {
            for (const auto* act : {&r.left, &r.right}) {
                for (const auto& p : act->parts()) {
                    if (!outcomes_.contains(p.outcome)) {
                        throw Error(ErrorCode::UnknownOutcome, "preference mentions undeclared outcome " + p.outcome.id);
                    }
                    if (p.event.atoms() != algebra_.atoms()) {
                        throw Error(ErrorCode::BadParams, "preference act from a different algebra");
                    }
                }
            }
            if (r.left.is_constant() && r.right.is_constant()) {
                Judgment expect = outcome_judgment(outcomes_, r.left.parts()[0].outcome, r.right.parts()[0].outcome);
                if (expect != r.judgment) {
                    throw Error(ErrorCode::InconsistentOutcomeOrder,
                                "constant acts " + r.left.parts()[0].outcome.id + " and " +
                                    r.right.parts()[0].outcome.id + " disagree with the declared outcome order");
                }
            }
        }
    }

    const FiniteStore& prefs_;
    const OutcomeSet& outcomes_;
    const FiniteAlgebra& algebra_;
    std::size_t n_;
    std::vector<Family> fams_;
    std::vector<std::vector<Judgment>> matrix_;
};

std::string describe_finite(const FiniteSource& s, const FiniteEvent& e) { return s.algebra().describe(e); }

template <class F>
void for_each_submask(std::uint32_t mask, F&& fn) {
    std::uint32_t s = mask;
    for (;;) {
        fn(s);
        if (s == 0) break;
        s = (s - 1) & mask;
    }
}

bool oi_holds(FiniteSource& src, const FiniteAlgebra& algebra, std::optional<PreferenceWitness<FiniteEvent>>* witness) {
    Checks<FiniteEvent, FiniteSource> c{src, &describe_finite};
    Tally<FiniteEvent> t;
    auto n = static_cast<std::uint32_t>(algebra.event_count());
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) c.oi(algebra.event(x), algebra.event(y), t);
    }
    if (witness) *witness = t.result.witness;
    return t.result.violations == 0;
}

void check_atoms(const FiniteAlgebra& algebra, int bound) {
    if (algebra.atoms() > bound) {
        throw Error(ErrorCode::AtomBoundExceeded,
                    std::to_string(algebra.atoms()) + " atoms exceed the bound of " + std::to_string(bound));
    }
}

}  // namespace

ComparativeOrder::ComparativeOrder(FiniteAlgebra algebra)
    : algebra_(std::move(algebra)), n_(algebra_.event_count()), rel_(n_ * n_, 0) {
    if (algebra_.atoms() > kMaxAtoms) {
        throw Error(ErrorCode::AtomBoundExceeded, "comparative orders support at most " + std::to_string(kMaxAtoms) + " atoms");
    }
}

ComparativeOrder ComparativeOrder::from_masses(const FiniteAlgebra& algebra, const std::vector<Rational>& p) {
    if (static_cast<int>(p.size()) != algebra.atoms()) throw Error(ErrorCode::BadParams, "one mass per atom required");
    ComparativeOrder o(algebra);
    std::vector<Rational> mass(o.size(), 0);
    for (std::uint32_t x = 0; x < o.size(); ++x) {
        for (int i = 0; i < algebra.atoms(); ++i) {
            if ((x >> i) & 1u) mass[x] += p[i];
        }
    }
    for (std::uint32_t x = 0; x < o.size(); ++x) {
        for (std::uint32_t y = 0; y < o.size(); ++y) o.rel_[x * o.n_ + y] = mass[x] >= mass[y];
    }
    return o;
}

ComparativeOrder witness_order(const FiniteAlgebra& algebra, const QpWitness& w) {
    ComparativeOrder o(algebra);
    for (const auto& f : w.facts) o.set(f.x, f.y, f.weak);
    return o;
}

ComparativeOrder derive_comparative(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra,
                                    DerivationPolicy policy) {
    check_atoms(algebra, ComparativeOrder::kMaxAtoms);
    FiniteSource src(prefs, outcomes, algebra);
    if (src.families().empty()) throw Error(ErrorCode::Degenerate, "no strictly preferred outcome pair");
    std::optional<PreferenceWitness<FiniteEvent>> conflict;
    bool oi = oi_holds(src, algebra, &conflict);

    if (policy == DerivationPolicy::FirstFamily || oi) {
        ComparativeOrder o = src.order_of(0);
        o.determinate = oi;
        o.conflict = conflict;
        return o;
    }
    ComparativeOrder o(algebra);
    auto n = static_cast<std::uint32_t>(algebra.event_count());
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
            bool any = false;
            for (std::size_t f = 0; f < src.families().size() && !any; ++f) {
                any = left_weak(src.judge(f, algebra.event(x), algebra.event(y)));
            }
            o.set(algebra.event(x), algebra.event(y), any);
        }
    }
    o.determinate = false;
    o.conflict = conflict;
    return o;
}

ComparativeOrder derive_for_pair(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra,
                                 const Outcome& b, const Outcome& w) {
    check_atoms(algebra, ComparativeOrder::kMaxAtoms);
    FiniteSource src(prefs, outcomes, algebra);
    for (std::size_t f = 0; f < src.families().size(); ++f) {
        if (src.families()[f].b == b && src.families()[f].w == w) return src.order_of(f);
    }
    throw Error(ErrorCode::BadParams, b.id + " is not strictly preferred to " + w.id);
}

FiniteAxiomReport check_axioms(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra,
                               const CheckOptions& options) {
    check_atoms(algebra, std::min(options.atom_bound, ComparativeOrder::kMaxAtoms));
    FiniteSource src(prefs, outcomes, algebra);
    Checks<FiniteEvent, FiniteSource> c{src, &describe_finite};
    const auto n = static_cast<std::uint32_t>(algebra.event_count());
    const auto fams = src.families().size();
    auto ev = [&](std::uint32_t b) { return algebra.event(b); };
    FiniteAxiomReport report;

    Tally<FiniteEvent> oi;
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) c.oi(ev(x), ev(y), oi);
    }
    report[Axiom::OutcomeIndependence] = oi.finish(true);

    auto& nd = report[Axiom::NonDegeneracy];
    if (fams > 0) {
        nd.verdict = Verdict::Pass;
    } else {
        nd.verdict = Verdict::Fail;
        nd.violations = 1;
        nd.witness = PreferenceWitness<FiniteEvent>{"no outcome is strictly preferred to another", {}};
    }

    Tally<FiniteEvent> ro, cp, ap;
    for (std::size_t f = 0; f < fams; ++f) {
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = x; y < n; ++y) c.ro_complete(f, ev(x), ev(y), ro);
        }
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = 0; y < n; ++y) {
                if (!c.weak(f, ev(x), ev(y))) continue;
                for (std::uint32_t z = 0; z < n; ++z) c.ro_transitive(f, ev(x), ev(y), ev(z), ro);
            }
        }
        for (std::uint32_t x = 0; x < n; ++x) c.cp(f, ev(x), algebra.omega(), algebra.empty(), cp);
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = 0; y < n; ++y) {
                std::uint32_t free = (n - 1) & ~(x | y);
                for_each_submask(free, [&](std::uint32_t z) { c.ap(f, ev(x), ev(y), ev(z), ap); });
            }
        }
    }
    report[Axiom::RestrictedOrdering] = ro.finish(true);
    report[Axiom::CertainPrize] = cp.finish(true);
    report[Axiom::AlternativePrize] = ap.finish(true);
    return report;
}

QpReport check_qualitative_probability(const ComparativeOrder& order) {
    const auto& alg = order.algebra();
    const auto n = static_cast<std::uint32_t>(order.size());
    auto ev = [&](std::uint32_t b) { return alg.event(b); };
    QpReport report;

    {
        auto& r = report[QpCondition::Ordering];
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = x; y < n; ++y) {
                if (order.weak(ev(x), ev(y)) || order.weak(ev(y), ev(x))) continue;
                if (!r.witness) {
                    r.witness = QpWitness{alg.describe(ev(x)) + " and " + alg.describe(ev(y)) + " are not compared",
                                          {{ev(x), ev(y), false}, {ev(y), ev(x), false}}};
                }
                ++r.violations;
            }
        }
        // Transitivity: X ⪰ Y requires row(Y) ⊆ row(X).
        const std::size_t words = (n + 63) / 64;
        std::vector<std::uint64_t> rows(std::size_t{n} * words, 0);
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = 0; y < n; ++y) {
                if (order.weak(ev(x), ev(y))) rows[x * words + y / 64] |= std::uint64_t{1} << (y % 64);
            }
        }
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = 0; y < n; ++y) {
                if (!order.weak(ev(x), ev(y))) continue;
                for (std::size_t k = 0; k < words; ++k) {
                    std::uint64_t missing = rows[y * words + k] & ~rows[x * words + k];
                    if (!missing) continue;
                    r.violations += std::popcount(missing);
                    if (!r.witness) {
                        auto z = static_cast<std::uint32_t>(k * 64 + std::countr_zero(missing));
                        r.witness = QpWitness{alg.describe(ev(x)) + " ⪰ " + alg.describe(ev(y)) + " ⪰ " +
                                                  alg.describe(ev(z)) + " but not " + alg.describe(ev(x)) + " ⪰ " +
                                                  alg.describe(ev(z)),
                                              {{ev(x), ev(y), true}, {ev(y), ev(z), true}, {ev(x), ev(z), false}}};
                    }
                }
            }
        }
        r.verdict = r.violations ? Verdict::Fail : Verdict::Pass;
    }
    {
        auto& r = report[QpCondition::Boundedness];
        for (std::uint32_t x = 0; x < n; ++x) {
            bool top = order.weak(alg.omega(), ev(x)), bottom = order.weak(ev(x), alg.empty());
            if (top && bottom) continue;
            ++r.violations;
            if (!r.witness) {
                r.witness = top ? QpWitness{"not " + alg.describe(ev(x)) + " ⪰ ∅", {{ev(x), alg.empty(), false}}}
                                : QpWitness{"not Ω ⪰ " + alg.describe(ev(x)), {{alg.omega(), ev(x), false}}};
            }
        }
        r.verdict = r.violations ? Verdict::Fail : Verdict::Pass;
    }
    {
        auto& r = report[QpCondition::NonTriviality];
        bool up = order.weak(alg.omega(), alg.empty()), down = order.weak(alg.empty(), alg.omega());
        if (up && !down) {
            r.verdict = Verdict::Pass;
        } else {
            r.verdict = Verdict::Fail;
            r.violations = 1;
            r.witness = QpWitness{"Ω is not strictly more likely than ∅",
                                  {{alg.omega(), alg.empty(), up}, {alg.empty(), alg.omega(), down}}};
        }
    }
    {
        auto& r = report[QpCondition::QualitativeAdditivity];
        bool saw = false;
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = 0; y < n; ++y) {
                bool before = order.strict(ev(x), ev(y));
                std::uint32_t free = (n - 1) & ~(x | y);
                for_each_submask(free, [&](std::uint32_t z) {
                    auto xz = ev(x | z), yz = ev(y | z);
                    bool after = order.strict(xz, yz);
                    if (before || after) saw = true;
                    if (before == after) return;
                    ++r.violations;
                    if (!r.witness) {
                        r.witness = QpWitness{alg.describe(ev(x)) + (before ? " ≻ " : " not≻ ") + alg.describe(ev(y)) +
                                                  " but " + alg.describe(xz) + (after ? " ≻ " : " not≻ ") +
                                                  alg.describe(yz),
                                              {{ev(x), ev(y), order.weak(ev(x), ev(y))},
                                               {ev(y), ev(x), order.weak(ev(y), ev(x))},
                                               {xz, yz, order.weak(xz, yz)},
                                               {yz, xz, order.weak(yz, xz)}}};
                    }
                });
            }
        }
        r.verdict = r.violations ? Verdict::Fail : (saw ? Verdict::Pass : Verdict::Vacuous);
    }
    return report;
}

namespace {

// Oracle-backed judgments with a per-run cache; test acts at the bounds
// are answered from the outcome order.
class SampledSource {
public:
    SampledSource(const Oracle& oracle, const OutcomeSet& outcomes, std::size_t budget)
        : outcomes_(outcomes), budgeted_(oracle, budget), fams_(families_of(outcomes)) {}

    const std::vector<Family>& families() const { return fams_; }
    std::size_t queries() const { return budgeted_.used(); }

    Judgment judge(std::size_t f, const DyadicEvent& x, const DyadicEvent& y) {
        if (x == y) return Judgment::Both;
        auto a = test_act(fams_[f].b, fams_[f].w, x), b = test_act(fams_[f].b, fams_[f].w, y);
        if (a.is_constant() && b.is_constant()) {
            return outcome_judgment(outcomes_, a.parts()[0].outcome, b.parts()[0].outcome);
        }
        bool flip = y < x;
        auto key = flip ? std::tuple{f, y, x} : std::tuple{f, x, y};
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            Judgment j = flip ? budgeted_.compare(b, a) : budgeted_.compare(a, b);
            it = cache_.emplace(key, j).first;
        }
        return flip ? mirror(it->second) : it->second;
    }

    JudgmentRecord<DyadicEvent> record(std::size_t f, const DyadicEvent& x, const DyadicEvent& y) {
        return {test_act(fams_[f].b, fams_[f].w, x), test_act(fams_[f].b, fams_[f].w, y), judge(f, x, y)};
    }

private:
    const OutcomeSet& outcomes_;
    BudgetedOracle budgeted_;
    std::vector<Family> fams_;
    std::map<std::tuple<std::size_t, DyadicEvent, DyadicEvent>, Judgment> cache_;
};

std::string describe_dyadic(const SampledSource&, const DyadicEvent& e) { return to_expression(e); }

}  // namespace

AxiomReport<DyadicEvent> check_axioms_sampled(const Oracle& oracle, const OutcomeSet& outcomes,
                                              const SampleOptions& options) {
    if (options.depth < 1 || options.depth > 6) throw Error(ErrorCode::BadParams, "sample depth must be in 1..6");
    SampledSource src(oracle, outcomes, options.budget);
    Checks<DyadicEvent, SampledSource> c{src, &describe_dyadic};
    std::mt19937_64 rng(options.seed);
    const int cells = 1 << options.depth;
    const std::uint64_t full = cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
    DyadicAlgebra alg;
    auto from_mask = [&](std::uint64_t mask) {
        DyadicEvent e;
        for (int j = 0; j < cells; ++j) {
            if ((mask >> j) & 1u) e = e | alg.cell(options.depth, static_cast<std::uint64_t>(j));
        }
        return e;
    };
    auto random_mask = [&] { return rng() & full; };
    const auto fams = src.families().size();

    AxiomReport<DyadicEvent> report;
    report.sampled = true;
    report.seed = options.seed;
    Tally<DyadicEvent> oi, ro, cp, ap;
    auto finish = [&] {
        report[Axiom::OutcomeIndependence] = oi.finish(true);
        auto& nd = report[Axiom::NonDegeneracy];
        nd.verdict = fams > 0 ? Verdict::Pass : Verdict::Fail;
        if (fams == 0) {
            nd.violations = 1;
            nd.witness = PreferenceWitness<DyadicEvent>{"no outcome is strictly preferred to another", {}};
        }
        report[Axiom::RestrictedOrdering] = ro.finish(true);
        report[Axiom::CertainPrize] = cp.finish(true);
        report[Axiom::AlternativePrize] = ap.finish(true);
        report.queries = src.queries();
    };

    try {
        for (std::size_t i = 0; i < options.instances; ++i) {
            auto x = from_mask(random_mask()), y = from_mask(random_mask()), z = from_mask(random_mask());
            c.oi(x, y, oi);
            for (std::size_t f = 0; f < fams; ++f) {
                c.ro_complete(f, x, y, ro);
                c.ro_transitive(f, x, y, z, ro);
                c.cp(f, x, DyadicEvent::omega(), DyadicEvent::empty(), cp);
                // Each cell lands in none, X, Y, X∩Y or Z, so Z ∩ (X ∪ Y) = ∅.
                std::uint64_t xm = 0, ym = 0, zm = 0;
                for (int j = 0; j < cells; ++j) {
                    switch (rng() % 5) {
                        case 1: xm |= std::uint64_t{1} << j; break;
                        case 2: ym |= std::uint64_t{1} << j; break;
                        case 3: xm |= std::uint64_t{1} << j; ym |= std::uint64_t{1} << j; break;
                        case 4: zm |= std::uint64_t{1} << j; break;
                        default: break;
                    }
                }
                c.ap(f, from_mask(xm), from_mask(ym), from_mask(zm), ap);
            }
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::QueryBudgetExceeded) throw;
        report.complete = false;
        finish();
        throw QueryBudgetError(std::move(report));
    }
    finish();
    return report;
}

EquivalenceResult check_equivalence(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra) {
    EquivalenceResult r;
    CheckOptions opts;
    opts.atom_bound = ComparativeOrder::kMaxAtoms;
    r.axioms = check_axioms(prefs, outcomes, algebra, opts);
    r.axioms_hold = r.axioms.all_hold();

    FiniteSource src(prefs, outcomes, algebra);
    if (src.families().empty()) {
        // The derived relation is empty.
        r.qp = check_qualitative_probability(ComparativeOrder(algebra));
        r.determinate = true;
    } else {
        ComparativeOrder order = derive_comparative(prefs, outcomes, algebra, DerivationPolicy::Union);
        r.qp = check_qualitative_probability(order);
        r.determinate = order.determinate;
    }
    r.qualitative = r.determinate && r.qp.all_hold();
    return r;
}

bool equivalence_holds(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra) {
    return check_equivalence(prefs, outcomes, algebra).agrees();
}

Rational ramsey_estimate(const Rational& u_b, const Rational& u_m, const Rational& u_w) {
    if (u_b == u_w) throw Error(ErrorCode::DegenerateUtilities, "u(b) equals u(w)");
    if (u_b < u_w || u_m < u_w || u_m > u_b) throw Error(ErrorCode::BadParams, "need u(w) <= u(m) <= u(b)");
    return (u_m - u_w) / (u_b - u_w);
}

}  // namespace credence
