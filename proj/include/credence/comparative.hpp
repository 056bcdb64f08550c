#pragma once

#include "credence/act.hpp"
#include "credence/finite.hpp"
#include "credence/oracle.hpp"
#include "credence/outcome.hpp"
#include "credence/preference.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace credence {

enum class Verdict { Pass, Fail, Vacuous };

std::string_view to_string(Verdict v);
constexpr bool holds(Verdict v) { return v != Verdict::Fail; }

enum class Axiom { OutcomeIndependence, NonDegeneracy, RestrictedOrdering, CertainPrize, AlternativePrize };
inline constexpr std::array<Axiom, 5> kAxioms = {Axiom::OutcomeIndependence, Axiom::NonDegeneracy,
                                                 Axiom::RestrictedOrdering, Axiom::CertainPrize,
                                                 Axiom::AlternativePrize};
std::string_view to_string(Axiom a);

enum class QpCondition { Ordering, Boundedness, NonTriviality, QualitativeAdditivity };
inline constexpr std::array<QpCondition, 4> kQpConditions = {QpCondition::Ordering, QpCondition::Boundedness,
                                                             QpCondition::NonTriviality,
                                                             QpCondition::QualitativeAdditivity};
std::string_view to_string(QpCondition c);

// The judgments a failure rests on, exactly as the checker saw them; absent
// pairs appear as Unknown. Feeding the non-Unknown ones back through the
// checker reproduces the failure.
template <Event E>
struct PreferenceWitness {
    std::string summary;
    std::vector<JudgmentRecord<E>> judgments;
};

template <Event E>
struct AxiomResult {
    Verdict verdict = Verdict::Vacuous;
    std::size_t violations = 0;
    std::optional<PreferenceWitness<E>> witness;  // first violation found
};

template <Event E>
struct AxiomReport {
    std::array<AxiomResult<E>, 5> results;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::size_t queries = 0;
    bool complete = true;  // false when a query budget cut a sampled run short

    const AxiomResult<E>& operator[](Axiom a) const { return results[static_cast<int>(a)]; }
    AxiomResult<E>& operator[](Axiom a) { return results[static_cast<int>(a)]; }
    bool all_hold() const;
};

using FiniteAxiomReport = AxiomReport<FiniteEvent>;

template <Event E>
PreferenceStore<E> witness_store(const PreferenceWitness<E>& w) {
    PreferenceStore<E> store;
    for (const auto& r : w.judgments) {
        if (r.judgment != Judgment::Unknown) store.set(r.left, r.right, r.judgment);
    }
    return store;
}

// X ⪰ Y over all events of a finite algebra, as a dense matrix.
class ComparativeOrder {
public:
    static constexpr int kMaxAtoms = 10;

    explicit ComparativeOrder(FiniteAlgebra algebra);

    const FiniteAlgebra& algebra() const { return algebra_; }
    std::size_t size() const { return n_; }

    bool weak(const FiniteEvent& x, const FiniteEvent& y) const { return rel_[x.bits() * n_ + y.bits()] != 0; }
    bool strict(const FiniteEvent& x, const FiniteEvent& y) const { return weak(x, y) && !weak(y, x); }
    bool equivalent(const FiniteEvent& x, const FiniteEvent& y) const { return weak(x, y) && weak(y, x); }
    void set(const FiniteEvent& x, const FiniteEvent& y, bool value) { rel_[x.bits() * n_ + y.bits()] = value; }

    // p(X) >= p(Y) for atom masses p.
    static ComparativeOrder from_masses(const FiniteAlgebra& algebra, const std::vector<Rational>& p);

    // False when Outcome Independence failed at derivation: the relation
    // then depends on which prize pair was used.
    bool determinate = true;
    std::optional<std::pair<Outcome, Outcome>> prize_pair;
    std::optional<PreferenceWitness<FiniteEvent>> conflict;

    friend bool operator==(const ComparativeOrder& a, const ComparativeOrder& b) {
        return a.algebra_ == b.algebra_ && a.rel_ == b.rel_;
    }

private:
    FiniteAlgebra algebra_;
    std::size_t n_;
    std::vector<std::uint8_t> rel_;
};

struct OrderFact {
    FiniteEvent x;
    FiniteEvent y;
    bool weak;  // whether X ⪰ Y held
};

struct QpWitness {
    std::string summary;
    std::vector<OrderFact> facts;
};

struct QpResult {
    Verdict verdict = Verdict::Vacuous;
    std::size_t violations = 0;
    std::optional<QpWitness> witness;
};

struct QpReport {
    std::array<QpResult, 4> results;

    const QpResult& operator[](QpCondition c) const { return results[static_cast<int>(c)]; }
    QpResult& operator[](QpCondition c) { return results[static_cast<int>(c)]; }
    bool all_hold() const;
};

// Order holding exactly the witness facts that were true.
ComparativeOrder witness_order(const FiniteAlgebra& algebra, const QpWitness& w);

enum class DerivationPolicy {
    FirstFamily,  // lexicographically first prize pair when families disagree
    Union,        // literal "for some b ≻ w"
};

struct CheckOptions {
    int atom_bound = 6;
};

// Throws Degenerate (no b ≻ w), InconsistentOutcomeOrder (constant-act
// judgments contradict `outcomes`), UnknownOutcome, AtomBoundExceeded.
ComparativeOrder derive_comparative(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra,
                                    DerivationPolicy policy = DerivationPolicy::FirstFamily);

// Relation obtained from a single prize pair; used for stability checks.
ComparativeOrder derive_for_pair(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra,
                                 const Outcome& b, const Outcome& w);

FiniteAxiomReport check_axioms(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra,
                               const CheckOptions& options = {});

QpReport check_qualitative_probability(const ComparativeOrder& order);

struct SampleOptions {
    std::uint64_t seed = 1;
    int depth = 4;              // sampled events are unions of cells at this depth
    std::size_t instances = 200;  // per axiom
    std::size_t budget = 20000;   // oracle queries
};

// Thrown when the budget runs out; carries what was checked so far.
class QueryBudgetError : public Error {
public:
    QueryBudgetError(AxiomReport<DyadicEvent> partial)
        : Error(ErrorCode::QueryBudgetExceeded, "query budget exhausted during sampled axiom check"),
          partial_(std::move(partial)) {}
    const AxiomReport<DyadicEvent>& partial() const { return partial_; }

private:
    AxiomReport<DyadicEvent> partial_;
};

AxiomReport<DyadicEvent> check_axioms_sampled(const Oracle& oracle, const OutcomeSet& outcomes,
                                              const SampleOptions& options = {});

struct EquivalenceResult {
    FiniteAxiomReport axioms;
    QpReport qp;
    bool determinate = false;   // Outcome Independence made ⪰ prize-pair independent
    bool axioms_hold = false;   // all five preference axioms
    bool qualitative = false;   // ⪰ is determinate and a qualitative probability
    bool agrees() const { return axioms_hold == qualitative; }
};

// ⪰ is taken as the literal "for some prize pair" relation, which is only a
// well-defined relation when every prize pair agrees.
EquivalenceResult check_equivalence(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra);
bool equivalence_holds(const FiniteStore& prefs, const OutcomeSet& outcomes, const FiniteAlgebra& algebra);

// (u_m - u_w) / (u_b - u_w). Throws DegenerateUtilities when u_b == u_w and
// BadParams unless u_w <= u_m <= u_b.
Rational ramsey_estimate(const Rational& u_b, const Rational& u_m, const Rational& u_w);

}  // namespace credence
