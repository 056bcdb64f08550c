#pragma once

#include "credence/comparative.hpp"
#include "credence/dyadic.hpp"
#include "credence/finite.hpp"
#include "credence/oracle.hpp"
#include "credence/outcome.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace credence {

// ---------------------------------------------------------------------------
// Finite algebras

// X ≻ Y when strict, X ≈ Y otherwise.
struct OrderConstraint {
    FiniteEvent x;
    FiniteEvent y;
    bool strict = true;

    friend bool operator==(const OrderConstraint&, const OrderConstraint&) = default;
};

struct FiniteRepresentation {
    std::vector<Rational> p;  // per atom, sums to 1
    Rational margin;          // δ*: p(X) - p(Y) >= δ* whenever X ≻ Y
    bool unique = false;      // per-atom range collapses at δ >= δ*/2

    Rational probability(const FiniteEvent& e) const;
};

class NotRepresentableError : public Error {
public:
    explicit NotRepresentableError(std::vector<OrderConstraint> conflict)
        : Error(ErrorCode::NotRepresentable, "no probability function represents the order"),
          conflict_(std::move(conflict)) {}
    // Irreducible: dropping any one constraint makes the rest representable.
    const std::vector<OrderConstraint>& conflict() const { return conflict_; }

private:
    std::vector<OrderConstraint> conflict_;
};

// Throws NotQualitative when the order is not a qualitative probability and
// NotRepresentableError when δ* = 0 or the system is infeasible.
FiniteRepresentation represent_finite(const ComparativeOrder& order);

// Maximized margin over an explicit constraint set; nullopt when even δ = 0
// is infeasible.
std::optional<Rational> representation_margin(int atoms, const std::vector<OrderConstraint>& constraints);

// Constraints between neighbours in the order's ranking; they imply every
// other comparison, so the LP needs only 2^m - 1 rows.
std::vector<OrderConstraint> chain_constraints(const ComparativeOrder& order);

struct KraftInstance {
    std::vector<int> weights;  // atom weights whose ties were oriented
    ComparativeOrder order;
    std::vector<OrderConstraint> conflict;
    std::size_t candidates = 0;  // orders examined before this one
};

// Qualitative probabilities obtained by orienting the ties of an integer
// weighting, searched in a fixed order, returning the first one no
// probability function represents.
std::optional<KraftInstance> find_kraft_gap(int atoms = 5, int max_weight = 7, int max_ties = 9);

// ---------------------------------------------------------------------------
// Measurement on the dyadic algebra

enum class TieBreak { Upper, Lower };

struct LadderOptions {
    Outcome good = outcome("$1");
    Outcome bad = outcome("$0");
    int split_cap = 40;  // split points never carry more than this many bits
    TieBreak tie_break = TieBreak::Upper;
};

inline constexpr int kMaxMeasureDepth = 30;

struct QueryRecord {
    DyadicAct left;
    DyadicAct right;
    Judgment answer = Judgment::Unknown;
    std::string purpose;
};

// Source of answers to test-act comparisons, either a live oracle or a
// recorded session.
class QueryChannel {
public:
    virtual ~QueryChannel() = default;
    virtual Judgment ask(const DyadicAct& left, const DyadicAct& right, std::string_view purpose) = 0;
};

class OracleChannel final : public QueryChannel {
public:
    explicit OracleChannel(const Oracle& oracle) : oracle_(oracle) {}
    Judgment ask(const DyadicAct& left, const DyadicAct& right, std::string_view purpose) override;
    const std::vector<QueryRecord>& log() const { return log_; }

private:
    const Oracle& oracle_;
    std::vector<QueryRecord> log_;
};

// Carries the answers that contradict each other or the structure.
class InconsistentAnswersError : public Error {
public:
    InconsistentAnswersError(const std::string& message, std::vector<QueryRecord> witness)
        : Error(ErrorCode::InconsistentAnswers, message), witness_(std::move(witness)) {}
    const std::vector<QueryRecord>& witness() const { return witness_; }

private:
    std::vector<QueryRecord> witness_;
};

// Lazily built tower of nested equiprobable partitions: boundary(m, i) is
// the left end of cell i at depth m, and each cell splits at its median.
// Medians are computed on first use, so queries depend only on which cells
// are needed and in what order.
class Ladder {
public:
    Ladder(QueryChannel& channel, LadderOptions options = {});

    const LadderOptions& options() const { return options_; }

    // i in [0, 2^depth].
    Dyadic boundary(int depth, std::uint64_t i);
    DyadicEvent cell(int depth, std::uint64_t i);
    // C(k, 2^depth): the union of the first k cells.
    DyadicEvent prefix(int depth, std::uint64_t k);
    // Bound on |mass(C(k, n)) - k/n| from splits stopped at the resolution cap.
    Rational slack(int depth, std::uint64_t k);

    void complete(int depth);
    std::size_t medians() const { return splits_.size(); }

    // Judgment of the test act on x against the test act on y, with the
    // ladder's prizes. Identical events are indifferent without a query.
    Judgment compare(const DyadicEvent& x, const DyadicEvent& y, std::string_view purpose);

private:
    struct Split {
        Dyadic point;
        bool exact = false;
        Rational slack;
    };
    const Split& split(int depth, std::uint64_t odd_index);

    QueryChannel& channel_;
    LadderOptions options_;
    std::map<std::pair<int, std::uint64_t>, Split> splits_;
};

struct PartitionLadder {
    int depth = 0;
    std::vector<Dyadic> boundaries;  // 2^depth + 1 points from 0 to 1
    std::vector<DyadicEvent> cells;
    std::vector<Rational> slack;     // per boundary
    std::vector<QueryRecord> log;
    LadderOptions options;
};

// Throws BadParams, NoMedianFound, InconsistentAnswersError.
PartitionLadder build_equiprobable_partition(const Oracle& oracle, int depth, const LadderOptions& options = {});

struct ProbabilityBracket {
    DyadicEvent event;
    int depth = 0;
    std::uint64_t n = 1;
    std::uint64_t k = 0;
    Rational lo;        // k/n
    Rational hi;        // min((k+1)/n, 1)
    Rational estimate;  // k/n
    Rational slack;     // ladder imbalance bound; the true value lies in [lo - slack, hi + slack]
    std::size_t queries = 0;
};

// k(X, n) = max k with X ⪰ C(k, n), by binary search against a finished ladder.
ProbabilityBracket k_of(const DyadicEvent& x, const PartitionLadder& ladder, const Oracle& oracle);

// The probes of k_of, run on a live ladder. on_step sees the bracket
// [lo/n, min(hi, n)/n] after every answer; the final bracket is k_of's.
ProbabilityBracket k_search(Ladder& ladder, const DyadicEvent& x, int depth,
                            const std::function<void(const ProbabilityBracket&)>& on_step = {});

// Brackets for depths 0..depth on nested ladders; each depth costs at most
// one median and one comparison.
std::vector<ProbabilityBracket> measure_trace(Ladder& ladder, const DyadicEvent& x, int depth);

// Smallest depth m with 2^-m <= eps. Throws BadParams when eps is not in
// (0, 1] or needs more than kMaxMeasureDepth.
int depth_for_tolerance(const Rational& eps);

ProbabilityBracket measure_probability(const Oracle& oracle, const DyadicEvent& x, const Rational& eps,
                                       const LadderOptions& options = {},
                                       std::vector<ProbabilityBracket>* trace = nullptr);

// Rows "m,n,k,lo,hi" with exact rationals.
std::string trace_csv(const std::vector<ProbabilityBracket>& trace);

// ---------------------------------------------------------------------------
// Structure axioms

struct RichnessResult {
    Verdict verdict = Verdict::Vacuous;
    // Finite: the failing pair (x, z), x minimal above ∅ when z is empty.
    std::optional<std::pair<FiniteEvent, FiniteEvent>> witness;
    bool minimal = false;  // witness is the least event above ∅
    // Finite pass: a partition for every strict pair exists.
    std::size_t pairs_checked = 0;
};

// Exhaustive over partitions, by subset dynamic programming. Throws
// AtomBoundExceeded above 8 atoms.
RichnessResult check_event_richness(const ComparativeOrder& order);

struct DyadicRichnessPair {
    DyadicEvent x;
    DyadicEvent z;
    Verdict verdict = Verdict::Vacuous;  // vacuous when x ≻ z was not confirmed
    int depth = 0;                       // partition depth that worked, or depth searched
    std::optional<DyadicEvent> failing_cell;
};

struct DyadicRichnessResult {
    Verdict verdict = Verdict::Vacuous;
    int depth = 0;  // deepest partition needed among passing pairs
    std::vector<DyadicRichnessPair> pairs;
    std::size_t queries = 0;
};

inline constexpr int kMaxRichnessDepth = 16;

// For each pair, looks for the shallowest depth in [min_depth, depth] whose
// 2^depth cells Y all keep x ≻ z ∪ Y. Pass and fail are at that depth only.
// Throws DepthLimit when depth exceeds kMaxRichnessDepth.
DyadicRichnessResult check_event_richness(const Oracle& oracle,
                                          const std::vector<std::pair<DyadicEvent, DyadicEvent>>& pairs, int depth,
                                          const LadderOptions& prizes = {}, int min_depth = 1);

// Increasing events x_1 ⊆ x_2 ⊆ ... with declared union.
struct EventChain {
    std::vector<DyadicEvent> events;
    DyadicEvent limit;
};

// [a_i, b_i - (b_i - a_i) 2^-n) for each interval of x, n = 1..length.
EventChain truncation_chain(const DyadicEvent& x, int length);

struct MpcViolation {
    std::size_t chain = 0;
    DyadicEvent probe;
    EventChain events;
};

struct MpcResult {
    Verdict verdict = Verdict::Vacuous;
    std::size_t chains = 0;
    std::size_t triggered = 0;  // (chain, probe) pairs with probe ⪰ every x_n
    std::optional<MpcViolation> witness;
    std::size_t queries = 0;
};

// Where a probe beats every link of a chain it must also beat the limit.
// A finite-length check: passing is evidence, not proof.
MpcResult check_mpc(const Oracle& oracle, const std::vector<EventChain>& chains,
                    const std::vector<DyadicEvent>& probes, const LadderOptions& prizes = {});

}  // namespace credence
