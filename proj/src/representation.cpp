#include "credence/representation.hpp"

#include "credence/lp.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace credence {

Rational FiniteRepresentation::probability(const FiniteEvent& e) const {
    Rational m = 0;
    for (int i = 0; i < e.atoms(); ++i) {
        if (e.has_atom(i)) m += p[i];
    }
    return m;
}

namespace {

struct MarginSolution {
    lp::Status status = lp::Status::Infeasible;
    Rational margin;
    std::vector<Rational> p;
};

// Variables p_0..p_{m-1}, then δ in [0, 1].
lp::Problem margin_problem(int atoms, const std::vector<OrderConstraint>& constraints) {
    lp::Problem prob;
    prob.variables = atoms + 1;
    prob.add(std::vector<Rational>(atoms, 1), lp::Sense::Equal, 1);
    {
        std::vector<Rational> row(atoms + 1);
        row[atoms] = 1;
        prob.add(std::move(row), lp::Sense::LessEq, 1);
    }
    for (const auto& c : constraints) {
        std::vector<Rational> row(atoms + 1);
        for (int i = 0; i < atoms; ++i) row[i] = Rational(int(c.x.has_atom(i)) - int(c.y.has_atom(i)));
        if (c.strict) {
            row[atoms] = -1;
            prob.add(std::move(row), lp::Sense::GreaterEq, 0);
        } else {
            prob.add(std::move(row), lp::Sense::Equal, 0);
        }
    }
    prob.objective.assign(atoms + 1, 0);
    prob.objective[atoms] = 1;
    return prob;
}

MarginSolution solve_margin(int atoms, const std::vector<OrderConstraint>& constraints) {
    auto sol = lp::solve(margin_problem(atoms, constraints));
    MarginSolution out;
    out.status = sol.status;
    if (sol.status == lp::Status::Optimal) {
        out.margin = sol.value;
        out.p.assign(sol.x.begin(), sol.x.begin() + atoms);
    }
    return out;
}

bool representable(int atoms, const std::vector<OrderConstraint>& constraints) {
    auto s = solve_margin(atoms, constraints);
    return s.status == lp::Status::Optimal && s.margin > 0;
}

// Deletion filter: drops every constraint not needed for the conflict.
std::vector<OrderConstraint> irreducible_conflict(int atoms, std::vector<OrderConstraint> constraints) {
    for (std::size_t i = 0; i < constraints.size();) {
        auto trial = constraints;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (!representable(atoms, trial)) {
            constraints = std::move(trial);
        } else {
            ++i;
        }
    }
    return constraints;
}

}  // namespace

std::optional<Rational> representation_margin(int atoms, const std::vector<OrderConstraint>& constraints) {
    auto s = solve_margin(atoms, constraints);
    if (s.status != lp::Status::Optimal) return std::nullopt;
    return s.margin;
}

std::vector<OrderConstraint> chain_constraints(const ComparativeOrder& order) {
    auto events = order.algebra().events();
    std::stable_sort(events.begin(), events.end(),
                     [&](const FiniteEvent& a, const FiniteEvent& b) { return order.strict(b, a); });
    std::vector<OrderConstraint> out;
    for (std::size_t i = 1; i < events.size(); ++i) {
        out.push_back({events[i], events[i - 1], order.strict(events[i], events[i - 1])});
    }
    return out;
}

FiniteRepresentation represent_finite(const ComparativeOrder& order) {
    auto qp = check_qualitative_probability(order);
    if (!qp.all_hold()) {
        std::string failed;
        for (QpCondition c : kQpConditions) {
            if (qp[c].verdict == Verdict::Fail) failed += (failed.empty() ? "" : ", ") + std::string(to_string(c));
        }
        throw Error(ErrorCode::NotQualitative, "order is not a qualitative probability: " + failed);
    }
    const int m = order.algebra().atoms();
    auto constraints = chain_constraints(order);
    auto best = solve_margin(m, constraints);
    if (best.status != lp::Status::Optimal || best.margin == 0) {
        throw NotRepresentableError(irreducible_conflict(m, constraints));
    }

    FiniteRepresentation rep;
    rep.p = best.p;
    rep.margin = best.margin;
    rep.unique = true;
    auto prob = margin_problem(m, constraints);
    {
        std::vector<Rational> row(m + 1);
        row[m] = 1;
        prob.add(std::move(row), lp::Sense::GreaterEq, best.margin / 2);
    }
    for (int i = 0; i < m && rep.unique; ++i) {
        prob.objective.assign(m + 1, 0);
        prob.objective[i] = 1;
        prob.maximize = true;
        Rational hi = lp::solve(prob).value;
        prob.maximize = false;
        Rational lo = lp::solve(prob).value;
        rep.unique = lo == hi;
    }
    return rep;
}

std::optional<KraftInstance> find_kraft_gap(int atoms, int max_weight, int max_ties) {
    if (atoms < 1 || atoms > 6 || max_weight < 1) throw Error(ErrorCode::BadParams, "kraft search bounds");
    FiniteAlgebra alg(atoms);
    const std::uint32_t n = 1u << atoms;
    std::size_t examined = 0;
    std::vector<int> w(atoms, 1);
    while (true) {
        std::vector<int> sum(n, 0);
        for (std::uint32_t e = 0; e < n; ++e) {
            for (int i = 0; i < atoms; ++i) {
                if ((e >> i) & 1u) sum[e] += w[i];
            }
        }
        // Disjoint nonempty pairs with equal weight; each gets an orientation.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> ties;
        for (std::uint32_t x = 1; x < n; ++x) {
            for (std::uint32_t y = x + 1; y < n; ++y) {
                if ((x & y) == 0 && sum[x] == sum[y]) ties.emplace_back(x, y);
            }
        }
        const int k = static_cast<int>(ties.size());
        if (k > 0 && k <= max_ties) {
            std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> index;
            for (std::size_t t = 0; t < ties.size(); ++t) index[ties[t]] = t;
            for (std::uint32_t choice = 0; choice < (1u << k); ++choice) {
                ComparativeOrder order(alg);
                for (std::uint32_t a = 0; a < n; ++a) {
                    for (std::uint32_t b = 0; b < n; ++b) {
                        bool weak;
                        if (sum[a] != sum[b]) {
                            weak = sum[a] > sum[b];
                        } else if (a == b) {
                            weak = true;
                        } else {
                            std::uint32_t xa = a & ~b, yb = b & ~a;
                            bool forward = xa < yb;
                            std::size_t t = index.at(forward ? std::pair{xa, yb} : std::pair{yb, xa});
                            bool first_wins = !((choice >> t) & 1u);
                            weak = forward == first_wins;
                        }
                        order.set(alg.event(a), alg.event(b), weak);
                    }
                }
                ++examined;
                if (!check_qualitative_probability(order).all_hold()) continue;
                auto constraints = chain_constraints(order);
                if (representable(atoms, constraints)) continue;
                KraftInstance out{w, order, irreducible_conflict(atoms, constraints), examined - 1};
                return out;
            }
        }
        // Next nondecreasing weight vector.
        int i = atoms - 1;
        while (i >= 0 && w[i] == max_weight) --i;
        if (i < 0) break;
        ++w[i];
        for (int j = i + 1; j < atoms; ++j) w[j] = w[i];
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

Judgment OracleChannel::ask(const DyadicAct& left, const DyadicAct& right, std::string_view purpose) {
    Judgment j = oracle_.compare(left, right);
    log_.push_back({left, right, j, std::string(purpose)});
    return j;
}

namespace {

constexpr bool weakly_left(Judgment j) { return j == Judgment::LeftWeak || j == Judgment::Both; }

// Answers for a pair of events whose test acts are both constant.
std::optional<Judgment> structural(const DyadicEvent& x, const DyadicEvent& y) {
    if (x == y) return Judgment::Both;
    bool xc = x.is_empty() || x.is_omega(), yc = y.is_empty() || y.is_omega();
    if (xc && yc) return x.is_omega() ? Judgment::LeftWeak : Judgment::RightWeak;
    return std::nullopt;
}

Dyadic to_dyadic(const Rational& r) {
    Rational v = r;
    v.canonicalize();
    mpz_class den = v.get_den();
    int exp = 0;
    while (den > 1) {
        if (mpz_odd_p(den.get_mpz_t())) throw Error(ErrorCode::BadParams, "not a dyadic rational");
        den >>= 1;
        ++exp;
    }
    if (exp > kMaxDyadicExponent) throw Error(ErrorCode::DepthLimit, "dyadic needs more than 64 bits");
    return Dyadic(mpz_get_ui(v.get_num().get_mpz_t()), exp);
}

std::string cell_label(int depth, std::uint64_t i) {
    return "cell " + std::to_string(i) + " of " + std::to_string(std::uint64_t{1} << depth);
}

}  // namespace

Ladder::Ladder(QueryChannel& channel, LadderOptions options) : channel_(channel), options_(std::move(options)) {
    if (options_.split_cap < 1 || options_.split_cap > kMaxDyadicExponent - 1) {
        throw Error(ErrorCode::BadParams, "split cap must lie in 1..63");
    }
    if (options_.good == options_.bad) throw Error(ErrorCode::BadParams, "ladder prizes must differ");
}

Judgment Ladder::compare(const DyadicEvent& x, const DyadicEvent& y, std::string_view purpose) {
    if (auto s = structural(x, y)) return *s;
    auto f = test_act(options_.good, options_.bad, x), g = test_act(options_.good, options_.bad, y);
    Judgment j = channel_.ask(f, g, purpose);
    QueryRecord rec{f, g, j, std::string(purpose)};
    if (j == Judgment::Incomparable || j == Judgment::Unknown) {
        throw InconsistentAnswersError("test acts judged incomparable, violating Restricted Ordering", {rec});
    }
    if ((x.contains(y) && j == Judgment::RightWeak) || (y.contains(x) && j == Judgment::LeftWeak)) {
        throw InconsistentAnswersError("an event judged strictly less probable than one of its subsets", {rec});
    }
    return j;
}

const Ladder::Split& Ladder::split(int depth, std::uint64_t odd) {
    auto key = std::pair{depth, odd};
    if (auto it = splits_.find(key); it != splits_.end()) return it->second;

    const std::uint64_t parent = odd / 2;
    Dyadic lo = boundary(depth - 1, parent), hi = boundary(depth - 1, parent + 1);
    Rational inherited = (slack(depth - 1, parent) + slack(depth - 1, parent + 1)) / 2;
    const std::string label = "median of " + cell_label(depth - 1, parent);

    // Bisection over the grid of multiples of 2^-cap, where every boundary lives.
    const int cap = options_.split_cap;
    auto grid = [&](std::uint64_t i) { return Dyadic(i, cap); };
    std::uint64_t a = static_cast<std::uint64_t>(lo.scaled(cap)), b = static_cast<std::uint64_t>(hi.scaled(cap));
    while (b - a > 1) {
        std::uint64_t mid = a + (b - a) / 2;
        Dyadic t = grid(mid);
        Judgment j = compare(DyadicEvent::interval(lo, t), DyadicEvent::interval(t, hi), label);
        if (j == Judgment::Both) return splits_.emplace(key, Split{t, true, inherited}).first->second;
        (j == Judgment::LeftWeak ? b : a) = mid;
    }
    Dyadic s_lo = grid(a), s_hi = grid(b);

    // Stopped at resolution: the final sliver must be negligible next to
    // both remaining sides, or the cell's mass sits on a point.
    if (s_lo == lo || s_hi == hi) {
        throw Error(ErrorCode::NoMedianFound, "no median inside " + cell_label(depth - 1, parent) +
                                                  ": preference is strict down to the split resolution");
    }
    auto sliver = DyadicEvent::interval(s_lo, s_hi);
    if (weakly_left(compare(sliver, DyadicEvent::interval(lo, s_lo), label + ", atom check")) ||
        weakly_left(compare(sliver, DyadicEvent::interval(s_hi, hi), label + ", atom check"))) {
        throw Error(ErrorCode::NoMedianFound, "median of " + cell_label(depth - 1, parent) + " falls on an atom near " +
                                                  s_lo.to_string());
    }
    Dyadic point = options_.tie_break == TieBreak::Upper ? s_hi : s_lo;
    return splits_.emplace(key, Split{point, false, inherited + pow2_inverse(options_.split_cap)}).first->second;
}

Dyadic Ladder::boundary(int depth, std::uint64_t i) {
    if (depth < 0 || depth > kMaxMeasureDepth) throw Error(ErrorCode::BadParams, "ladder depth out of range");
    const std::uint64_t n = std::uint64_t{1} << depth;
    if (i > n) throw Error(ErrorCode::BadParams, "ladder boundary index out of range");
    if (i == 0) return Dyadic::zero();
    if (i == n) return Dyadic::one();
    int shift = std::countr_zero(i);
    return split(depth - shift, i >> shift).point;
}

Rational Ladder::slack(int depth, std::uint64_t i) {
    const std::uint64_t n = std::uint64_t{1} << depth;
    if (i == 0 || i == n) return 0;
    int shift = std::countr_zero(i);
    return split(depth - shift, i >> shift).slack;
}

DyadicEvent Ladder::cell(int depth, std::uint64_t i) {
    return DyadicEvent::interval(boundary(depth, i), boundary(depth, i + 1));
}

DyadicEvent Ladder::prefix(int depth, std::uint64_t k) {
    if (k == 0) return DyadicEvent::empty();
    return DyadicEvent::interval(Dyadic::zero(), boundary(depth, k));
}

void Ladder::complete(int depth) {
    const std::uint64_t n = std::uint64_t{1} << depth;
    for (std::uint64_t i = 0; i <= n; ++i) boundary(depth, i);
}

PartitionLadder build_equiprobable_partition(const Oracle& oracle, int depth, const LadderOptions& options) {
    if (depth < 0 || depth > DyadicAlgebra::kMaxMaterializedDepth) {
        throw Error(ErrorCode::BadParams, "partition depth must lie in 0..24");
    }
    OracleChannel channel(oracle);
    Ladder ladder(channel, options);
    ladder.complete(depth);
    PartitionLadder out;
    out.depth = depth;
    out.options = options;
    const std::uint64_t n = std::uint64_t{1} << depth;
    for (std::uint64_t i = 0; i <= n; ++i) {
        out.boundaries.push_back(ladder.boundary(depth, i));
        out.slack.push_back(ladder.slack(depth, i));
    }
    for (std::uint64_t i = 0; i < n; ++i) out.cells.push_back(DyadicEvent::interval(out.boundaries[i], out.boundaries[i + 1]));
    out.log = channel.log();
    return out;
}

namespace {

ProbabilityBracket make_bracket(const DyadicEvent& x, int depth, std::uint64_t k, Rational slack) {
    ProbabilityBracket b;
    b.event = x;
    b.depth = depth;
    b.n = std::uint64_t{1} << depth;
    b.k = k;
    Rational n(static_cast<unsigned long>(b.n));
    b.lo = Rational(static_cast<unsigned long>(k)) / n;
    b.hi = k == b.n ? Rational(1) : Rational(static_cast<unsigned long>(k + 1)) / n;
    b.estimate = b.lo;
    b.slack = std::move(slack);
    return b;
}

}  // namespace

ProbabilityBracket k_of(const DyadicEvent& x, const PartitionLadder& ladder, const Oracle& oracle) {
    OracleChannel channel(oracle);
    Ladder probe(channel, ladder.options);
    const std::uint64_t n = std::uint64_t{1} << ladder.depth;
    auto prefix = [&](std::uint64_t k) {
        return k == 0 ? DyadicEvent::empty() : DyadicEvent::interval(Dyadic::zero(), ladder.boundaries[k]);
    };
    std::map<std::uint64_t, bool> seen;
    auto at_least = [&](std::uint64_t k) {
        bool v = weakly_left(probe.compare(x, prefix(k), "k-search C(" + std::to_string(k) + "," + std::to_string(n) + ")"));
        seen[k] = v;
        return v;
    };
    std::uint64_t lo = 0, hi = n + 1;  // X ⪰ C(lo), X ⋡ C(hi)
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        (at_least(mid) ? lo : hi) = mid;
    }
    // Every recorded answer must agree with the threshold found.
    for (auto [k, v] : seen) {
        if (v != (k <= lo)) {
            throw InconsistentAnswersError("k-search answers are not monotone in k", channel.log());
        }
    }
    Rational slack = ladder.slack[lo];
    if (lo < n) slack = std::max(slack, ladder.slack[lo + 1]);
    auto b = make_bracket(x, ladder.depth, lo, slack);
    b.queries = channel.log().size();
    return b;
}

ProbabilityBracket k_search(Ladder& ladder, const DyadicEvent& x, int depth,
                            const std::function<void(const ProbabilityBracket&)>& on_step) {
    if (depth < 0 || depth > kMaxMeasureDepth) throw Error(ErrorCode::BadParams, "measurement depth out of range");
    const std::uint64_t n = std::uint64_t{1} << depth;
    std::uint64_t lo = 0, hi = n + 1;
    auto bracket = [&] {
        std::uint64_t top = std::min(hi, n);
        auto b = make_bracket(x, depth, lo, std::max(ladder.slack(depth, lo), ladder.slack(depth, top)));
        b.hi = Rational(static_cast<unsigned long>(top)) / Rational(static_cast<unsigned long>(n));
        return b;
    };
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        std::string label = "k-search C(" + std::to_string(mid) + "," + std::to_string(n) + ")";
        (weakly_left(ladder.compare(x, ladder.prefix(depth, mid), label)) ? lo : hi) = mid;
        if (on_step) on_step(bracket());
    }
    return bracket();
}

std::vector<ProbabilityBracket> measure_trace(Ladder& ladder, const DyadicEvent& x, int depth) {
    if (depth < 0 || depth > kMaxMeasureDepth) throw Error(ErrorCode::BadParams, "measurement depth out of range");
    std::vector<ProbabilityBracket> out;
    std::uint64_t k = weakly_left(ladder.compare(x, DyadicEvent::omega(), "k-search C(1,1)")) ? 1 : 0;
    out.push_back(make_bracket(x, 0, k, 0));
    for (int m = 1; m <= depth; ++m) {
        const std::uint64_t n = std::uint64_t{1} << m;
        if (k == n / 2) {
            k = n;
        } else {
            std::uint64_t probe = 2 * k + 1;
            auto c = ladder.prefix(m, probe);
            std::string label = "k-search C(" + std::to_string(probe) + "," + std::to_string(n) + ")";
            k = weakly_left(ladder.compare(x, c, label)) ? probe : 2 * k;
        }
        Rational slack = ladder.slack(m, k);
        if (k < n) slack = std::max(slack, ladder.slack(m, k + 1));
        out.push_back(make_bracket(x, m, k, slack));
    }
    return out;
}

int depth_for_tolerance(const Rational& eps) {
    if (eps <= 0 || eps > 1) throw Error(ErrorCode::BadParams, "tolerance must lie in (0, 1]");
    int m = exponent_for_tolerance(eps);
    if (m > kMaxMeasureDepth) {
        throw Error(ErrorCode::BadParams, "tolerance below 2^-" + std::to_string(kMaxMeasureDepth));
    }
    return m;
}

ProbabilityBracket measure_probability(const Oracle& oracle, const DyadicEvent& x, const Rational& eps,
                                       const LadderOptions& options, std::vector<ProbabilityBracket>* trace) {
    const int depth = depth_for_tolerance(eps);
    OracleChannel channel(oracle);
    Ladder ladder(channel, options);
    auto brackets = measure_trace(ladder, x, depth);
    brackets.back().queries = channel.log().size();
    if (trace) *trace = brackets;
    return brackets.back();
}

std::string trace_csv(const std::vector<ProbabilityBracket>& trace) {
    std::ostringstream out;
    out << "m,n,k,lo,hi\n";
    for (const auto& b : trace) {
        out << b.depth << ',' << b.n << ',' << b.k << ',' << to_string(b.lo) << ',' << to_string(b.hi) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------

RichnessResult check_event_richness(const ComparativeOrder& order) {
    const auto& alg = order.algebra();
    const int m = alg.atoms();
    if (m > 8) throw Error(ErrorCode::AtomBoundExceeded, "event richness check supports at most 8 atoms");
    const std::uint32_t n = 1u << m, full = n - 1;

    // Can Ω be cut into cells Y, all with x ≻ z ∪ Y?
    auto partition_exists = [&](std::uint32_t x, std::uint32_t z) {
        std::vector<char> good(n, 0), can(n, 0);
        for (std::uint32_t y = 1; y < n; ++y) good[y] = order.strict(alg.event(x), alg.event(z | y));
        can[0] = 1;
        for (std::uint32_t mask = 1; mask < n; ++mask) {
            std::uint32_t low = mask & (~mask + 1);
            for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
                if ((sub & low) && good[sub] && can[mask ^ sub]) {
                    can[mask] = 1;
                    break;
                }
            }
        }
        return can[full] != 0;
    };

    RichnessResult r;
    const auto empty = alg.empty();
    std::vector<std::uint32_t> above_empty;
    for (std::uint32_t x = 1; x < n; ++x) {
        if (order.strict(alg.event(x), empty)) above_empty.push_back(x);
    }
    for (std::uint32_t x : above_empty) {
        bool minimal = std::none_of(above_empty.begin(), above_empty.end(), [&](std::uint32_t y) {
            return order.strict(alg.event(x), alg.event(y));
        });
        if (!minimal) continue;
        ++r.pairs_checked;
        if (!partition_exists(x, 0)) {
            r.verdict = Verdict::Fail;
            r.witness = std::pair{alg.event(x), empty};
            r.minimal = true;
            return r;
        }
    }
    bool any_strict = false;
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t z = 0; z < n; ++z) {
            if (!order.strict(alg.event(x), alg.event(z))) continue;
            any_strict = true;
            ++r.pairs_checked;
            if (!partition_exists(x, z)) {
                r.verdict = Verdict::Fail;
                r.witness = std::pair{alg.event(x), alg.event(z)};
                return r;
            }
        }
    }
    r.verdict = any_strict ? Verdict::Pass : Verdict::Vacuous;
    return r;
}

namespace {

// Plain test-act comparisons with a per-run cache and no structural guard;
// structure checks must see the oracle's answers as given.
class Prober {
public:
    Prober(const Oracle& oracle, const LadderOptions& prizes) : channel_(oracle), prizes_(prizes) {}

    Judgment compare(const DyadicEvent& x, const DyadicEvent& y) {
        if (auto s = structural(x, y)) return *s;
        auto key = std::pair{x, y};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        Judgment j = channel_.ask(test_act(prizes_.good, prizes_.bad, x), test_act(prizes_.good, prizes_.bad, y), "");
        cache_.emplace(key, j);
        return j;
    }
    std::size_t queries() const { return channel_.log().size(); }

private:
    OracleChannel channel_;
    const LadderOptions& prizes_;
    std::map<std::pair<DyadicEvent, DyadicEvent>, Judgment> cache_;
};

}  // namespace

DyadicRichnessResult check_event_richness(const Oracle& oracle,
                                          const std::vector<std::pair<DyadicEvent, DyadicEvent>>& pairs, int depth,
                                          const LadderOptions& prizes, int min_depth) {
    if (depth > kMaxRichnessDepth) {
        throw Error(ErrorCode::DepthLimit, "event richness depth above " + std::to_string(kMaxRichnessDepth));
    }
    if (depth < 1 || min_depth < 1 || min_depth > depth) throw Error(ErrorCode::BadParams, "richness depth range");
    Prober probe(oracle, prizes);
    DyadicAlgebra alg;
    DyadicRichnessResult out;
    bool any_pass = false, any_fail = false;
    for (const auto& [x, z] : pairs) {
        DyadicRichnessPair pr;
        pr.x = x;
        pr.z = z;
        if (probe.compare(x, z) != Judgment::LeftWeak) {
            out.pairs.push_back(std::move(pr));
            continue;
        }
        pr.verdict = Verdict::Fail;
        pr.depth = depth;
        for (int d = min_depth; d <= depth && pr.verdict == Verdict::Fail; ++d) {
            std::optional<DyadicEvent> bad;
            for (std::uint64_t j = 0; j < (std::uint64_t{1} << d) && !bad; ++j) {
                auto y = alg.cell(d, j);
                if (probe.compare(x, z | y) != Judgment::LeftWeak) bad = y;
            }
            if (!bad) {
                pr.verdict = Verdict::Pass;
                pr.depth = d;
                pr.failing_cell.reset();
            } else {
                pr.failing_cell = bad;
            }
        }
        if (pr.verdict == Verdict::Pass) {
            any_pass = true;
            out.depth = std::max(out.depth, pr.depth);
        } else {
            any_fail = true;
        }
        out.pairs.push_back(std::move(pr));
    }
    out.verdict = any_fail ? Verdict::Fail : any_pass ? Verdict::Pass : Verdict::Vacuous;
    if (any_fail) out.depth = depth;
    out.queries = probe.queries();
    return out;
}

EventChain truncation_chain(const DyadicEvent& x, int length) {
    if (length < 1) throw Error(ErrorCode::BadParams, "chain length must be positive");
    EventChain chain;
    chain.limit = x;
    for (int k = 1; k <= length; ++k) {
        std::vector<Interval> parts;
        for (const auto& iv : x.intervals()) {
            Rational a = iv.lo.to_rational(), b = iv.hi.to_rational();
            Rational cut = b - (b - a) * pow2_inverse(k);
            parts.push_back({iv.lo, to_dyadic(cut)});
        }
        chain.events.emplace_back(std::move(parts));
    }
    return chain;
}

MpcResult check_mpc(const Oracle& oracle, const std::vector<EventChain>& chains,
                    const std::vector<DyadicEvent>& probes, const LadderOptions& prizes) {
    Prober probe(oracle, prizes);
    MpcResult r;
    r.chains = chains.size();
    bool failed = false;
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const auto& chain = chains[c];
        for (std::size_t i = 1; i < chain.events.size(); ++i) {
            if (!chain.events[i].contains(chain.events[i - 1])) throw Error(ErrorCode::BadParams, "chain is not increasing");
        }
        for (const auto& y : probes) {
            bool triggered = std::all_of(chain.events.begin(), chain.events.end(),
                                         [&](const DyadicEvent& xn) { return weakly_left(probe.compare(y, xn)); });
            if (!triggered) continue;
            ++r.triggered;
            if (weakly_left(probe.compare(y, chain.limit))) continue;
            if (!failed) r.witness = MpcViolation{c, y, chain};
            failed = true;
        }
    }
    r.verdict = failed ? Verdict::Fail : r.triggered > 0 ? Verdict::Pass : Verdict::Vacuous;
    r.queries = probe.queries();
    return r;
}

}  // namespace credence
