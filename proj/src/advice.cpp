#include "credence/advice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace credence {

std::string_view to_string(Comparison c) {
    switch (c) {
        case Comparison::Greater: return ">";
        case Comparison::Equal: return "=";
        case Comparison::Less: return "<";
        case Comparison::AtLeast: return ">=";
        case Comparison::AtMost: return "<=";
        case Comparison::Unknown: return "?";
    }
    return "?";
}

Comparison mirror(Comparison c) {
    switch (c) {
        case Comparison::Greater: return Comparison::Less;
        case Comparison::Less: return Comparison::Greater;
        case Comparison::AtLeast: return Comparison::AtMost;
        case Comparison::AtMost: return Comparison::AtLeast;
        default: return c;
    }
}

std::string_view to_string(Dominance d) {
    switch (d) {
        case Dominance::Equivalent: return "equivalent";
        case Dominance::Dominates: return "dominates";
        case Dominance::StrictlyDominates: return "strictly-dominates";
        case Dominance::Dominated: return "dominated";
        case Dominance::StrictlyDominated: return "strictly-dominated";
        case Dominance::Incomparable: return "incomparable";
    }
    return "?";
}

Dominance mirror(Dominance d) {
    switch (d) {
        case Dominance::Dominates: return Dominance::Dominated;
        case Dominance::StrictlyDominates: return Dominance::StrictlyDominated;
        case Dominance::Dominated: return Dominance::Dominates;
        case Dominance::StrictlyDominated: return Dominance::StrictlyDominates;
        default: return d;
    }
}

bool dominates(Dominance d) {
    return d == Dominance::Equivalent || d == Dominance::Dominates || d == Dominance::StrictlyDominates;
}

namespace {

void check_declared(const FiniteAct& act, const OutcomeSet& outcomes) {
    for (const auto& o : act.outcomes()) {
        if (!outcomes.contains(o)) throw Error(ErrorCode::UnknownOutcome, "act pays undeclared outcome " + o.id);
    }
}

// Fills relation and the witness lists from the row comparisons.
void classify(DominanceVerdict& v) {
    bool all_equal = true, up = true, down = true, some_greater = false, some_less = false;
    for (const auto& row : v.profile) {
        Comparison c = row.comparison;
        if (c == Comparison::Equal) v.tight.push_back(row.threshold);
        if (c == Comparison::Greater) v.strict.push_back(row.threshold);
        if (c == Comparison::Less) v.violated.push_back(row.threshold);
        all_equal = all_equal && c == Comparison::Equal;
        up = up && (c == Comparison::Greater || c == Comparison::Equal || c == Comparison::AtLeast);
        down = down && (c == Comparison::Less || c == Comparison::Equal || c == Comparison::AtMost);
        some_greater = some_greater || c == Comparison::Greater;
        some_less = some_less || c == Comparison::Less;
    }
    if (all_equal) {
        v.relation = Dominance::Equivalent;
    } else if (up) {
        v.relation = some_greater ? Dominance::StrictlyDominates : Dominance::Dominates;
    } else if (down) {
        v.relation = some_less ? Dominance::StrictlyDominated : Dominance::Dominated;
    } else {
        v.relation = Dominance::Incomparable;
    }
}

Comparison compare_numbers(const Rational& a, const Rational& b) {
    return a > b ? Comparison::Greater : a < b ? Comparison::Less : Comparison::Equal;
}

void check_options(const std::vector<LabeledAct>& options, const OutcomeSet& outcomes, int atoms) {
    if (options.empty()) throw Error(ErrorCode::BadParams, "no options to advise on");
    std::set<std::string> labels;
    for (const auto& o : options) {
        if (!labels.insert(o.label).second) throw Error(ErrorCode::BadParams, "duplicate option label " + o.label);
        check_declared(o.act, outcomes);
        if (atoms >= 0 && o.act.parts().front().event.atoms() != atoms) {
            throw Error(ErrorCode::BadParams, "option " + o.label + " is over a different algebra");
        }
    }
}

// Flags, recommendation and note from the pairwise verdicts.
void summarize(AdviceReport& report, const std::vector<LabeledAct>& options) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < options.size(); ++i) {
        index[options[i].label] = i;
        report.options.push_back(OptionAdvice{options[i].label, false, std::nullopt, std::nullopt});
    }
    auto flag = [&](std::size_t loser, const std::string& winner, const DominanceVerdict& v, bool mirrored) {
        auto& o = report.options[loser];
        if (o.dominated) return;
        o.dominated = true;
        o.dominated_by = winner;
        o.witness = mirrored ? v.violated.front() : v.strict.front();
    };
    for (const auto& pv : report.pairs) {
        if (pv.verdict.relation == Dominance::StrictlyDominates) flag(index[pv.g], pv.f, pv.verdict, false);
        if (pv.verdict.relation == Dominance::StrictlyDominated) flag(index[pv.f], pv.g, pv.verdict, true);
    }
    bool any = std::any_of(report.options.begin(), report.options.end(), [](const auto& o) { return o.dominated; });
    if (!any) {
        report.note = "no dominance relation among the options";
        return;
    }
    for (const auto& o : report.options) {
        if (!o.dominated) report.recommended.push_back(o.label);
    }
    report.note = "strictly dominated options removed; the remaining options are not ranked";
}

// ---------------------------------------------------------------------------
// Comparative knowledge from test-act judgments

struct Fact {
    Comparison relation = Comparison::Unknown;
    FiniteEvent x;  // events of the elicited test acts, oriented as the key
    FiniteEvent y;
    std::size_t family = 0;
    JudgmentRecord<FiniteEvent> record;
};

using CoreKey = std::pair<std::uint32_t, std::uint32_t>;

struct TestPair {
    FiniteEvent x;
    FiniteEvent y;
    std::size_t family;
};

class Knowledge {
public:
    Knowledge(const FiniteStore& store, const OutcomeSet& outcomes, const FiniteAlgebra& algebra)
        : algebra_(algebra), families_(outcomes.strict_pairs()) {
        report_.results.fill(AxiomResult<FiniteEvent>{Verdict::Vacuous, 0, std::nullopt});
        report_[Axiom::NonDegeneracy].verdict = families_.empty() ? Verdict::Fail : Verdict::Pass;
        if (families_.empty()) {
            fail(Axiom::NonDegeneracy, "no outcome is strictly preferred to another", {});
        }
        for (const auto& r : store.records()) {
            for (const auto* act : {&r.left, &r.right}) {
                check_declared(*act, outcomes);
                if (act->parts().front().event.atoms() != algebra.atoms()) {
                    throw Error(ErrorCode::BadParams, "judgment act from a different algebra");
                }
            }
            auto tp = as_test_pair(r.left, r.right);
            if (!tp) continue;
            add(*tp, r);
        }
        check_transitivity();
        for (auto a : {Axiom::OutcomeIndependence, Axiom::RestrictedOrdering, Axiom::CertainPrize,
                       Axiom::AlternativePrize}) {
            if (report_[a].verdict == Verdict::Vacuous && instances_[static_cast<int>(a)] > 0) {
                report_[a].verdict = Verdict::Pass;
            }
        }
    }

    const AxiomReport<FiniteEvent>& report() const { return report_; }
    bool consistent() const { return report_.all_hold(); }

    // How U compares to V, with the inferences that establish it.
    Comparison lookup(const FiniteEvent& u, const FiniteEvent& v, std::vector<Inference>& chain) const {
        if (u == v) {
            chain.push_back({"identity", u, v, Comparison::Equal, std::nullopt, "both upper sets are " + d(u)});
            return Comparison::Equal;
        }
        FiniteEvent a = u - v, b = v - u, z = u & v;
        auto it = facts_.find({a.bits(), b.bits()});
        if (it != facts_.end()) {
            const Fact& f = it->second;
            Comparison rel = f.relation;
            chain.push_back({"elicited", f.x, f.y, rel, std::nullopt,
                             "the bet on " + d(f.x) + " was judged " + std::string(to_string(rel)) + " the bet on " +
                                 d(f.y)});
            bool direct = f.x == u && f.y == v;
            if (!direct && (f.x != a || f.y != b)) {
                chain.push_back({"alternative-prize", a, b, rel, f.x & f.y,
                                 "removing the common part " + d(f.x & f.y) + " gives " + d(a) + " " +
                                     std::string(to_string(rel)) + " " + d(b)});
            }
            if (!direct && (a != u || b != v)) {
                chain.push_back({"alternative-prize", u, v, rel, z,
                                 "adding the common part " + d(z) + " gives " + d(u) + " " +
                                     std::string(to_string(rel)) + " " + d(v)});
            }
            return rel;
        }
        if (a.is_omega() && b.is_empty()) return sure_versus_nothing(u, v, chain, Comparison::Greater);
        if (b.is_omega() && a.is_empty()) return sure_versus_nothing(u, v, chain, Comparison::Less);
        if (b.is_empty() || a.is_empty()) {
            Comparison rel = b.is_empty() ? Comparison::AtLeast : Comparison::AtMost;
            const FiniteEvent& big = b.is_empty() ? u : v;
            const FiniteEvent& small = b.is_empty() ? v : u;
            chain.push_back({"certain-prize", big - small, algebra_.empty(), Comparison::AtLeast, std::nullopt,
                             "a bet on " + d(big - small) + " is at least as good as the sure booby prize"});
            if (!small.is_empty()) {
                chain.push_back({"alternative-prize", u, v, rel, small,
                                 "adding the common part " + d(small) + " gives " + d(u) + " " +
                                     std::string(to_string(rel)) + " " + d(v)});
            }
            return rel;
        }
        return Comparison::Unknown;
    }

private:
    std::string d(const FiniteEvent& e) const { return algebra_.describe(e); }

    Comparison sure_versus_nothing(const FiniteEvent& u, const FiniteEvent& v, std::vector<Inference>& chain,
                                   Comparison rel) const {
        chain.push_back({"non-degeneracy", u, v, rel, std::nullopt,
                         "the sure prize is strictly better than the sure booby prize"});
        return rel;
    }

    // Events of a pair of test acts sharing one prize pair.
    std::optional<TestPair> as_test_pair(const FiniteAct& l, const FiniteAct& r) const {
        if (l.is_constant() && r.is_constant()) return std::nullopt;
        if (l.outcome_count() > 2 || r.outcome_count() > 2) return std::nullopt;
        for (std::size_t f = 0; f < families_.size(); ++f) {
            const auto& [b, w] = families_[f];
            auto event = [&](const FiniteAct& act) -> std::optional<FiniteEvent> {
                for (const auto& o : act.outcomes()) {
                    if (o != b && o != w) return std::nullopt;
                }
                return act.event_of(b);
            };
            auto x = event(l), y = event(r);
            if (x && y) return TestPair{*x, *y, f};
        }
        return std::nullopt;
    }

    void fail(Axiom a, std::string summary, std::vector<JudgmentRecord<FiniteEvent>> judgments) {
        auto& res = report_[a];
        res.verdict = Verdict::Fail;
        ++res.violations;
        if (!res.witness) res.witness = PreferenceWitness<FiniteEvent>{std::move(summary), std::move(judgments)};
    }

    void add(const TestPair& tp, const JudgmentRecord<FiniteEvent>& r) {
        ++instances_[static_cast<int>(Axiom::RestrictedOrdering)];
        if (r.judgment == Judgment::Incomparable || r.judgment == Judgment::Unknown) {
            fail(Axiom::RestrictedOrdering, "bets on " + d(tp.x) + " and " + d(tp.y) + " were not compared", {r});
            return;
        }
        Comparison rel = r.judgment == Judgment::LeftWeak    ? Comparison::Greater
                         : r.judgment == Judgment::RightWeak ? Comparison::Less
                                                             : Comparison::Equal;
        edges_[tp.family].push_back({tp.x, tp.y, rel, r});
        FiniteEvent a = tp.x - tp.y, b = tp.y - tp.x;
        ++instances_[static_cast<int>(Axiom::CertainPrize)];
        if ((a.is_empty() && rel == Comparison::Greater) || (b.is_empty() && rel == Comparison::Less)) {
            const auto& sub = a.is_empty() ? tp.x : tp.y;
            const auto& super = a.is_empty() ? tp.y : tp.x;
            fail(Axiom::CertainPrize,
                 "the bet on " + d(sub) + " is strictly preferred to the bet on its superset " + d(super), {r});
            return;
        }
        insert(a, b, Fact{rel, tp.x, tp.y, tp.family, r});
        insert(b, a, Fact{mirror(rel), tp.y, tp.x, tp.family, r});
    }

    void insert(const FiniteEvent& a, const FiniteEvent& b, Fact fact) {
        CoreKey key{a.bits(), b.bits()};
        auto it = facts_.find(key);
        if (it == facts_.end()) {
            facts_.emplace(key, std::move(fact));
            return;
        }
        const Fact& old = it->second;
        bool same_pair = old.x == fact.x && old.y == fact.y;
        Axiom axiom = same_pair ? Axiom::OutcomeIndependence : Axiom::AlternativePrize;
        ++instances_[static_cast<int>(axiom)];
        if (old.relation == fact.relation) return;
        if (a.bits() > b.bits()) return;  // the mirrored insert reports the same conflict
        std::string summary =
            same_pair ? "bets on " + d(fact.x) + " and " + d(fact.y) + " are judged differently under two prize pairs"
                      : d(old.x) + " " + std::string(to_string(old.relation)) + " " + d(old.y) + " but " + d(fact.x) +
                            " " + std::string(to_string(fact.relation)) + " " + d(fact.y) +
                            ", although both pairs differ only by a common part";
        fail(axiom, std::move(summary), {old.record, fact.record});
    }

    struct Edge {
        FiniteEvent from;
        FiniteEvent to;
        Comparison relation;
        JudgmentRecord<FiniteEvent> record;
    };

    // A strict judgment X ≻ Y contradicts any path of weak judgments from Y back to X.
    void check_transitivity() {
        for (const auto& [family, edges] : edges_) {
            std::map<std::uint32_t, std::vector<std::size_t>> out;  // weak edges u ⪰ v, by u
            auto weak_edges = std::vector<std::pair<FiniteEvent, FiniteEvent>>{};
            std::vector<std::size_t> source;
            for (std::size_t i = 0; i < edges.size(); ++i) {
                const auto& e = edges[i];
                if (e.relation != Comparison::Less) {
                    out[e.from.bits()].push_back(weak_edges.size());
                    weak_edges.emplace_back(e.from, e.to);
                    source.push_back(i);
                }
                if (e.relation != Comparison::Greater) {
                    out[e.to.bits()].push_back(weak_edges.size());
                    weak_edges.emplace_back(e.to, e.from);
                    source.push_back(i);
                }
            }
            for (std::size_t i = 0; i < edges.size(); ++i) {
                const auto& e = edges[i];
                if (e.relation == Comparison::Equal) continue;
                FiniteEvent hi = e.relation == Comparison::Greater ? e.from : e.to;
                FiniteEvent lo = e.relation == Comparison::Greater ? e.to : e.from;
                ++instances_[static_cast<int>(Axiom::RestrictedOrdering)];
                auto path = find_path(out, weak_edges, lo, hi);
                if (!path) continue;
                std::vector<JudgmentRecord<FiniteEvent>> witness{e.record};
                std::string text = d(hi) + " ≻ " + d(lo);
                for (auto k : *path) {
                    witness.push_back(edges[source[k]].record);
                    text += " ≿ " + d(weak_edges[k].second);
                }
                fail(Axiom::RestrictedOrdering, "cycle among bets under " + families_[family].first.id + "/" +
                                                    families_[family].second.id + ": " + text,
                     std::move(witness));
                return;
            }
        }
    }

    static std::optional<std::vector<std::size_t>> find_path(
        const std::map<std::uint32_t, std::vector<std::size_t>>& out,
        const std::vector<std::pair<FiniteEvent, FiniteEvent>>& edges, const FiniteEvent& from,
        const FiniteEvent& to) {
        std::map<std::uint32_t, std::size_t> via;  // node -> edge used to reach it
        std::deque<std::uint32_t> queue{from.bits()};
        std::set<std::uint32_t> seen{from.bits()};
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            if (u == to.bits()) {
                std::vector<std::size_t> path;
                for (auto n = u; n != from.bits();) {
                    path.push_back(via[n]);
                    n = edges[via[n]].first.bits();
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            auto it = out.find(u);
            if (it == out.end()) continue;
            for (auto k : it->second) {
                auto v = edges[k].second.bits();
                if (seen.insert(v).second) {
                    via[v] = k;
                    queue.push_back(v);
                }
            }
        }
        return std::nullopt;
    }

    const FiniteAlgebra& algebra_;
    std::vector<std::pair<Outcome, Outcome>> families_;
    std::map<CoreKey, Fact> facts_;
    std::map<std::size_t, std::vector<Edge>> edges_;
    std::array<std::size_t, 5> instances_{};
    AxiomReport<FiniteEvent> report_;
};

AdviceReport comparative_report(const std::vector<LabeledAct>& options, const Knowledge& kb,
                               const OutcomeSet& outcomes) {
    AdviceReport report;
    report.mode = "comparative";
    report.diagnosis = kb.report();
    for (std::size_t i = 0; i < options.size(); ++i) {
        for (std::size_t j = i + 1; j < options.size(); ++j) {
            PairVerdict pv{options[i].label, options[j].label, {}, {}};
            for (const auto& o : outcomes.outcomes()) {
                ThresholdRow row{o, options[i].act.upper_event(o, outcomes), options[j].act.upper_event(o, outcomes),
                                 std::nullopt, std::nullopt, Comparison::Unknown};
                row.comparison = kb.lookup(row.upper_f, row.upper_g, pv.inferences);
                pv.verdict.profile.push_back(std::move(row));
            }
            classify(pv.verdict);
            report.pairs.push_back(std::move(pv));
        }
    }
    summarize(report, options);
    return report;
}

}  // namespace

DominanceVerdict stochastic_dominance(const FiniteAct& f, const FiniteAct& g, const EventProbability& p,
                                      const OutcomeSet& outcomes) {
    check_declared(f, outcomes);
    check_declared(g, outcomes);
    auto prob = [&](const FiniteEvent& e) {
        auto v = p(e);
        if (!v) throw Error(ErrorCode::MissingProbability, "no probability for an upper set");
        return *v;
    };
    DominanceVerdict v;
    for (const auto& o : outcomes.outcomes()) {
        ThresholdRow row{o, f.upper_event(o, outcomes), g.upper_event(o, outcomes), std::nullopt, std::nullopt,
                         Comparison::Unknown};
        row.p_f = prob(row.upper_f);
        row.p_g = prob(row.upper_g);
        row.comparison = compare_numbers(*row.p_f, *row.p_g);
        v.profile.push_back(std::move(row));
    }
    classify(v);
    return v;
}

DominanceVerdict stochastic_dominance(const FiniteAct& f, const FiniteAct& g, const std::vector<Rational>& atom_p,
                                      const OutcomeSet& outcomes) {
    auto p = [&](const FiniteEvent& e) -> std::optional<Rational> {
        if (static_cast<std::size_t>(e.atoms()) != atom_p.size()) {
            throw Error(ErrorCode::BadParams, "one probability per atom required");
        }
        Rational s = 0;
        for (int i = 0; i < e.atoms(); ++i) {
            if (e.has_atom(i)) s += atom_p[i];
        }
        return s;
    };
    return stochastic_dominance(f, g, EventProbability(p), outcomes);
}

AdviceReport advise(const std::vector<LabeledAct>& options, const std::vector<Rational>& atom_p,
                    const OutcomeSet& outcomes) {
    check_options(options, outcomes, static_cast<int>(atom_p.size()));
    AdviceReport report;
    report.mode = "probability";
    for (std::size_t i = 0; i < options.size(); ++i) {
        for (std::size_t j = i + 1; j < options.size(); ++j) {
            report.pairs.push_back({options[i].label, options[j].label,
                                    stochastic_dominance(options[i].act, options[j].act, atom_p, outcomes), {}});
        }
    }
    summarize(report, options);
    return report;
}

AdviceReport advise(const std::vector<LabeledAct>& options, const FiniteStore& elicited, const OutcomeSet& outcomes,
                    const FiniteAlgebra& algebra) {
    check_options(options, outcomes, algebra.atoms());
    Knowledge kb(elicited, outcomes, algebra);
    if (!kb.consistent()) {
        AdviceReport partial;
        partial.mode = "comparative";
        for (const auto& o : options) partial.options.push_back({o.label, false, std::nullopt, std::nullopt});
        partial.diagnosis = kb.report();
        std::string which;
        for (auto a : kAxioms) {
            if (!holds(kb.report()[a].verdict)) which += (which.empty() ? "" : ", ") + std::string(to_string(a));
        }
        partial.note = "elicited judgments violate " + which;
        throw AdviceError(partial.note, std::move(partial));
    }
    return comparative_report(options, kb, outcomes);
}

AdviceReport advise(const std::vector<LabeledAct>& options, const Oracle& oracle, const OutcomeSet& outcomes,
                    const FiniteAlgebra& algebra) {
    check_options(options, outcomes, algebra.atoms());
    auto pairs = outcomes.strict_pairs();
    if (pairs.empty()) throw Error(ErrorCode::Degenerate, "no strictly preferred outcome pair");
    const auto& [b, w] = pairs.front();
    FiniteStore store;
    std::set<CoreKey> asked;
    for (std::size_t i = 0; i < options.size(); ++i) {
        for (std::size_t j = i + 1; j < options.size(); ++j) {
            for (const auto& o : outcomes.outcomes()) {
                FiniteEvent u = options[i].act.upper_event(o, outcomes), v = options[j].act.upper_event(o, outcomes);
                FiniteEvent x = u - v, y = v - u;
                if (x.bits() > y.bits()) std::swap(x, y);
                if (x == y || (x.is_empty() && y.is_omega())) continue;
                if (!asked.insert({x.bits(), y.bits()}).second) continue;
                auto f = test_act(b, w, x), g = test_act(b, w, y);
                store.set(f, g, ask(oracle, algebra, f, g));
            }
        }
    }
    return advise(options, store, outcomes, algebra);
}

}  // namespace credence
