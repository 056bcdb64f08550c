#include "credence/json_io.hpp"

#include <fstream>
#include <map>
#include <random>
#include <set>

namespace credence::wire {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string text(const json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + " must be a string");
    return j.get<std::string>();
}

Judgment judgment_of(const json& j) { return parse_judgment(text(j, "judgment")); }

std::string_view judgment_name(Judgment j) {
    switch (j) {
        case Judgment::LeftWeak: return "left";
        case Judgment::RightWeak: return "right";
        case Judgment::Both: return "indifferent";
        case Judgment::Incomparable: return "incomparable";
        case Judgment::Unknown: return "unknown";
    }
    return "unknown";
}

template <Event E, class EventJson>
json witness_json(const std::optional<PreferenceWitness<E>>& w, EventJson&& act_json) {
    if (!w) return nullptr;
    json judgments = json::array();
    for (const auto& r : w->judgments) {
        judgments.push_back({{"left", act_json(r.left)}, {"right", act_json(r.right)},
                             {"judgment", judgment_name(r.judgment)}});
    }
    return {{"summary", w->summary}, {"judgments", judgments}};
}

template <Event E, class ActJson>
json axiom_report_json(const AxiomReport<E>& report, ActJson&& act_json) {
    json axioms = json::array();
    for (auto a : kAxioms) {
        const auto& r = report[a];
        axioms.push_back({{"axiom", to_string(a)},
                          {"verdict", to_string(r.verdict)},
                          {"violations", r.violations},
                          {"witness", witness_json(r.witness, act_json)}});
    }
    json out{{"axioms", axioms}, {"all_hold", report.all_hold()}, {"sampled", report.sampled}};
    if (report.sampled) {
        out["seed"] = report.seed;
        out["queries"] = report.queries;
        out["complete"] = report.complete;
    }
    return out;
}

std::vector<std::pair<Rational, Rational>> points_of(const json& j) {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) bad("piecewise points are [x, F(x)] pairs");
        out.emplace_back(to_rational(p[0]), to_rational(p[1]));
    }
    return out;
}

}  // namespace

json rational(const Rational& r) { return to_string(r); }

Rational to_rational(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad("rational values are strings such as \"3/10\"");
}

OutcomeSet outcome_set(const json& j) {
    auto outcomes_of = [](const json& list) {
        std::vector<Outcome> os;
        for (const auto& o : list) os.push_back(outcome(text(o, "outcome")));
        return os;
    };
    if (j.is_object() && j.contains("money")) return OutcomeSet::money_order(outcomes_of(j.at("money")));
    if (j.is_object() && j.contains("ranking")) {
        std::vector<std::vector<Outcome>> tiers;
        for (const auto& tier : j.at("ranking")) tiers.push_back(outcomes_of(tier));
        return OutcomeSet::from_ranking(tiers);
    }
    auto os = outcomes_of(field(j, "outcomes"));
    std::vector<std::pair<Outcome, Outcome>> weak;
    if (j.contains("weak")) {
        for (const auto& p : j.at("weak")) {
            if (!p.is_array() || p.size() != 2) bad("weak pairs are [better, worse]");
            weak.emplace_back(outcome(text(p[0], "outcome")), outcome(text(p[1], "outcome")));
        }
    }
    return OutcomeSet(os, weak);
}

json to_json(const OutcomeSet& outcomes) {
    json os = json::array(), weak = json::array();
    for (const auto& o : outcomes.outcomes()) os.push_back(o.id);
    for (const auto& [a, b] : outcomes.weak_pairs()) {
        if (a != b) weak.push_back({a.id, b.id});
    }
    return {{"outcomes", os}, {"weak", weak}};
}

FiniteAlgebra algebra(const json& j) {
    if (j.is_number_integer()) {
        int m = j.get<int>();
        if (m < 1 || m > kMaxAtoms) throw Error(ErrorCode::BadParams, "atom count out of range");
        return FiniteAlgebra(m);
    }
    if (!j.is_array() || j.empty()) bad("atoms must be a nonempty array of names or a count");
    std::vector<std::string> names;
    for (const auto& n : j) names.push_back(text(n, "atom name"));
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) bad("duplicate atom name");
    return FiniteAlgebra(names);
}

json to_json(const FiniteAlgebra& algebra) { return algebra.names(); }

FiniteEvent finite_event(const json& j, const FiniteAlgebra& algebra) {
    if (!j.is_array()) bad("finite events are arrays of atom names");
    std::vector<std::string> names;
    for (const auto& n : j) names.push_back(text(n, "atom name"));
    return algebra.event(names);
}

json to_json(const FiniteEvent& e, const FiniteAlgebra& algebra) {
    json out = json::array();
    for (int i = 0; i < algebra.atoms(); ++i) {
        if (e.has_atom(i)) out.push_back(algebra.names()[i]);
    }
    return out;
}

FiniteAct finite_act(const json& j, const FiniteAlgebra& algebra, const OutcomeSet* declared) {
    if (!j.is_array()) bad("acts are arrays of {event, outcome}");
    std::vector<Part<FiniteEvent>> parts;
    for (const auto& p : j) {
        parts.push_back({finite_event(field(p, "event"), algebra), outcome(text(field(p, "outcome"), "outcome"))});
    }
    return make_act<FiniteEvent>(std::move(parts), declared);
}

json to_json(const FiniteAct& act, const FiniteAlgebra& algebra) {
    json out = json::array();
    for (const auto& p : act.parts()) out.push_back({{"event", to_json(p.event, algebra)}, {"outcome", p.outcome.id}});
    return out;
}

DyadicEvent dyadic_event(const json& j) { return parse_event_expression(text(j, "event")); }

json to_json(const DyadicEvent& e) { return to_expression(e); }

DyadicAct dyadic_act(const json& j) {
    if (!j.is_array()) bad("acts are arrays of {event, outcome}");
    std::vector<Part<DyadicEvent>> parts;
    for (const auto& p : j) {
        parts.push_back({dyadic_event(field(p, "event")), outcome(text(field(p, "outcome"), "outcome"))});
    }
    return make_act<DyadicEvent>(std::move(parts));
}

json to_json(const DyadicAct& act) {
    json out = json::array();
    for (const auto& p : act.parts()) out.push_back({{"event", to_json(p.event)}, {"outcome", p.outcome.id}});
    return out;
}

MeasurePtr measure(const json& j) {
    std::string type = j.is_string() ? j.get<std::string>() : text(field(j, "type"), "measure type");
    if (type == "uniform") return uniform_measure();
    if (type == "power") return power_measure(field(j, "k").get<int>());
    if (type == "piecewise") return piecewise_measure(points_of(field(j, "points")));
    if (type == "charge") {
        return charge_measure(j.contains("base") ? measure(j.at("base")) : uniform_measure(),
                              Dyadic::parse(text(field(j, "point"), "point")), to_rational(field(j, "weight")));
    }
    bad("unknown measure type '" + type + "'");
}

AgentSpec agent_spec(const json& j) {
    AgentSpec spec;
    if (j.is_string()) {
        spec.kind = parse_agent_kind(j.get<std::string>());
        return spec;
    }
    spec.kind = parse_agent_kind(text(field(j, "kind"), "kind"));
    if (j.contains("measure")) spec.measure = measure(j.at("measure"));
    if (j.contains("priors")) {
        for (const auto& p : j.at("priors")) spec.priors.push_back(measure(p));
    }
    if (j.contains("utility")) {
        spec.utility.money_linear = false;
        for (const auto& [o, u] : j.at("utility").items()) spec.utility.table[outcome(o)] = to_rational(u);
    }
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("thrill")) spec.thrill = to_rational(j.at("thrill"));
    if (j.contains("lambda")) spec.lambda = to_rational(j.at("lambda"));
    if (j.contains("noise")) spec.noise = to_rational(j.at("noise"));
    if (j.contains("noise_on_test_acts")) spec.noise_on_test_acts = j.at("noise_on_test_acts").get<bool>();
    if (j.contains("overrides")) {
        for (const auto& o : j.at("overrides")) {
            spec.overrides.emplace_back(dyadic_act(field(o, "left")), dyadic_act(field(o, "right")));
        }
    }
    if (j.contains("inner")) spec.inner = std::make_shared<const AgentSpec>(agent_spec(j.at("inner")));
    return spec;
}

FiniteStore judgments(const json& j, const FiniteAlgebra& algebra, const OutcomeSet& outcomes) {
    if (!j.is_array()) bad("judgments must be an array");
    FiniteStore store;
    for (const auto& r : j) {
        store.set(finite_act(field(r, "left"), algebra, &outcomes), finite_act(field(r, "right"), algebra, &outcomes),
                  judgment_of(field(r, "judgment")));
    }
    return store;
}

json to_json(const FiniteStore& store, const FiniteAlgebra& algebra) {
    json out = json::array();
    for (const auto& r : store.records()) {
        out.push_back({{"left", to_json(r.left, algebra)},
                       {"right", to_json(r.right, algebra)},
                       {"judgment", judgment_name(r.judgment)}});
    }
    return out;
}

LotteryFixture fixture(const json& j) {
    auto alg = algebra(field(j, "atoms"));
    std::vector<Rational> masses;
    for (const auto& m : field(j, "masses")) masses.push_back(to_rational(m));
    if (static_cast<int>(masses.size()) != alg.atoms()) throw Error(ErrorCode::BadParams, "one mass per atom required");
    LotteryFixture fx{j.value("name", std::string()), alg, masses, outcome_set(field(j, "outcomes")), {}};
    for (const auto& [label, act] : field(j, "acts").items()) fx.acts.emplace(label, finite_act(act, alg, &fx.outcomes));
    return fx;
}

json to_json(const LotteryFixture& fx) {
    json masses = json::array(), acts = json::object();
    for (const auto& m : fx.masses) masses.push_back(rational(m));
    for (const auto& [label, act] : fx.acts) acts[label] = to_json(act, fx.algebra);
    return {{"name", fx.name},
            {"atoms", to_json(fx.algebra)},
            {"masses", masses},
            {"outcomes", to_json(fx.outcomes)},
            {"acts", acts}};
}

ComparativeOrder comparative_order(const json& j) {
    auto alg = algebra(field(j, "atoms"));
    if (alg.atoms() > ComparativeOrder::kMaxAtoms) {
        throw Error(ErrorCode::AtomBoundExceeded, "comparative orders support at most 10 atoms");
    }
    if (j.contains("masses")) {
        std::vector<Rational> p;
        for (const auto& m : j.at("masses")) p.push_back(to_rational(m));
        return ComparativeOrder::from_masses(alg, p);
    }
    std::vector<int> tier(alg.event_count(), -1);
    const auto& ranking = field(j, "ranking");
    for (std::size_t t = 0; t < ranking.size(); ++t) {
        for (const auto& e : ranking[t]) {
            auto ev = finite_event(e, alg);
            if (tier[ev.bits()] >= 0) throw Error(ErrorCode::BadParams, "event " + alg.describe(ev) + " ranked twice");
            tier[ev.bits()] = static_cast<int>(t);
        }
    }
    for (std::uint32_t x = 0; x < tier.size(); ++x) {
        if (tier[x] < 0) throw Error(ErrorCode::BadParams, "event " + alg.describe(alg.event(x)) + " is not ranked");
    }
    ComparativeOrder order(alg);
    for (std::uint32_t x = 0; x < tier.size(); ++x) {
        for (std::uint32_t y = 0; y < tier.size(); ++y) order.set(alg.event(x), alg.event(y), tier[x] <= tier[y]);
    }
    return order;
}

json to_json(const ComparativeOrder& order) {
    const auto& alg = order.algebra();
    const auto n = static_cast<std::uint32_t>(order.size());
    // Rank by how many events each one weakly beats; a weak order is recovered exactly.
    std::vector<std::pair<int, std::uint32_t>> score;
    for (std::uint32_t x = 0; x < n; ++x) {
        int s = 0;
        for (std::uint32_t y = 0; y < n; ++y) s += order.weak(alg.event(x), alg.event(y));
        score.emplace_back(-s, x);
    }
    std::sort(score.begin(), score.end());
    json tiers = json::array();
    for (std::size_t i = 0; i < score.size(); ++i) {
        if (i == 0 || score[i].first != score[i - 1].first) tiers.push_back(json::array());
        tiers.back().push_back(to_json(alg.event(score[i].second), alg));
    }
    json out{{"atoms", to_json(alg)}, {"ranking", tiers}};
    if (!(comparative_order(out) == order)) {
        json weak = json::array();
        for (std::uint32_t x = 0; x < n; ++x) {
            for (std::uint32_t y = 0; y < n; ++y) {
                if (x != y && order.weak(alg.event(x), alg.event(y))) {
                    weak.push_back({to_json(alg.event(x), alg), to_json(alg.event(y), alg)});
                }
            }
        }
        out = {{"atoms", to_json(alg)}, {"weak", weak}};
    }
    return out;
}

json to_json(const AxiomReport<FiniteEvent>& report, const FiniteAlgebra& algebra) {
    return axiom_report_json(report, [&](const FiniteAct& a) { return to_json(a, algebra); });
}

json to_json(const AxiomReport<DyadicEvent>& report) {
    return axiom_report_json(report, [](const DyadicAct& a) { return to_json(a); });
}

json to_json(const QpReport& report, const FiniteAlgebra& algebra) {
    json conditions = json::array();
    for (auto c : kQpConditions) {
        const auto& r = report[c];
        json witness = nullptr;
        if (r.witness) {
            json facts = json::array();
            for (const auto& f : r.witness->facts) {
                facts.push_back({{"x", to_json(f.x, algebra)}, {"y", to_json(f.y, algebra)}, {"weak", f.weak}});
            }
            witness = {{"summary", r.witness->summary}, {"facts", facts}};
        }
        conditions.push_back(
            {{"condition", to_string(c)}, {"verdict", to_string(r.verdict)}, {"violations", r.violations}, {"witness", witness}});
    }
    return {{"conditions", conditions}, {"all_hold", report.all_hold()}};
}

json to_json(const EquivalenceResult& r, const FiniteAlgebra& algebra) {
    return {{"axioms", to_json(r.axioms, algebra)},
            {"qualitative_probability", to_json(r.qp, algebra)},
            {"determinate", r.determinate},
            {"axioms_hold", r.axioms_hold},
            {"qualitative", r.qualitative},
            {"agrees", r.agrees()}};
}

json to_json(const FiniteRepresentation& rep, const FiniteAlgebra& algebra) {
    json p = json::object();
    for (int i = 0; i < algebra.atoms(); ++i) p[algebra.names()[i]] = rational(rep.p[i]);
    return {{"p", p}, {"margin", rational(rep.margin)}, {"unique", rep.unique}};
}

json to_json(const std::vector<OrderConstraint>& constraints, const FiniteAlgebra& algebra) {
    json out = json::array();
    for (const auto& c : constraints) {
        out.push_back({{"x", to_json(c.x, algebra)}, {"y", to_json(c.y, algebra)}, {"strict", c.strict}});
    }
    return out;
}

json to_json(const KraftInstance& k) {
    return {{"weights", k.weights},
            {"order", to_json(k.order)},
            {"conflict", to_json(k.conflict, k.order.algebra())},
            {"candidates", k.candidates}};
}

json to_json(const ProbabilityBracket& b) {
    return {{"event", to_json(b.event)}, {"depth", b.depth},          {"n", b.n},
            {"k", b.k},                  {"lo", rational(b.lo)},      {"hi", rational(b.hi)},
            {"estimate", rational(b.estimate)}, {"slack", rational(b.slack)}, {"queries", b.queries}};
}

json to_json(const DominanceVerdict& v, const FiniteAlgebra& algebra) {
    json rows = json::array();
    for (const auto& r : v.profile) {
        json row{{"threshold", r.threshold.id},
                 {"upper_f", to_json(r.upper_f, algebra)},
                 {"upper_g", to_json(r.upper_g, algebra)},
                 {"comparison", to_string(r.comparison)}};
        if (r.p_f) row["p_f"] = rational(*r.p_f);
        if (r.p_g) row["p_g"] = rational(*r.p_g);
        rows.push_back(std::move(row));
    }
    auto ids = [](const std::vector<Outcome>& os) {
        json out = json::array();
        for (const auto& o : os) out.push_back(o.id);
        return out;
    };
    return {{"relation", to_string(v.relation)},
            {"profile", rows},
            {"tight", ids(v.tight)},
            {"strict", ids(v.strict)},
            {"violated", ids(v.violated)}};
}

json to_json(const AdviceReport& report, const FiniteAlgebra& algebra) {
    json options = json::array(), pairs = json::array();
    for (const auto& o : report.options) {
        json entry{{"label", o.label}, {"dominated", o.dominated}};
        if (o.dominated_by) entry["dominated_by"] = *o.dominated_by;
        if (o.witness) entry["witness"] = o.witness->id;
        options.push_back(std::move(entry));
    }
    for (const auto& p : report.pairs) {
        json chain = json::array();
        for (const auto& step : p.inferences) {
            json s{{"rule", step.rule},
                   {"x", to_json(step.x, algebra)},
                   {"y", to_json(step.y, algebra)},
                   {"relation", to_string(step.relation)},
                   {"text", step.text}};
            if (step.common) s["common"] = to_json(*step.common, algebra);
            chain.push_back(std::move(s));
        }
        pairs.push_back({{"f", p.f}, {"g", p.g}, {"verdict", to_json(p.verdict, algebra)}, {"inferences", chain}});
    }
    json out{{"mode", report.mode},
             {"options", options},
             {"recommended", report.recommended},
             {"pairs", pairs},
             {"note", report.note}};
    if (report.diagnosis) out["diagnosis"] = to_json(*report.diagnosis, algebra);
    return out;
}

json to_json(const RichnessResult& r, const FiniteAlgebra& algebra) {
    json out{{"verdict", to_string(r.verdict)}, {"minimal", r.minimal}, {"pairs_checked", r.pairs_checked}};
    if (r.witness) out["witness"] = {{"x", to_json(r.witness->first, algebra)}, {"z", to_json(r.witness->second, algebra)}};
    return out;
}

json to_json(const DyadicRichnessResult& r) {
    json pairs = json::array();
    for (const auto& p : r.pairs) {
        json entry{{"x", to_json(p.x)}, {"z", to_json(p.z)}, {"verdict", to_string(p.verdict)}, {"depth", p.depth}};
        if (p.failing_cell) entry["failing_cell"] = to_json(*p.failing_cell);
        pairs.push_back(std::move(entry));
    }
    return {{"verdict", to_string(r.verdict)}, {"depth", r.depth}, {"pairs", pairs}, {"queries", r.queries}};
}

json to_json(const MpcResult& r) {
    json out{{"verdict", to_string(r.verdict)},
             {"chains", r.chains},
             {"triggered", r.triggered},
             {"queries", r.queries}};
    if (r.witness) {
        json events = json::array();
        for (const auto& e : r.witness->events.events) events.push_back(to_json(e));
        out["witness"] = {{"chain", r.witness->chain},
                          {"probe", to_json(r.witness->probe)},
                          {"events", events},
                          {"limit", to_json(r.witness->events.limit)}};
    }
    return out;
}

json to_json(const QueryRecord& r) {
    return {{"left", to_json(r.left)},
            {"right", to_json(r.right)},
            {"answer", judgment_name(r.answer)},
            {"purpose", r.purpose}};
}

json error_json(const Error& e) { return {{"error", to_string(e.code())}, {"message", e.what()}}; }

json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadParams, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        bad(path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const json& j) {
    thread_local std::mt19937_64 rng(std::random_device{}());
    auto tmp = path;
    tmp += ".tmp" + std::to_string(rng() % 1000000);
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(ErrorCode::BadParams, "cannot write " + tmp.string());
        out << j.dump(2) << '\n';
        out.flush();
        if (!out) throw Error(ErrorCode::BadParams, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace credence::wire
