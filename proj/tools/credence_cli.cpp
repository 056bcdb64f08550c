// Command-line front end: axiom checks, finite representation, measurement,
// simulated agents, dominance advice and the session server.

#include "credence/advice.hpp"
#include "credence/agents.hpp"
#include "credence/json_io.hpp"
#include "credence/representation.hpp"
#include "credence/service.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace credence;
using nlohmann::json;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    bool seed_set = false;
    int depth_cap = kMaxMeasureDepth;
    std::string format = "json";
};

// ---------------------------------------------------------------------------
// Output

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool flat_object(const json& v) {
    return v.is_object() && std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_structured(); });
}

void render(std::ostream& out, const json& v, int indent);

// Arrays of flat objects with a shared key set become aligned columns.
bool render_columns(std::ostream& out, const json& rows, int indent) {
    if (!rows.is_array() || rows.empty() || !std::all_of(rows.begin(), rows.end(), flat_object)) return false;
    std::vector<std::string> keys;
    for (const auto& [k, _] : rows.front().items()) keys.push_back(k);
    for (const auto& r : rows) {
        if (r.size() != keys.size()) return false;
        for (const auto& k : keys) {
            if (!r.contains(k)) return false;
        }
    }
    std::vector<std::size_t> width;
    for (const auto& k : keys) {
        std::size_t w = k.size();
        for (const auto& r : rows) w = std::max(w, scalar_text(r.at(k)).size());
        width.push_back(w);
    }
    auto line = [&](auto cell) {
        out << std::string(indent, ' ');
        for (std::size_t i = 0; i < keys.size(); ++i) out << std::left << std::setw(static_cast<int>(width[i]) + 2) << cell(i);
        out << '\n';
    };
    line([&](std::size_t i) { return keys[i]; });
    for (const auto& r : rows) line([&](std::size_t i) { return scalar_text(r.at(keys[i])); });
    return true;
}

void render(std::ostream& out, const json& v, int indent) {
    const std::string pad(indent, ' ');
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) {
            if (!x.is_structured()) {
                out << pad << k << ": " << scalar_text(x) << '\n';
            } else if (x.empty()) {
                out << pad << k << ": " << (x.is_array() ? "none" : "-") << '\n';
            } else if (x.is_array() && std::none_of(x.begin(), x.end(), [](const json& e) { return e.is_structured(); })) {
                std::string joined;
                for (const auto& e : x) joined += (joined.empty() ? "" : ", ") + scalar_text(e);
                out << pad << k << ": " << joined << '\n';
            } else {
                out << pad << k << ":\n";
                render(out, x, indent + 2);
            }
        }
    } else if (v.is_array()) {
        if (render_columns(out, v, indent)) return;
        for (const auto& x : v) {
            if (x.is_structured()) {
                out << pad << "-\n";
                render(out, x, indent + 2);
            } else {
                out << pad << "- " << scalar_text(x) << '\n';
            }
        }
    } else {
        out << pad << scalar_text(v) << '\n';
    }
}

void emit(const Globals& g, const json& result) {
    if (g.format == "table") {
        render(std::cout, result, 0);
    } else {
        std::cout << result.dump(2) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Inputs

// A file path, inline JSON, or a bare agent kind.
json spec_json(const std::string& text) {
    if (std::filesystem::exists(text)) return wire::read_file(text);
    if (!text.empty() && (text.front() == '{' || text.front() == '"')) return json::parse(text);
    return json(text);
}

AgentSpec agent_from(const std::string& text, const Globals& g) {
    AgentSpec spec = wire::agent_spec(spec_json(text));
    if (g.seed_set) spec.seed = g.seed;
    return spec;
}

int depth_within_cap(const Rational& eps, const Globals& g) {
    int depth = depth_for_tolerance(eps);
    if (depth > g.depth_cap) {
        throw Error(ErrorCode::DepthLimit, "tolerance needs depth " + std::to_string(depth) + ", above --depth-cap " +
                                               std::to_string(g.depth_cap));
    }
    return depth;
}

// {"atoms", "outcomes"} plus either "judgments" or "agent"; a "fixture" may
// supply atoms and outcomes.
struct FiniteProblem {
    FiniteAlgebra algebra;
    OutcomeSet outcomes;
    json source;
};

FiniteProblem finite_problem(const json& j) {
    if (j.contains("fixture")) {
        const auto& f = j.at("fixture");
        LotteryFixture fx = f.is_object()               ? wire::fixture(f)
                            : f == "allais"             ? allais_fixture()
                            : f == "birnbaum"           ? birnbaum_fixture()
                            : f == "urn"                ? urn_fixture()
                                                        : wire::fixture(wire::read_file(f.get<std::string>()));
        return {fx.algebra, fx.outcomes, j};
    }
    return {wire::algebra(j.at("atoms")), wire::outcome_set(j.at("outcomes")), j};
}

FiniteStore problem_store(const FiniteProblem& p, const Globals& g, json& meta) {
    if (p.source.contains("judgments")) return wire::judgments(p.source.at("judgments"), p.algebra, p.outcomes);
    if (!p.source.contains("agent")) throw Error(ErrorCode::BadParams, "preference file needs judgments or an agent");
    auto spec = wire::agent_spec(p.source.at("agent"));
    if (g.seed_set) spec.seed = g.seed;
    auto agent = make_agent(spec);
    meta["agent"] = agent->describe();
    return populate_store(*agent, p.outcomes, p.algebra);
}

// ---------------------------------------------------------------------------
// Commands

json cmd_check_axioms(const std::string& file, const Globals& g) {
    auto problem = finite_problem(wire::read_file(file));
    json out = json::object();
    auto store = problem_store(problem, g, out);
    auto result = check_equivalence(store, problem.outcomes, problem.algebra);
    out["judgments"] = store.records().size();
    out["result"] = wire::to_json(result, problem.algebra);
    return out;
}

json cmd_represent(const std::string& file) {
    json out = json::object();
    auto load = [&] {
        if (file != "kraft") return wire::comparative_order(wire::read_file(file));
        auto gap = find_kraft_gap();
        if (!gap) throw Error(ErrorCode::NotRepresentable, "no gap instance in the searched family");
        out["kraft"] = wire::to_json(*gap);
        return gap->order;
    };
    const ComparativeOrder order = load();
    const auto& alg = order.algebra();
    auto qp = check_qualitative_probability(order);
    out["qualitative"] = qp.all_hold();
    out["conditions"] = wire::to_json(qp, alg);
    if (qp.all_hold()) {
        try {
            out["representation"] = wire::to_json(represent_finite(order), alg);
        } catch (const NotRepresentableError& e) {
            out["representation"] = nullptr;
            out["conflict"] = wire::to_json(e.conflict(), alg);
        }
        if (alg.atoms() <= 8) out["event_richness"] = wire::to_json(check_event_richness(order), alg);
    }
    return out;
}

json cmd_measure(const std::string& agent_text, const std::string& event, const std::string& eps_text, const Globals& g) {
    auto agent = make_agent(agent_from(agent_text, g));
    auto x = parse_event_expression(event);
    Rational eps = parse_rational(eps_text);
    depth_within_cap(eps, g);
    std::vector<ProbabilityBracket> trace;
    auto b = measure_probability(*agent, x, eps, {}, &trace);
    json rows = json::array();
    for (const auto& t : trace) {
        rows.push_back({{"depth", t.depth}, {"k", t.k}, {"n", t.n}, {"lo", wire::rational(t.lo)}, {"hi", wire::rational(t.hi)}});
    }
    return {{"agent", agent->describe()}, {"bracket", wire::to_json(b)}, {"trace", rows}};
}

json cmd_simulate(const std::string& kind, bool report, int depth, const Globals& g) {
    AgentSpec spec = wire::agent_spec(spec_json(kind));
    spec.seed = g.seed;
    auto agent = make_agent(spec);
    SampleOptions opts;
    opts.seed = g.seed;
    auto prizes = OutcomeSet::money_order({outcome("$0"), outcome("$1"), outcome("$2")});
    json out{{"agent", agent->describe()}};
    auto axioms = check_axioms_sampled(*agent, prizes, opts);
    json verdicts = json::object();
    for (Axiom a : kAxioms) verdicts[std::string(to_string(a))] = std::string(to_string(axioms[a].verdict));
    out["axioms"] = verdicts;
    out["all_hold"] = axioms.all_hold();
    if (!report) return out;

    out["axiom_report"] = wire::to_json(axioms);
    depth = std::min(depth, g.depth_cap);
    json measured = json::array();
    for (const char* e : {"[0,1/2)", "[0,1/4)", "[1/4,3/4)", "coin:HT"}) {
        json row{{"event", e}};
        try {
            auto b = measure_probability(*agent, parse_event_expression(e), pow2_inverse(depth));
            row["lo"] = wire::rational(b.lo);
            row["hi"] = wire::rational(b.hi);
            row["slack"] = wire::rational(b.slack);
        } catch (const Error& err) {
            row["error"] = std::string(to_string(err.code()));
        }
        measured.push_back(row);
    }
    out["measurements"] = measured;
    if (spec.kind == AgentKind::Allais) {
        auto fx = allais_fixture();
        auto eu = check_eu_consistency(fx, {{"1", "2"}, {"4", "3"}});
        out["allais_eu_feasible"] = eu.feasible;
        auto store = populate_store(*agent, fx.outcomes, fx.algebra);
        out["allais_fixture_axioms"] = wire::to_json(check_axioms(store, fx.outcomes, fx.algebra), fx.algebra);
    }
    return out;
}

// {"atoms", "outcomes", "options": {label: act}} plus "judgments" or
// "masses" when no agent is given.
json cmd_advise(const std::string& file, const std::string& agent_text, const Globals& g) {
    json j = wire::read_file(file);
    auto problem = finite_problem(j);
    const json& acts = j.contains("options") ? j.at("options") : j.at("acts");
    std::vector<LabeledAct> options;
    for (const auto& [label, act] : acts.items()) {
        options.push_back({label, wire::finite_act(act, problem.algebra, &problem.outcomes)});
    }
    try {
        AdviceReport r;
        if (!agent_text.empty()) {
            auto agent = make_agent(agent_from(agent_text, g));
            r = advise(options, *agent, problem.outcomes, problem.algebra);
        } else if (j.contains("judgments")) {
            r = advise(options, wire::judgments(j.at("judgments"), problem.algebra, problem.outcomes), problem.outcomes,
                       problem.algebra);
        } else if (j.contains("masses")) {
            std::vector<Rational> p;
            for (const auto& m : j.at("masses")) p.push_back(wire::to_rational(m));
            r = advise(options, p, problem.outcomes);
        } else {
            throw Error(ErrorCode::BadParams, "advice needs --agent, judgments or masses");
        }
        return wire::to_json(r, problem.algebra);
    } catch (const AdviceError& e) {
        json out = wire::error_json(e);
        out["partial"] = wire::to_json(e.partial(), problem.algebra);
        return out;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subjective probability from preferences over acts"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for sampled checks and randomized agents")
        ->each([&](const std::string&) { g.seed_set = true; });
    app.add_option("--depth-cap", g.depth_cap, "Deepest partition any measurement may build")
        ->check(CLI::Range(0, kMaxMeasureDepth));
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}));

    std::string path, agent, event, eps = "1/1024", host = "127.0.0.1", store = "sessions", kind;
    int port = 8080, sim_depth = 6;
    bool report = false;

    auto* check = app.add_subcommand("check-axioms", "Five-axiom check and qualitative-probability verdict");
    check->add_option("prefs-file", path, "Judgments, or an agent to query, over a finite algebra")->required();

    auto* represent = app.add_subcommand("represent", "Represent a finite comparative order by a probability");
    represent->add_option("order-file", path, "Order file, or 'kraft' for the searched gap instance")->required();

    auto* measure = app.add_subcommand("measure", "Measure an event's probability for a simulated agent");
    measure->add_option("--agent", agent, "Agent spec: file, inline JSON or kind")->required();
    measure->add_option("--event", event, "Dyadic event expression, e.g. [0,1/2) or coin:HT")->required();
    measure->add_option("--eps", eps, "Bracket width, 1/2^m");

    auto* simulate = app.add_subcommand("simulate", "Sampled axiom check and measurements for an agent kind");
    simulate->add_option("--kind", kind, "Agent kind or spec")->required();
    simulate->add_flag("--report", report, "Include measurements and the full axiom report");
    simulate->add_option("--depth", sim_depth, "Measurement depth for the report")->check(CLI::Range(0, kMaxMeasureDepth));

    auto* adv = app.add_subcommand("advise", "Stochastic-dominance advice among options");
    adv->add_option("options-file", path, "Options over a finite algebra")->required();
    adv->add_option("--agent", agent, "Agent spec to elicit the needed comparisons from");

    auto* serve_cmd = app.add_subcommand("serve", "HTTP elicitation session service");
    serve_cmd->add_option("--port", port, "Listen port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--store", store, "Session directory");
    serve_cmd->add_option("--host", host, "Listen address");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) emit(g, cmd_check_axioms(path, g));
        if (*represent) emit(g, cmd_represent(path));
        if (*measure) emit(g, cmd_measure(agent, event, eps, g));
        if (*simulate) emit(g, cmd_simulate(kind, report, sim_depth, g));
        if (*adv) {
            json out = cmd_advise(path, agent, g);
            emit(g, out);
            if (out.contains("error")) return 1;
        }
        if (*serve_cmd) serve(host, port, store);
    } catch (const Error& e) {
        std::cerr << wire::error_json(e).dump() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", "Parse"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << json{{"error", "Io"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
    return 0;
}
