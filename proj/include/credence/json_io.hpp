#pragma once

// Wire format shared by the CLI, the session store and the HTTP service.
// Rationals travel as strings "num/den" (dyadics as "num/2^k"), events of a
// finite algebra as arrays of atom names, dyadic events as expressions, and
// acts as arrays of {event, outcome}.

#include "credence/advice.hpp"
#include "credence/agents.hpp"
#include "credence/comparative.hpp"
#include "credence/representation.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace credence::wire {

using nlohmann::json;

json rational(const Rational& r);
// Accepts strings in any parse_rational form and JSON integers.
Rational to_rational(const json& j);

// {"money": [...]}, {"ranking": [[best...], ..., [worst...]]} or
// {"outcomes": [...], "weak": [[a, b], ...]}.
OutcomeSet outcome_set(const json& j);
json to_json(const OutcomeSet& outcomes);

// An array of atom names or an atom count.
FiniteAlgebra algebra(const json& j);
json to_json(const FiniteAlgebra& algebra);

FiniteEvent finite_event(const json& j, const FiniteAlgebra& algebra);
json to_json(const FiniteEvent& e, const FiniteAlgebra& algebra);
FiniteAct finite_act(const json& j, const FiniteAlgebra& algebra, const OutcomeSet* declared = nullptr);
json to_json(const FiniteAct& act, const FiniteAlgebra& algebra);

DyadicEvent dyadic_event(const json& j);
json to_json(const DyadicEvent& e);
DyadicAct dyadic_act(const json& j);
json to_json(const DyadicAct& act);

// {"type": "uniform" | "power" (k) | "piecewise" (points) | "charge" (base, point, weight)}.
MeasurePtr measure(const json& j);

// {"kind": ..., "measure": ..., "utility": {outcome: value}, "seed", "thrill",
// "lambda", "noise", "noise_on_test_acts", "inner": spec}. A bare string is a kind.
AgentSpec agent_spec(const json& j);

// [{"left": act, "right": act, "judgment": "left" | "right" | "indifferent" | "incomparable"}].
FiniteStore judgments(const json& j, const FiniteAlgebra& algebra, const OutcomeSet& outcomes);
json to_json(const FiniteStore& store, const FiniteAlgebra& algebra);

// {"name", "atoms", "masses", "outcomes", "acts": {label: act}}.
LotteryFixture fixture(const json& j);
json to_json(const LotteryFixture& fx);

// {"atoms", "masses"} or {"atoms", "ranking": [[event...], ...]} listing
// every event once, best tier first.
ComparativeOrder comparative_order(const json& j);
// Tiers of equivalent events, best first, when the order is complete and
// transitive; otherwise the strict and equivalence pairs.
json to_json(const ComparativeOrder& order);

json to_json(const AxiomReport<FiniteEvent>& report, const FiniteAlgebra& algebra);
json to_json(const AxiomReport<DyadicEvent>& report);
json to_json(const QpReport& report, const FiniteAlgebra& algebra);
json to_json(const EquivalenceResult& result, const FiniteAlgebra& algebra);
json to_json(const FiniteRepresentation& rep, const FiniteAlgebra& algebra);
json to_json(const std::vector<OrderConstraint>& constraints, const FiniteAlgebra& algebra);
json to_json(const KraftInstance& instance);
json to_json(const ProbabilityBracket& bracket);
json to_json(const DominanceVerdict& verdict, const FiniteAlgebra& algebra);
json to_json(const AdviceReport& report, const FiniteAlgebra& algebra);
json to_json(const RichnessResult& result, const FiniteAlgebra& algebra);
json to_json(const DyadicRichnessResult& result);
json to_json(const MpcResult& result);
json to_json(const QueryRecord& record);

// {"error": code name, "message": text}.
json error_json(const Error& e);

json read_file(const std::filesystem::path& path);
// Writes to a sibling temporary and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const json& j);

}  // namespace credence::wire
