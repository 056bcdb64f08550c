#pragma once

#include "credence/comparative.hpp"
#include "credence/finite.hpp"
#include "credence/oracle.hpp"
#include "credence/outcome.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace credence {

// How the first upper set compares to the second. AtLeast and AtMost are
// known weak comparisons whose strictness is unknown.
enum class Comparison { Greater, Equal, Less, AtLeast, AtMost, Unknown };

std::string_view to_string(Comparison c);
Comparison mirror(Comparison c);

enum class Dominance { Equivalent, Dominates, StrictlyDominates, Dominated, StrictlyDominated, Incomparable };

std::string_view to_string(Dominance d);
Dominance mirror(Dominance d);
// Dominates or StrictlyDominates or Equivalent.
bool dominates(Dominance d);

struct ThresholdRow {
    Outcome threshold;
    FiniteEvent upper_f;  // states where f pays at least the threshold
    FiniteEvent upper_g;
    std::optional<Rational> p_f;  // numeric mode only
    std::optional<Rational> p_g;
    Comparison comparison = Comparison::Unknown;
};

struct DominanceVerdict {
    Dominance relation = Dominance::Incomparable;
    std::vector<ThresholdRow> profile;  // one row per declared outcome
    std::vector<Outcome> tight;         // P(f ⪰ o) = P(g ⪰ o)
    std::vector<Outcome> strict;        // f's side strictly larger
    std::vector<Outcome> violated;      // f's side strictly smaller
};

using EventProbability = std::function<std::optional<Rational>(const FiniteEvent&)>;

// A threshold is every outcome of `outcomes`; upper sets follow declared weak
// preference only. Throws MissingProbability when p has no value for an
// upper set and UnknownOutcome for undeclared act outcomes.
DominanceVerdict stochastic_dominance(const FiniteAct& f, const FiniteAct& g, const EventProbability& p,
                                      const OutcomeSet& outcomes);
DominanceVerdict stochastic_dominance(const FiniteAct& f, const FiniteAct& g, const std::vector<Rational>& atom_p,
                                      const OutcomeSet& outcomes);

// One step of a derivation, in the order it was used.
struct Inference {
    std::string rule;  // "elicited", "alternative-prize", "certain-prize", "non-degeneracy", "identity"
    FiniteEvent x;
    FiniteEvent y;
    Comparison relation = Comparison::Unknown;
    std::optional<FiniteEvent> common;  // Z for alternative-prize
    std::string text;
};

struct LabeledAct {
    std::string label;
    FiniteAct act;
};

struct PairVerdict {
    std::string f;
    std::string g;
    DominanceVerdict verdict;
    std::vector<Inference> inferences;  // comparative mode
};

struct OptionAdvice {
    std::string label;
    bool dominated = false;
    std::optional<std::string> dominated_by;
    std::optional<Outcome> witness;  // threshold with a strict inequality
};

struct AdviceReport {
    std::string mode;  // "probability" or "comparative"
    std::vector<OptionAdvice> options;
    std::vector<std::string> recommended;  // undominated options, only when some option is flagged
    std::vector<PairVerdict> pairs;        // every ordered pair f before g
    std::string note;
    std::optional<AxiomReport<FiniteEvent>> diagnosis;
};

class AdviceError : public Error {
public:
    AdviceError(const std::string& message, AdviceReport partial)
        : Error(ErrorCode::ElicitationFailed, message), partial_(std::move(partial)) {}
    const AdviceReport& partial() const { return partial_; }

private:
    AdviceReport partial_;
};

AdviceReport advise(const std::vector<LabeledAct>& options, const std::vector<Rational>& atom_p,
                    const OutcomeSet& outcomes);

// Comparative mode from elicited test-act judgments. Throws AdviceError
// when the judgments violate an axiom.
AdviceReport advise(const std::vector<LabeledAct>& options, const FiniteStore& elicited, const OutcomeSet& outcomes,
                    const FiniteAlgebra& algebra);

// Asks the oracle exactly the core comparisons the options need, then
// proceeds as with an elicited store. Incomparable answers and axiom
// violations throw AdviceError.
AdviceReport advise(const std::vector<LabeledAct>& options, const Oracle& oracle, const OutcomeSet& outcomes,
                    const FiniteAlgebra& algebra);

}  // namespace credence
