#include "credence/act.hpp"
#include "credence/preference.hpp"

namespace credence {

DyadicAct embed_act(const FiniteAlgebra& algebra, const FiniteAct& act) {
    std::vector<Part<DyadicEvent>> parts;
    for (const auto& p : act.parts()) parts.push_back({algebra.embed(p.event), p.outcome});
    return make_act(std::move(parts));
}

std::string_view to_string(Judgment j) {
    switch (j) {
        case Judgment::LeftWeak: return "left";
        case Judgment::RightWeak: return "right";
        case Judgment::Both: return "indifferent";
        case Judgment::Incomparable: return "incomparable";
        case Judgment::Unknown: return "unknown";
    }
    return "unknown";
}

Judgment parse_judgment(std::string_view text) {
    if (text == "left") return Judgment::LeftWeak;
    if (text == "right") return Judgment::RightWeak;
    if (text == "indifferent") return Judgment::Both;
    if (text == "incomparable") return Judgment::Incomparable;
    if (text == "unknown") return Judgment::Unknown;
    throw Error(ErrorCode::Parse, "unknown judgment '" + std::string(text) + "'");
}

}  // namespace credence
