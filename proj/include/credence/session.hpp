#pragma once

// Interactive measurement sessions. A session is its configuration plus an
// append-only answer log; everything else is recomputed by replaying the log
// through the same Ladder and k_search code the library uses.

#include "credence/representation.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace credence {

struct SessionConfig {
    std::vector<DyadicEvent> targets;
    int depth = 6;  // partition depth; brackets reach width 2^-depth
    LadderOptions ladder;
};

enum class SessionStatus { Active, Complete, Inconsistent };

std::string_view to_string(SessionStatus s);

struct Query {
    std::string id;  // "q<n>": the n-th answer in the log
    DyadicAct left;
    DyadicAct right;
    std::string left_text;  // coin-flip phrasing of each bet
    std::string right_text;
    std::string purpose;
};

struct AnswerRecord {
    std::string query_id;
    DyadicAct left;
    DyadicAct right;
    Judgment answer = Judgment::Unknown;
    std::string purpose;
    std::string answered_at;  // audit only; replay ignores it
};

struct Violation {
    std::string axiom;
    std::string kind;  // "completeness", "cycle", "common-part", "subset", "no-median", "schedule"
    std::string summary;
    std::vector<std::string> queries;  // answers that produce the violation
};

class Screen;

struct SessionEstimate {
    ProbabilityBracket bracket;
    std::vector<ProbabilityBracket> trace;  // starts at [0, 1], one entry per k-search answer
    SessionStatus status = SessionStatus::Active;
    std::optional<std::string> warning;
};

// "Win $1 if the first 2 flips land H,T, otherwise $0".
std::string describe_bet(const DyadicAct& act);

class Session {
public:
    // Throws BadParams for an empty target list or a depth outside 0..24.
    Session(std::string id, SessionConfig config);
    Session(const Session& other);
    Session& operator=(const Session& other);
    Session(Session&&) noexcept;
    Session& operator=(Session&&) noexcept;
    ~Session();

    const std::string& id() const { return id_; }
    const SessionConfig& config() const { return config_; }
    SessionStatus status() const { return status_; }
    const std::vector<AnswerRecord>& log() const { return log_; }
    const std::vector<Violation>& violations() const { return violations_; }
    // Answers that produced the reported brackets; the whole log unless inconsistent.
    std::size_t valid_answers() const { return valid_; }

    // Throws SessionComplete or SessionInconsistent.
    Query next_query() const;

    // Appends the answer to the pending query and returns true. Repeating an
    // answer already logged under the same id is a no-op returning false.
    // Throws StaleQuery for any other id, BadParams for "unknown", and
    // SessionComplete or SessionInconsistent when nothing is pending.
    bool record_answer(const std::string& query_id, Judgment answer, std::string answered_at = {});

    // Throws NoDataYet unless the event is a target.
    SessionEstimate estimate(const DyadicEvent& event) const;

    nlohmann::json to_json() const;
    // Rebuilds the session by replaying the stored log.
    static Session from_json(const nlohmann::json& j);

private:
    struct Replay;
    void rescreen();
    void replay(std::size_t limit);

    std::string id_;
    SessionConfig config_;
    std::vector<AnswerRecord> log_;
    SessionStatus status_ = SessionStatus::Active;
    std::optional<Query> pending_;
    std::vector<Violation> violations_;
    std::vector<std::vector<ProbabilityBracket>> traces_;  // per target
    std::size_t valid_ = 0;
    std::unique_ptr<Screen> screen_;  // holds every answer before the first violation
};

nlohmann::json to_json(const Query& q);
nlohmann::json to_json(const SessionEstimate& e);
nlohmann::json diagnostics_json(const Session& s);
SessionConfig session_config(const nlohmann::json& j);
nlohmann::json to_json(const SessionConfig& c);

}  // namespace credence
