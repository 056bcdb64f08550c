#include "credence/session.hpp"

#include "credence/json_io.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <map>

namespace credence {

using nlohmann::json;

std::string_view to_string(SessionStatus s) {
    switch (s) {
        case SessionStatus::Active: return "active";
        case SessionStatus::Complete: return "complete";
        case SessionStatus::Inconsistent: return "inconsistent";
    }
    return "?";
}

std::string describe_bet(const DyadicAct& act) {
    if (act.is_constant()) return "Get " + act.parts()[0].outcome.id + " for sure";
    if (act.outcome_count() == 2) {
        // The prize is the larger money amount; otherwise the first part.
        std::size_t win = 0;
        auto m0 = money_value(act.parts()[0].outcome), m1 = money_value(act.parts()[1].outcome);
        if (m0 && m1 && *m1 > *m0) win = 1;
        const auto& a = act.parts()[win];
        const auto& b = act.parts()[1 - win];
        return "Win " + a.outcome.id + " if " + coin_phrase(a.event) + ", otherwise " + b.outcome.id;
    }
    std::string out;
    for (const auto& p : act.parts()) {
        if (!out.empty()) out += "; ";
        out += p.outcome.id + " if " + coin_phrase(p.event);
    }
    return out;
}

namespace {

std::string expr(const DyadicEvent& e) { return to_expression(e); }

std::string now_utc() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct PendingQuery {
    DyadicAct left;
    DyadicAct right;
    std::string purpose;
};

// Serves logged answers in order and throws PendingQuery past the limit.
class ReplayChannel final : public QueryChannel {
public:
    ReplayChannel(const std::vector<AnswerRecord>& log, std::size_t limit) : log_(log), limit_(limit) {}

    Judgment ask(const DyadicAct& left, const DyadicAct& right, std::string_view purpose) override {
        if (pos_ >= limit_) throw PendingQuery{left, right, std::string(purpose)};
        const auto& r = log_[pos_];
        if (r.left != left || r.right != right) {
            throw Error(ErrorCode::SessionInconsistent, "answer " + r.query_id + " does not match the schedule");
        }
        ++pos_;
        return r.answer;
    }

    std::size_t consumed() const { return pos_; }

private:
    const std::vector<AnswerRecord>& log_;
    std::size_t limit_;
    std::size_t pos_ = 0;
};

ProbabilityBracket vacuous_bracket(const DyadicEvent& x) {
    ProbabilityBracket b;
    b.event = x;
    b.lo = 0;
    b.hi = 1;
    b.estimate = 0;
    b.slack = 0;
    return b;
}

}  // namespace

// Incremental screen over answered pairs: completeness, preference for a
// subset, conflicting judgments on pairs with the same cores, and strict
// cycles through answered pairs linked by inclusion.
class Screen {
public:
    explicit Screen(const LadderOptions& prizes) : good_(prizes.good) {}

    std::optional<Violation> add(const AnswerRecord& r) {
        DyadicEvent x = r.left.event_of(good_), y = r.right.event_of(good_);
        const std::string& id = r.query_id;
        if (r.answer == Judgment::Incomparable || r.answer == Judgment::Unknown) {
            return Violation{"Restricted Ordering", "completeness",
                             "the bets on " + expr(x) + " and " + expr(y) + " were not compared", {id}};
        }
        if ((r.answer == Judgment::LeftWeak && y.contains(x)) || (r.answer == Judgment::RightWeak && x.contains(y))) {
            const auto& sub = r.answer == Judgment::LeftWeak ? x : y;
            const auto& super = r.answer == Judgment::LeftWeak ? y : x;
            return Violation{"Certain Prize", "subset",
                             "the bet on " + expr(sub) + " was preferred to the bet on its superset " + expr(super),
                             {id}};
        }
        int rel = r.answer == Judgment::LeftWeak ? 1 : r.answer == Judgment::RightWeak ? -1 : 0;
        std::pair key{x - y, y - x};
        if (auto it = cores_.find(key); it != cores_.end()) {
            if (it->second.first != rel) {
                bool repeat = it->second.second.second == std::pair{x, y};
                return Violation{repeat ? "Restricted Ordering" : "Alternative Prize", repeat ? "repeat" : "common-part",
                                 repeat ? "the same pair of bets was judged two ways"
                                        : "bets that differ only by a common part were judged differently: " +
                                              expr(x) + " vs " + expr(y),
                                 {it->second.second.first, id}};
            }
        } else {
            cores_.emplace(key, std::pair{rel, std::pair{id, std::pair{x, y}}});
            cores_.emplace(std::pair{y - x, x - y}, std::pair{-rel, std::pair{id, std::pair{y, x}}});
        }
        if (rel >= 0) {
            if (auto v = add_edge(x, y, rel > 0, id)) return v;
        }
        if (rel <= 0) {
            if (auto v = add_edge(y, x, rel < 0, id)) return v;
        }
        return std::nullopt;
    }

private:
    struct Edge {
        DyadicEvent from;  // from ⪰ to
        DyadicEvent to;
        bool strict;
        std::string id;
        std::vector<std::size_t> next;  // edges whose `from` this edge's `to` contains
    };

    std::optional<Violation> add_edge(const DyadicEvent& from, const DyadicEvent& to, bool strict, const std::string& id) {
        const std::size_t e = edges_.size();
        edges_.push_back({from, to, strict, id, {}});
        for (std::size_t i = 0; i < e; ++i) {
            if (edges_[i].to.contains(from)) edges_[i].next.push_back(e);
            if (to.contains(edges_[i].from)) edges_[e].next.push_back(i);
        }
        // A new cycle passes through e; search e -> ... -> e tracking strictness.
        std::vector<std::array<long, 2>> via(edges_.size(), {-2, -2});
        std::deque<std::pair<std::size_t, int>> queue;
        int s0 = strict ? 1 : 0;
        via[e][s0] = -1;
        queue.emplace_back(e, s0);
        while (!queue.empty()) {
            auto [u, s] = queue.front();
            queue.pop_front();
            for (auto v : edges_[u].next) {
                int sv = s | (edges_[v].strict ? 1 : 0);
                if (v == e) {
                    if (!sv) continue;
                    return cycle(e, u, s, via);
                }
                if (via[v][sv] != -2) continue;
                via[v][sv] = static_cast<long>(u) * 2 + s;
                queue.emplace_back(v, sv);
            }
        }
        return std::nullopt;
    }

    Violation cycle(std::size_t e, std::size_t last, int s, const std::vector<std::array<long, 2>>& via) const {
        std::vector<std::size_t> path{last};
        for (long state = via[last][s]; state != -1; state = via[path.back()][state % 2]) {
            path.push_back(static_cast<std::size_t>(state / 2));
        }
        std::reverse(path.begin(), path.end());  // starts at e
        Violation v{"Restricted Ordering", "cycle", "", {}};
        std::string text;
        for (auto i : path) {
            const auto& edge = edges_[i];
            if (v.queries.empty() || v.queries.back() != edge.id) v.queries.push_back(edge.id);
            text += expr(edge.from) + (edge.strict ? " ≻ " : " ≿ ") + expr(edge.to) + "; ";
        }
        (void)e;
        v.summary = "answers form a cycle (each step's event contains the next): " + text.substr(0, text.size() - 2);
        return v;
    }

    Outcome good_;
    std::vector<Edge> edges_;
    std::map<std::pair<DyadicEvent, DyadicEvent>, std::pair<int, std::pair<std::string, std::pair<DyadicEvent, DyadicEvent>>>>
        cores_;
};

struct Session::Replay {
    bool finished = false;
    std::optional<PendingQuery> pending;
    std::optional<Violation> failure;
    std::size_t consumed = 0;
    std::vector<std::vector<ProbabilityBracket>> traces;
};

Session::Session(std::string id, SessionConfig config)
    : id_(std::move(id)), config_(std::move(config)), screen_(std::make_unique<Screen>(config_.ladder)) {
    if (config_.targets.empty()) throw Error(ErrorCode::BadParams, "a session needs at least one target event");
    if (config_.depth < 0 || config_.depth > DyadicAlgebra::kMaxMaterializedDepth) {
        throw Error(ErrorCode::BadParams, "session depth must lie in 0..24");
    }
    if (config_.ladder.good == config_.ladder.bad) throw Error(ErrorCode::BadParams, "prizes must differ");
    replay(0);
}

Session::Session(const Session& o)
    : id_(o.id_), config_(o.config_), log_(o.log_), status_(o.status_), pending_(o.pending_),
      violations_(o.violations_), traces_(o.traces_), valid_(o.valid_), screen_(std::make_unique<Screen>(*o.screen_)) {}

Session& Session::operator=(const Session& o) {
    if (this != &o) *this = Session(o);
    return *this;
}

Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&&) noexcept = default;
Session::~Session() = default;

void Session::rescreen() {
    violations_.clear();
    screen_ = std::make_unique<Screen>(config_.ladder);
    std::size_t limit = log_.size();
    for (std::size_t i = 0; i < log_.size(); ++i) {
        if (auto v = screen_->add(log_[i])) {
            violations_.push_back(std::move(*v));
            limit = i;
            break;
        }
    }
    replay(limit);
}

void Session::replay(std::size_t limit) {
    auto run = [&](std::size_t n) {
        Replay r;
        ReplayChannel channel(log_, n);
        for (const auto& t : config_.targets) r.traces.push_back({vacuous_bracket(t)});
        try {
            Ladder ladder(channel, config_.ladder);
            ladder.complete(config_.depth);
            for (std::size_t t = 0; t < config_.targets.size(); ++t) {
                k_search(ladder, config_.targets[t], config_.depth,
                         [&](const ProbabilityBracket& b) { r.traces[t].push_back(b); });
            }
            r.finished = true;
        } catch (PendingQuery& p) {
            r.pending = std::move(p);
        } catch (const InconsistentAnswersError& e) {
            r.failure = Violation{"Restricted Ordering", "schedule", e.what(), {}};
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoMedianFound) {
                r.failure = Violation{"Event Richness", "no-median", e.what(), {}};
            } else if (e.code() == ErrorCode::SessionInconsistent) {
                r.failure = Violation{"Restricted Ordering", "schedule", e.what(), {}};
            } else {
                throw;
            }
        }
        r.consumed = channel.consumed();
        return r;
    };
    Replay r = run(limit);
    if (r.failure) {
        // The answer consumed last triggered it; brackets come from before it.
        std::size_t bad = r.consumed == 0 ? 0 : r.consumed - 1;
        if (bad < log_.size()) r.failure->queries.push_back(log_[bad].query_id);
        violations_.push_back(std::move(*r.failure));
        limit = bad;
        r = run(limit);
    }
    traces_ = std::move(r.traces);
    valid_ = limit;
    pending_.reset();
    if (!violations_.empty()) {
        status_ = SessionStatus::Inconsistent;
    } else if (r.finished) {
        status_ = SessionStatus::Complete;
    } else {
        status_ = SessionStatus::Active;
        pending_ = Query{"q" + std::to_string(log_.size() + 1), r.pending->left, r.pending->right,
                         describe_bet(r.pending->left), describe_bet(r.pending->right), r.pending->purpose};
    }
}

Query Session::next_query() const {
    if (status_ == SessionStatus::Complete) throw Error(ErrorCode::SessionComplete, "session " + id_ + " is complete");
    if (status_ == SessionStatus::Inconsistent) {
        throw Error(ErrorCode::SessionInconsistent, "session " + id_ + ": " + violations_.front().summary);
    }
    return *pending_;
}

bool Session::record_answer(const std::string& query_id, Judgment answer, std::string answered_at) {
    for (const auto& r : log_) {
        if (r.query_id != query_id) continue;
        if (r.answer == answer) return false;
        throw Error(ErrorCode::StaleQuery, "query " + query_id + " was already answered differently");
    }
    Query q = next_query();
    if (q.id != query_id) throw Error(ErrorCode::StaleQuery, "query " + query_id + " is not pending; " + q.id + " is");
    if (answer == Judgment::Unknown) throw Error(ErrorCode::BadParams, "answers are left, right, indifferent or incomparable");
    log_.push_back({q.id, q.left, q.right, answer, q.purpose, answered_at.empty() ? now_utc() : std::move(answered_at)});
    std::size_t limit = log_.size();
    if (auto v = screen_->add(log_.back())) {
        violations_.push_back(std::move(*v));
        limit = log_.size() - 1;
    }
    replay(limit);
    return true;
}

SessionEstimate Session::estimate(const DyadicEvent& event) const {
    for (std::size_t t = 0; t < config_.targets.size(); ++t) {
        if (config_.targets[t] != event) continue;
        SessionEstimate e;
        e.trace = traces_[t];
        e.bracket = e.trace.back();
        e.status = status_;
        if (status_ == SessionStatus::Inconsistent) {
            e.warning = "answers after " + std::to_string(valid_) + " are not used: " + violations_.front().summary;
        }
        return e;
    }
    throw Error(ErrorCode::NoDataYet, "event " + to_expression(event) + " is not a target of session " + id_);
}

json Session::to_json() const {
    json log = json::array();
    for (const auto& r : log_) {
        log.push_back({{"id", r.query_id},
                       {"left", wire::to_json(r.left)},
                       {"right", wire::to_json(r.right)},
                       {"answer", r.answer == Judgment::LeftWeak    ? "left"
                                  : r.answer == Judgment::RightWeak ? "right"
                                  : r.answer == Judgment::Both      ? "indifferent"
                                                                    : "incomparable"},
                       {"purpose", r.purpose},
                       {"answered_at", r.answered_at}});
    }
    return {{"id", id_}, {"config", credence::to_json(config_)}, {"log", log}};
}

Session Session::from_json(const json& j) {
    Session s(j.at("id").get<std::string>(), session_config(j.at("config")));
    for (const auto& r : j.at("log")) {
        s.log_.push_back({r.at("id").get<std::string>(), wire::dyadic_act(r.at("left")), wire::dyadic_act(r.at("right")),
                          parse_judgment(r.at("answer").get<std::string>()), r.value("purpose", std::string()),
                          r.value("answered_at", std::string())});
    }
    s.rescreen();
    return s;
}

json to_json(const Query& q) {
    return {{"id", q.id},
            {"left", {{"act", wire::to_json(q.left)}, {"text", q.left_text}}},
            {"right", {{"act", wire::to_json(q.right)}, {"text", q.right_text}}},
            {"purpose", q.purpose}};
}

json to_json(const SessionEstimate& e) {
    json trace = json::array();
    for (const auto& b : e.trace) trace.push_back(wire::to_json(b));
    json out{{"bracket", wire::to_json(e.bracket)}, {"trace", trace}, {"status", to_string(e.status)}};
    if (e.warning) out["warning"] = *e.warning;
    return out;
}

json diagnostics_json(const Session& s) {
    json violations = json::array();
    for (const auto& v : s.violations()) {
        violations.push_back({{"axiom", v.axiom}, {"kind", v.kind}, {"summary", v.summary}, {"queries", v.queries}});
    }
    return {{"id", s.id()},
            {"status", to_string(s.status())},
            {"answers", s.log().size()},
            {"valid_answers", s.valid_answers()},
            {"violations", violations}};
}

SessionConfig session_config(const json& j) {
    SessionConfig c;
    if (!j.is_object() || !j.contains("targets")) throw Error(ErrorCode::Parse, "session config needs targets");
    for (const auto& t : j.at("targets")) c.targets.push_back(wire::dyadic_event(t));
    if (j.contains("depth")) {
        if (!j.at("depth").is_number_integer()) throw Error(ErrorCode::Parse, "depth must be an integer");
        c.depth = j.at("depth").get<int>();
    }
    if (j.contains("good")) c.ladder.good = outcome(j.at("good").get<std::string>());
    if (j.contains("bad")) c.ladder.bad = outcome(j.at("bad").get<std::string>());
    if (j.contains("split_cap")) c.ladder.split_cap = j.at("split_cap").get<int>();
    if (j.contains("tie_break")) {
        auto t = j.at("tie_break").get<std::string>();
        if (t != "upper" && t != "lower") throw Error(ErrorCode::Parse, "tie_break is upper or lower");
        c.ladder.tie_break = t == "upper" ? TieBreak::Upper : TieBreak::Lower;
    }
    return c;
}

json to_json(const SessionConfig& c) {
    json targets = json::array();
    for (const auto& t : c.targets) targets.push_back(to_expression(t));
    return {{"targets", targets},
            {"depth", c.depth},
            {"good", c.ladder.good.id},
            {"bad", c.ladder.bad.id},
            {"split_cap", c.ladder.split_cap},
            {"tie_break", c.ladder.tie_break == TieBreak::Upper ? "upper" : "lower"}};
}

}  // namespace credence
