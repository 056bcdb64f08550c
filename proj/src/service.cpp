#include "credence/service.hpp"

#include "credence/json_io.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <iostream>

namespace credence {

using nlohmann::json;

namespace {

bool valid_id(const std::string& id) {
    return !id.empty() && id.size() <= 64 &&
           std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isalnum(c) != 0; });
}

json state_json(const Session& s) {
    json out{{"id", s.id()}, {"status", to_string(s.status())}, {"answers", s.log().size()}};
    if (s.status() == SessionStatus::Active) out["query"] = to_json(s.next_query());
    return out;
}

}  // namespace

SessionStore::SessionStore(std::filesystem::path dir, std::uint64_t seed) : dir_(std::move(dir)), rng_(seed) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::filesystem::path SessionStore::file_of(const std::string& id) const { return dir_ / (id + ".json"); }

void SessionStore::persist(const Session& s) const {
    if (!dir_.empty()) wire::write_file_atomic(file_of(s.id()), s.to_json());
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
    if (valid_id(id) && !dir_.empty() && std::filesystem::exists(file_of(id))) {
        auto entry = std::shared_ptr<Entry>(new Entry{{}, Session::from_json(wire::read_file(file_of(id)))});
        sessions_.emplace(id, entry);
        return entry;
    }
    throw Error(ErrorCode::UnknownSession, "no session " + id);
}

json SessionStore::create(const json& config) {
    auto cfg = session_config(config);
    std::shared_ptr<Entry> entry;
    {
        std::lock_guard lock(mutex_);
        std::string id;
        do {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
            id = buf;
        } while (sessions_.count(id) || (!dir_.empty() && std::filesystem::exists(file_of(id))));
        entry = std::shared_ptr<Entry>(new Entry{{}, Session(id, std::move(cfg))});
        sessions_.emplace(id, entry);
    }
    std::lock_guard lock(entry->mutex);
    persist(entry->session);
    return state_json(entry->session);
}

json SessionStore::query(const std::string& id) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return to_json(entry->session.next_query());
}

json SessionStore::answer(const std::string& id, const json& body) {
    auto entry = find(id);
    if (!body.is_object() || !body.contains("query_id") || !body.contains("answer")) {
        throw Error(ErrorCode::Parse, "answer body needs query_id and answer");
    }
    auto qid = body.at("query_id").get<std::string>();
    auto j = parse_judgment(body.at("answer").get<std::string>());
    std::lock_guard lock(entry->mutex);
    bool recorded = entry->session.record_answer(qid, j);
    if (recorded) persist(entry->session);
    json out = state_json(entry->session);
    out["recorded"] = recorded;
    return out;
}

json SessionStore::estimate(const std::string& id, const std::string& event) {
    auto entry = find(id);
    auto e = parse_event_expression(event);
    std::lock_guard lock(entry->mutex);
    return to_json(entry->session.estimate(e));
}

json SessionStore::diagnostics(const std::string& id) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return diagnostics_json(entry->session);
}

Session SessionStore::snapshot(const std::string& id) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return entry->session;
}

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownSession: return 404;
        case ErrorCode::SessionComplete:
        case ErrorCode::SessionInconsistent:
        case ErrorCode::StaleQuery:
        case ErrorCode::NoDataYet: return 409;
        default: return 400;
    }
}

void install_routes(httplib::Server& server, SessionStore& store) {
    auto reply = [](httplib::Response& res, int status, const json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    };
    // Runs the handler and maps library errors onto status codes.
    auto guarded = [reply](auto&& fn) {
        return [reply, fn](const httplib::Request& req, httplib::Response& res) {
            try {
                auto [status, body] = fn(req);
                reply(res, status, body);
            } catch (const Error& e) {
                reply(res, http_status(e.code()), wire::error_json(e));
            } catch (const json::exception& e) {
                reply(res, 400, {{"error", "Parse"}, {"message", e.what()}});
            } catch (const std::exception& e) {
                reply(res, 500, {{"error", "Internal"}, {"message", e.what()}});
            }
        };
    };
    auto body_of = [](const httplib::Request& req) {
        return req.body.empty() ? json::object() : json::parse(req.body);
    };

    server.Post("/sessions", guarded([&store, body_of](const httplib::Request& req) {
                    return std::pair{201, store.create(body_of(req))};
                }));
    server.Get(R"(/sessions/([A-Za-z0-9]+)/query)", guarded([&store](const httplib::Request& req) {
                   return std::pair{200, store.query(req.matches[1])};
               }));
    server.Post(R"(/sessions/([A-Za-z0-9]+)/answer)", guarded([&store, body_of](const httplib::Request& req) {
                    return std::pair{200, store.answer(req.matches[1], body_of(req))};
                }));
    server.Get(R"(/sessions/([A-Za-z0-9]+)/estimate)", guarded([&store](const httplib::Request& req) {
                   if (!req.has_param("event")) throw Error(ErrorCode::Parse, "estimate needs ?event=");
                   return std::pair{200, store.estimate(req.matches[1], req.get_param_value("event"))};
               }));
    server.Get(R"(/sessions/([A-Za-z0-9]+)/diagnostics)", guarded([&store](const httplib::Request& req) {
                   return std::pair{200, store.diagnostics(req.matches[1])};
               }));
}

void serve(const std::string& host, int port, const std::filesystem::path& dir) {
    SessionStore store(dir);
    httplib::Server server;
    install_routes(server, store);
    std::cerr << "listening on " << host << ':' << port << ", sessions in " << dir << '\n';
    if (!server.listen(host, port)) throw Error(ErrorCode::BadParams, "cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace credence
