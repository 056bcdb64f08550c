#pragma once

#include "credence/session.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>

namespace httplib {
class Server;
}

namespace credence {

// Sessions keyed by id, one JSON file each under `dir`. Requests on one
// session are serialized; distinct sessions proceed independently. Every
// accepted answer is persisted before the call returns.
class SessionStore {
public:
    // An empty dir keeps sessions in memory only.
    explicit SessionStore(std::filesystem::path dir = {}, std::uint64_t seed = std::random_device{}());

    nlohmann::json create(const nlohmann::json& config);
    nlohmann::json query(const std::string& id);
    // {"query_id": "q3", "answer": "left" | "right" | "indifferent" | "incomparable"}
    nlohmann::json answer(const std::string& id, const nlohmann::json& body);
    nlohmann::json estimate(const std::string& id, const std::string& event);
    nlohmann::json diagnostics(const std::string& id);

    // Copy of the current state, for tests and tooling.
    Session snapshot(const std::string& id);

private:
    struct Entry {
        std::mutex mutex;
        Session session;
    };

    std::shared_ptr<Entry> find(const std::string& id);
    void persist(const Session& s) const;
    std::filesystem::path file_of(const std::string& id) const;

    std::filesystem::path dir_;
    std::mutex mutex_;
    std::mt19937_64 rng_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

// 404 for unknown sessions, 409 for state conflicts, 400 for malformed input.
int http_status(ErrorCode code);

// POST /sessions, GET /sessions/{id}/query, POST /sessions/{id}/answer,
// GET /sessions/{id}/estimate?event=..., GET /sessions/{id}/diagnostics.
void install_routes(httplib::Server& server, SessionStore& store);

// Blocks until the server stops.
void serve(const std::string& host, int port, const std::filesystem::path& dir);

}  // namespace credence
