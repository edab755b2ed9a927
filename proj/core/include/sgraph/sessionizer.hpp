#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgraph/logparse.hpp"

namespace sgraph {

// Requester identity: user-agent string together with the IP address.
// Absent compares equal to absent, and distinct from the empty string.
struct AgentKey {
    std::optional<std::string> user_agent;
    std::optional<std::string> client_ip;

    bool operator==(const AgentKey&) const = default;
    auto operator<=>(const AgentKey&) const = default;
};

// Stable 64-bit digest of an AgentKey for exports (FNV-1a).
std::uint64_t agent_hash(const AgentKey& key);

struct SessionRequest {
    std::string resource;
    std::int64_t timestamp;

    bool operator==(const SessionRequest&) const = default;
};

// Time-ordered requests by one agent with all consecutive gaps < T.
struct Session {
    AgentKey agent;
    std::vector<SessionRequest> requests;

    std::int64_t start_time() const { return requests.front().timestamp; }
    std::size_t length() const { return requests.size(); }
};

// Groups records by AgentKey, sorts each group by timestamp (stable, so
// equal timestamps retain input order), and splits wherever the gap to
// the previous request reaches cutoff (the session rule is strictly
// "gap < T", so a gap of exactly T starts a new session). Sessions come
// out grouped per agent in deterministic key order.
std::vector<Session> sessionize(const std::vector<LogRecord>& records,
                                std::int64_t cutoff_seconds,
                                PathPolicy normalization);

struct TrafficSummary {
    std::int64_t request_count = 0;
    std::int64_t session_count = 0;
    std::int64_t agent_count = 0;
    std::int64_t ip_count = 0;
    std::int64_t resource_count = 0;
    std::int64_t start_time = 0;
    std::int64_t end_time = 0;
};

// Dataset-level counts for one traffic class. Resources are counted
// from the sessions (post-normalization); IPs are distinct present
// client addresses.
TrafficSummary summarize(const std::vector<LogRecord>& records,
                         const std::vector<Session>& sessions);

// Sessions export rows: session_id,agent_hash,start_ts,length.
void write_sessions_csv(std::ostream& out, const std::vector<Session>& sessions);

}  // namespace sgraph
