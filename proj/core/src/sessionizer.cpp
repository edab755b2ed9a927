#include "sgraph/sessionizer.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace sgraph {

std::uint64_t agent_hash(const AgentKey& key) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::string_view s, char tag) {
        h ^= static_cast<unsigned char>(tag);
        h *= 1099511628211ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    mix(key.user_agent ? *key.user_agent : "", key.user_agent ? 'U' : 'u');
    mix(key.client_ip ? *key.client_ip : "", key.client_ip ? 'I' : 'i');
    return h;
}

std::vector<Session> sessionize(const std::vector<LogRecord>& records,
                                std::int64_t cutoff_seconds,
                                PathPolicy normalization) {
    if (cutoff_seconds <= 0)
        throw std::invalid_argument("session cutoff must be positive");

    // std::map keys give the deterministic per-agent output order.
    std::map<AgentKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < records.size(); ++i)
        groups[AgentKey{records[i].user_agent, records[i].client_ip}].push_back(i);

    std::vector<Session> sessions;
    for (auto& [agent, idxs] : groups) {
        std::stable_sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
            return records[a].timestamp < records[b].timestamp;
        });
        Session current;
        current.agent = agent;
        for (std::size_t i : idxs) {
            const LogRecord& rec = records[i];
            if (!current.requests.empty() &&
                rec.timestamp - current.requests.back().timestamp >= cutoff_seconds) {
                sessions.push_back(std::move(current));
                current = Session{agent, {}};
            }
            current.requests.push_back(
                SessionRequest{resource_key(rec, normalization), rec.timestamp});
        }
        if (!current.requests.empty()) sessions.push_back(std::move(current));
    }
    return sessions;
}

TrafficSummary summarize(const std::vector<LogRecord>& records,
                         const std::vector<Session>& sessions) {
    TrafficSummary s;
    s.request_count = static_cast<std::int64_t>(records.size());
    s.session_count = static_cast<std::int64_t>(sessions.size());

    std::set<AgentKey> agents;
    std::set<std::string> ips;
    if (!records.empty())
        s.start_time = s.end_time = records.front().timestamp;
    for (const auto& rec : records) {
        agents.insert(AgentKey{rec.user_agent, rec.client_ip});
        if (rec.client_ip) ips.insert(*rec.client_ip);
        s.start_time = std::min(s.start_time, rec.timestamp);
        s.end_time = std::max(s.end_time, rec.timestamp);
    }
    s.agent_count = static_cast<std::int64_t>(agents.size());
    s.ip_count = static_cast<std::int64_t>(ips.size());

    std::set<std::string> resources;
    for (const auto& sess : sessions)
        for (const auto& req : sess.requests) resources.insert(req.resource);
    s.resource_count = static_cast<std::int64_t>(resources.size());
    return s;
}

void write_sessions_csv(std::ostream& out, const std::vector<Session>& sessions) {
    out << "session_id,agent_hash,start_ts,length\n";
    std::size_t id = 0;
    char hash[24];
    for (const auto& sess : sessions) {
        std::snprintf(hash, sizeof hash, "%016llx",
                      static_cast<unsigned long long>(agent_hash(sess.agent)));
        out << id++ << ',' << hash << ',' << sess.start_time() << ','
            << sess.length() << '\n';
    }
}

}  // namespace sgraph
