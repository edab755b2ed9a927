#pragma once

#include <cstdint>
#include <istream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgraph/logparse.hpp"

namespace sgraph {

enum class TrafficClass { Robot, Human };

struct CidrBlock {
    std::uint32_t addr = 0;  // network byte-order value as a host integer
    int prefix = 0;          // 0..32

    bool contains(std::uint32_t ip) const {
        if (prefix == 0) return true;
        std::uint32_t mask = prefix == 32 ? 0xffffffffu : ~(0xffffffffu >> prefix);
        return (ip & mask) == (addr & mask);
    }
    auto operator<=>(const CidrBlock&) const = default;
};

// Robot signature database: case-insensitive user-agent substrings plus
// exact IPs and IPv4 CIDR blocks.
struct AgentSignatureDb {
    std::set<std::string> ua_substrings;  // stored lowercased
    std::set<std::string> ip_exact;
    std::set<CidrBlock> ip_cidr;

    bool empty() const {
        return ua_substrings.empty() && ip_exact.empty() && ip_cidr.empty();
    }
};

struct SignatureDbError : std::runtime_error {
    enum class Kind { BadSection, BadCidr };
    Kind kind;
    SignatureDbError(Kind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

// Dotted-quad IPv4 parser; returns false on anything else.
bool parse_ipv4(std::string_view text, std::uint32_t& out);

// Loads the line-oriented signature format:
//   [ua]        one case-insensitive substring per line
//   [ip]        exact addresses and a.b.c.d/len CIDR blocks
// Lines starting with '#' (after leading whitespace) are comments.
// Throws SignatureDbError on unknown sections or invalid CIDR blocks.
AgentSignatureDb load_signature_db(std::istream& in);
AgentSignatureDb load_signature_db_file(const std::string& path);

// Robot iff the user agent contains any db substring (case-insensitive)
// or the client IP matches an exact entry or CIDR block. Absent fields
// simply cannot match.
TrafficClass classify(const LogRecord& record, const AgentSignatureDb& db);

struct SplitResult {
    std::vector<LogRecord> humans;
    std::vector<LogRecord> robots;
    // Records with neither user agent nor client IP; they default to
    // Human but are worth reporting.
    std::int64_t unidentified = 0;
};

// Partitions the stream, preserving order within each substream.
SplitResult split_stream(const std::vector<LogRecord>& records,
                         const AgentSignatureDb& db);

}  // namespace sgraph
