#include "sgraph/botfilter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sgraph {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

bool parse_ipv4(std::string_view text, std::uint32_t& out) {
    std::uint32_t value = 0;
    int octets = 0;
    size_t pos = 0;
    while (octets < 4) {
        size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start || pos - start > 3) return false;
        unsigned octet = 0;
        std::from_chars(text.data() + start, text.data() + pos, octet);
        if (octet > 255) return false;
        value = (value << 8) | octet;
        ++octets;
        if (octets < 4) {
            if (pos >= text.size() || text[pos] != '.') return false;
            ++pos;
        }
    }
    if (pos != text.size()) return false;
    out = value;
    return true;
}

AgentSignatureDb load_signature_db(std::istream& in) {
    AgentSignatureDb db;
    enum class Section { None, Ua, Ip } section = Section::None;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line == "[ua]")
                section = Section::Ua;
            else if (line == "[ip]")
                section = Section::Ip;
            else
                throw SignatureDbError(SignatureDbError::Kind::BadSection,
                                       "unknown section '" + std::string(line) + "'");
            continue;
        }
        switch (section) {
            case Section::None:
                throw SignatureDbError(SignatureDbError::Kind::BadSection,
                                       "entry before any [ua]/[ip] section: '" +
                                           std::string(line) + "'");
            case Section::Ua:
                db.ua_substrings.insert(to_lower(line));
                break;
            case Section::Ip: {
                auto slash = line.find('/');
                if (slash == std::string_view::npos) {
                    db.ip_exact.insert(std::string(line));
                    break;
                }
                CidrBlock block;
                std::string_view addr = line.substr(0, slash);
                std::string_view plen = line.substr(slash + 1);
                int prefix = -1;
                auto [p, ec] =
                    std::from_chars(plen.data(), plen.data() + plen.size(), prefix);
                if (!parse_ipv4(addr, block.addr) || ec != std::errc{} ||
                    p != plen.data() + plen.size() || prefix < 0 || prefix > 32)
                    throw SignatureDbError(SignatureDbError::Kind::BadCidr,
                                           "invalid CIDR block '" + std::string(line) +
                                               "'");
                block.prefix = prefix;
                db.ip_cidr.insert(block);
                break;
            }
        }
    }
    return db;
}

AgentSignatureDb load_signature_db_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open signature db '" + path + "'");
    return load_signature_db(in);
}

TrafficClass classify(const LogRecord& record, const AgentSignatureDb& db) {
    if (record.user_agent) {
        std::string ua = to_lower(*record.user_agent);
        for (const auto& needle : db.ua_substrings)
            if (ua.find(needle) != std::string::npos) return TrafficClass::Robot;
    }
    if (record.client_ip) {
        if (db.ip_exact.count(*record.client_ip)) return TrafficClass::Robot;
        std::uint32_t ip = 0;
        if (!db.ip_cidr.empty() && parse_ipv4(*record.client_ip, ip))
            for (const auto& block : db.ip_cidr)
                if (block.contains(ip)) return TrafficClass::Robot;
    }
    return TrafficClass::Human;
}

SplitResult split_stream(const std::vector<LogRecord>& records,
                         const AgentSignatureDb& db) {
    SplitResult out;
    for (const auto& rec : records) {
        if (!rec.user_agent && !rec.client_ip) ++out.unidentified;
        if (classify(rec, db) == TrafficClass::Robot)
            out.robots.push_back(rec);
        else
            out.humans.push_back(rec);
    }
    return out;
}

}  // namespace sgraph
