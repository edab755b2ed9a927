#include "sgraph/logparse.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace sgraph {

namespace {

constexpr std::array<const char*, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int read_int(std::string_view s) {
    int v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

int month_number(std::string_view name) {
    for (int i = 0; i < 12; ++i)
        if (name == kMonths[i]) return i + 1;
    return 0;
}

// Splits "METHOD path PROTOCOL" on the first and last space so that a
// raw space inside the path does not shift the protocol field.
bool split_request(std::string_view req, LogRecord& out) {
    auto first = req.find(' ');
    auto last = req.rfind(' ');
    if (first == std::string_view::npos || first == last) return false;
    out.method = std::string(req.substr(0, first));
    out.path = std::string(req.substr(first + 1, last - first - 1));
    out.protocol = std::string(req.substr(last + 1));
    return !out.method.empty() && !out.protocol.empty();
}

std::string unescape_quoted(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size() && (s[i + 1] == '"' || s[i + 1] == '\\')) {
            out.push_back(s[i + 1]);
            ++i;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

std::string escape_quoted(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

struct Cursor {
    std::string_view line;
    size_t pos = 0;

    void skip_spaces() {
        while (pos < line.size() && line[pos] == ' ') ++pos;
    }
    bool at_end() {
        skip_spaces();
        return pos >= line.size();
    }
    // Plain token up to the next space.
    bool plain(std::string& out) {
        skip_spaces();
        if (pos >= line.size()) return false;
        size_t start = pos;
        while (pos < line.size() && line[pos] != ' ') ++pos;
        out.assign(line.substr(start, pos - start));
        return true;
    }
    // [....] token, content returned without brackets.
    bool bracketed(std::string& out) {
        skip_spaces();
        if (pos >= line.size() || line[pos] != '[') return false;
        size_t close = line.find(']', pos + 1);
        if (close == std::string_view::npos) return false;
        out.assign(line.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        return true;
    }
    // "...." token honoring \" and \\ escapes, content unescaped.
    bool quoted(std::string& out) {
        skip_spaces();
        if (pos >= line.size() || line[pos] != '"') return false;
        size_t i = pos + 1;
        while (i < line.size()) {
            if (line[i] == '\\' && i + 1 < line.size())
                i += 2;
            else if (line[i] == '"')
                break;
            else
                ++i;
        }
        if (i >= line.size()) return false;
        out = unescape_quoted(line.substr(pos + 1, i - pos - 1));
        pos = i + 1;
        return true;
    }
};

std::optional<std::string> dash_optional(std::string value) {
    if (value == "-") return std::nullopt;
    return value;
}

}  // namespace

bool LogFormat::has(LogToken t) const {
    return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}

LogFormat parse_format(std::string_view spec) {
    if (spec == "combined") spec = "h i u t r s b R U";
    if (spec == "combined-ip") spec = "h i t r s b R U A";

    LogFormat fmt;
    int times = 0, requests = 0, statuses = 0;
    for (size_t i = 0; i < spec.size(); ++i) {
        char c = spec[i];
        if (c == ' ' || c == '\t') continue;
        switch (c) {
            case 'h': fmt.tokens.push_back(LogToken::Host); break;
            case 'i': fmt.tokens.push_back(LogToken::Identd); break;
            case 'u': fmt.tokens.push_back(LogToken::AuthUser); break;
            case 't': fmt.tokens.push_back(LogToken::Time); ++times; break;
            case 'r': fmt.tokens.push_back(LogToken::Request); ++requests; break;
            case 's': fmt.tokens.push_back(LogToken::Status); ++statuses; break;
            case 'b': fmt.tokens.push_back(LogToken::Size); break;
            case 'R': fmt.tokens.push_back(LogToken::Referer); break;
            case 'U': fmt.tokens.push_back(LogToken::UserAgent); break;
            case 'A': fmt.tokens.push_back(LogToken::ClientIp); break;
            default:
                throw FormatError("unknown log format token '" + std::string(1, c) + "'");
        }
    }
    if (times != 1 || requests != 1 || statuses != 1)
        throw FormatError("log format needs exactly one each of t, r, s");
    return fmt;
}

std::optional<std::int64_t> parse_log_time(std::string_view text) {
    // dd/Mon/yyyy:HH:MM:SS +zzzz  (fixed width apart from the space)
    if (text.size() != 26) return std::nullopt;
    if (text[2] != '/' || text[6] != '/' || text[11] != ':' || text[14] != ':' ||
        text[17] != ':' || text[20] != ' ')
        return std::nullopt;
    std::string_view day = text.substr(0, 2), mon = text.substr(3, 3),
                     year = text.substr(7, 4), hh = text.substr(12, 2),
                     mm = text.substr(15, 2), ss = text.substr(18, 2),
                     zone = text.substr(21, 5);
    if (!all_digits(day) || !all_digits(year) || !all_digits(hh) || !all_digits(mm) ||
        !all_digits(ss))
        return std::nullopt;
    int m = month_number(mon);
    if (m == 0) return std::nullopt;
    if (zone[0] != '+' && zone[0] != '-') return std::nullopt;
    if (!all_digits(zone.substr(1))) return std::nullopt;

    int d = read_int(day), y = read_int(year);
    int hour = read_int(hh), minute = read_int(mm), second = read_int(ss);
    if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

    namespace chr = std::chrono;
    chr::year_month_day ymd{chr::year{y}, chr::month{unsigned(m)}, chr::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;

    int zh = read_int(zone.substr(1, 2)), zm = read_int(zone.substr(3, 2));
    if (zh > 23 || zm > 59) return std::nullopt;
    std::int64_t offset = std::int64_t(zh) * 3600 + std::int64_t(zm) * 60;
    if (zone[0] == '-') offset = -offset;

    std::int64_t days = chr::sys_days(ymd).time_since_epoch().count();
    std::int64_t local = days * 86400 + hour * 3600 + minute * 60 + second;
    return local - offset;
}

std::string format_log_time(std::int64_t epoch_seconds) {
    namespace chr = std::chrono;
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02u/%s/%04d:%02lld:%02lld:%02lld +0000",
                  unsigned(ymd.day()), kMonths[unsigned(ymd.month()) - 1],
                  int(ymd.year()), static_cast<long long>(rem / 3600),
                  static_cast<long long>(rem / 60 % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

ParseResult parse_line(std::string_view line, const LogFormat& format,
                       std::int64_t source_line) {
    Cursor cur{line};
    LogRecord rec;
    rec.source_line = source_line;
    std::string host;
    bool have_host = false;

    for (LogToken tok : format.tokens) {
        std::string value;
        switch (tok) {
            case LogToken::Time: {
                if (!cur.bracketed(value))
                    return ParseError{ParseErrorKind::MalformedLine, "missing [time] field"};
                auto t = parse_log_time(value);
                if (!t)
                    return ParseError{ParseErrorKind::BadTimestamp,
                                      "bad timestamp '" + value + "'"};
                rec.timestamp = *t;
                break;
            }
            case LogToken::Request: {
                if (!cur.quoted(value))
                    return ParseError{ParseErrorKind::MalformedLine, "missing quoted request"};
                if (!split_request(value, rec))
                    return ParseError{ParseErrorKind::MalformedLine,
                                      "bad request '" + value + "'"};
                break;
            }
            case LogToken::Status: {
                if (!cur.plain(value))
                    return ParseError{ParseErrorKind::MalformedLine, "missing status field"};
                if (!all_digits(value) || value.size() > 3)
                    return ParseError{ParseErrorKind::BadStatus,
                                      "non-integer status '" + value + "'"};
                rec.status = read_int(value);
                if (rec.status < 100 || rec.status > 599)
                    return ParseError{ParseErrorKind::BadStatus,
                                      "status out of range '" + value + "'"};
                break;
            }
            case LogToken::Size: {
                if (!cur.plain(value))
                    return ParseError{ParseErrorKind::MalformedLine, "missing size field"};
                if (value == "-") break;
                if (!all_digits(value) || value.size() > 18)
                    return ParseError{ParseErrorKind::MalformedLine,
                                      "bad size field '" + value + "'"};
                std::int64_t sz = 0;
                std::from_chars(value.data(), value.data() + value.size(), sz);
                rec.size = sz;
                break;
            }
            case LogToken::Referer:
            case LogToken::UserAgent:
            case LogToken::ClientIp: {
                if (!cur.quoted(value))
                    return ParseError{ParseErrorKind::MalformedLine,
                                      "missing quoted field"};
                auto opt = dash_optional(std::move(value));
                if (tok == LogToken::Referer)
                    rec.referer = std::move(opt);
                else if (tok == LogToken::UserAgent)
                    rec.user_agent = std::move(opt);
                else
                    rec.client_ip = std::move(opt);
                break;
            }
            case LogToken::Host: {
                if (!cur.plain(value))
                    return ParseError{ParseErrorKind::MalformedLine, "missing host field"};
                host = std::move(value);
                have_host = true;
                break;
            }
            case LogToken::Identd:
            case LogToken::AuthUser: {
                if (!cur.plain(value))
                    return ParseError{ParseErrorKind::MalformedLine, "missing field"};
                break;
            }
        }
    }
    if (!cur.at_end())
        return ParseError{ParseErrorKind::MalformedLine, "trailing content"};

    // The trailing quoted IP wins over the host column when both exist.
    if (have_host && !format.has(LogToken::ClientIp))
        rec.client_ip = dash_optional(std::move(host));
    return rec;
}

std::string format_line(const LogRecord& record, const LogFormat& format) {
    std::string out;
    bool trailing_ip = format.has(LogToken::ClientIp);
    bool first = true;
    for (LogToken tok : format.tokens) {
        if (!first) out.push_back(' ');
        first = false;
        switch (tok) {
            case LogToken::Host:
                out += trailing_ip ? "-" : record.client_ip.value_or("-");
                break;
            case LogToken::Identd:
            case LogToken::AuthUser:
                out += "-";
                break;
            case LogToken::Time:
                out += "[" + format_log_time(record.timestamp) + "]";
                break;
            case LogToken::Request:
                out += "\"" +
                       escape_quoted(record.method + " " + record.path + " " +
                                     record.protocol) +
                       "\"";
                break;
            case LogToken::Status:
                out += std::to_string(record.status);
                break;
            case LogToken::Size:
                out += record.size ? std::to_string(*record.size) : "-";
                break;
            case LogToken::Referer:
                out += "\"" + escape_quoted(record.referer.value_or("-")) + "\"";
                break;
            case LogToken::UserAgent:
                out += "\"" + escape_quoted(record.user_agent.value_or("-")) + "\"";
                break;
            case LogToken::ClientIp:
                out += "\"" + escape_quoted(record.client_ip.value_or("-")) + "\"";
                break;
        }
    }
    return out;
}

StreamResult parse_stream(const std::vector<std::string>& lines,
                          const LogFormat& format, std::int64_t first_line) {
    StreamResult out;
    out.records.reserve(lines.size());
    std::int64_t lineno = first_line;
    for (const auto& line : lines) {
        auto res = parse_line(line, format, lineno);
        if (auto* rec = std::get_if<LogRecord>(&res))
            out.records.push_back(std::move(*rec));
        else
            out.error_log.emplace_back(lineno, std::get<ParseError>(std::move(res)));
        ++lineno;
    }
    return out;
}

std::string resource_key(const LogRecord& record, PathPolicy policy) {
    if (policy == PathPolicy::StripQuery) {
        auto q = record.path.find('?');
        if (q != std::string::npos) return record.path.substr(0, q);
    }
    return record.path;
}

const char* to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::MalformedLine: return "MalformedLine";
        case ParseErrorKind::BadTimestamp: return "BadTimestamp";
        case ParseErrorKind::BadStatus: return "BadStatus";
    }
    return "?";
}

}  // namespace sgraph
