#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sgraph {

// One parsed access-log entry. Timestamps are converted to UTC epoch
// seconds at parse time; all downstream time arithmetic is integer
// seconds, so the original zone offset does not survive parsing.
struct LogRecord {
    std::int64_t timestamp = 0;  // epoch seconds, UTC
    std::string method;
    std::string path;  // request path including any query string
    std::string protocol;
    int status = 0;
    std::optional<std::int64_t> size;
    std::optional<std::string> referer;
    std::optional<std::string> user_agent;
    std::optional<std::string> client_ip;
    std::int64_t source_line = 0;

    bool operator==(const LogRecord&) const = default;
};

// Field layout of one log line. Letters follow the usual access-log
// conventions:
//   h  host (plain token, feeds client_ip unless an A token is present)
//   i  identd (plain token, ignored)
//   u  authuser (plain token, ignored)
//   t  bracketed timestamp [dd/Mon/yyyy:HH:MM:SS +zzzz]
//   r  quoted request "METHOD path PROTOCOL"
//   s  status code
//   b  response size or "-"
//   R  quoted referer
//   U  quoted user agent
//   A  quoted trailing client IP (takes precedence over h)
enum class LogToken {
    Host,
    Identd,
    AuthUser,
    Time,
    Request,
    Status,
    Size,
    Referer,
    UserAgent,
    ClientIp,
};

struct LogFormat {
    std::vector<LogToken> tokens;

    bool has(LogToken t) const;
};

// Builds a LogFormat from a token string such as "h i u t r s b R U A".
// The aliases "combined" (h i u t r s b R U) and "combined-ip"
// (h i t r s b R U A, host column blank and the real client IP in a
// trailing quoted field) are accepted as shorthands.
// Throws FormatError unless the layout has exactly one each of t, r, s.
LogFormat parse_format(std::string_view spec);

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind { MalformedLine, BadTimestamp, BadStatus };

struct ParseError {
    ParseErrorKind kind;
    std::string detail;
};

const char* to_string(ParseErrorKind k);

using ParseResult = std::variant<LogRecord, ParseError>;

// Parses one complete log line. "-" placeholders become absent
// optionals, quoted fields unescape embedded \" and \\.
ParseResult parse_line(std::string_view line, const LogFormat& format,
                       std::int64_t source_line = 0);

// Renders a record back into the given layout (zone is always +0000).
// parse_line(format_line(r, f), f) reproduces r for any record whose
// plain-token fields are free of whitespace.
std::string format_line(const LogRecord& record, const LogFormat& format);

struct StreamResult {
    std::vector<LogRecord> records;
    std::vector<std::pair<std::int64_t, ParseError>> error_log;
};

// Parses many lines, collecting failures instead of throwing. Every
// input line lands in exactly one of records / error_log; input order
// is preserved. line numbers are 1-based and offset by first_line - 1.
StreamResult parse_stream(const std::vector<std::string>& lines,
                          const LogFormat& format,
                          std::int64_t first_line = 1);

enum class PathPolicy { Verbatim, StripQuery };

// Resource identifier for a record: the path as-is, or with everything
// from the first '?' removed.
std::string resource_key(const LogRecord& record, PathPolicy policy);

// Epoch seconds for a "dd/Mon/yyyy:HH:MM:SS +zzzz" timestamp, or
// nullopt if the text does not denote a valid instant.
std::optional<std::int64_t> parse_log_time(std::string_view text);

// Inverse of parse_log_time, rendered in UTC ("+0000").
std::string format_log_time(std::int64_t epoch_seconds);

}  // namespace sgraph
