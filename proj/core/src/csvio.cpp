#include "sgraph/csvio.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace sgraph {

void append_csv_quoted(std::string& out, std::string_view field) {
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

std::vector<std::string> split_csv_line(std::string_view line,
                                        std::vector<bool>* quoted,
                                        std::int64_t line_no) {
    std::vector<std::string> fields;
    if (quoted) quoted->clear();
    std::size_t i = 0;
    while (true) {
        std::string field;
        bool was_quoted = false;
        if (i < line.size() && line[i] == '"') {
            was_quoted = true;
            ++i;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        i += 2;
                    } else {
                        ++i;
                        closed = true;
                        break;
                    }
                } else {
                    field += line[i++];
                }
            }
            if (!closed) throw CsvError("unterminated quoted field", line_no);
            if (i < line.size() && line[i] != ',')
                throw CsvError("text after closing quote", line_no);
        } else {
            while (i < line.size() && line[i] != ',') field += line[i++];
        }
        fields.push_back(std::move(field));
        if (quoted) quoted->push_back(was_quoted);
        if (i >= line.size()) break;
        ++i;  // consume the comma; a trailing comma yields an empty field
        if (i == line.size()) {
            fields.emplace_back();
            if (quoted) quoted->push_back(false);
            break;
        }
    }
    return fields;
}

void write_records_csv(std::ostream& out,
                       const std::vector<LogRecord>& records) {
    out << kRecordsCsvHeader << '\n';
    std::string row;
    for (const auto& r : records) {
        row.clear();
        row += std::to_string(r.source_line);
        row += ',';
        row += std::to_string(r.timestamp);
        row += ',';
        append_csv_quoted(row, r.method);
        row += ',';
        append_csv_quoted(row, r.path);
        row += ',';
        append_csv_quoted(row, r.protocol);
        row += ',';
        row += std::to_string(r.status);
        row += ',';
        if (r.size) row += std::to_string(*r.size);
        row += ',';
        if (r.referer) append_csv_quoted(row, *r.referer);
        row += ',';
        if (r.user_agent) append_csv_quoted(row, *r.user_agent);
        row += ',';
        if (r.client_ip) append_csv_quoted(row, *r.client_ip);
        row += '\n';
        out << row;
    }
}

namespace {

std::int64_t parse_int_field(const std::string& text, const char* what,
                             std::int64_t line_no) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw CsvError(std::string("bad ") + what + " field", line_no);
    return value;
}

std::optional<std::string> optional_field(std::string&& text, bool was_quoted) {
    if (!was_quoted && text.empty()) return std::nullopt;
    return std::move(text);
}

}  // namespace

std::vector<LogRecord> read_records_csv(std::istream& in) {
    std::vector<LogRecord> records;
    std::string line;
    std::int64_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!saw_header) {
            if (line != kRecordsCsvHeader)
                throw CsvError("unexpected records header", line_no);
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<bool> quoted;
        auto fields = split_csv_line(line, &quoted, line_no);
        if (fields.size() != 10)
            throw CsvError("expected 10 fields", line_no);
        LogRecord r;
        r.source_line = parse_int_field(fields[0], "source_line", line_no);
        r.timestamp = parse_int_field(fields[1], "timestamp", line_no);
        r.method = std::move(fields[2]);
        r.path = std::move(fields[3]);
        r.protocol = std::move(fields[4]);
        r.status = static_cast<int>(parse_int_field(fields[5], "status", line_no));
        if (quoted[6] || !fields[6].empty())
            r.size = parse_int_field(fields[6], "size", line_no);
        r.referer = optional_field(std::move(fields[7]), quoted[7]);
        r.user_agent = optional_field(std::move(fields[8]), quoted[8]);
        r.client_ip = optional_field(std::move(fields[9]), quoted[9]);
        records.push_back(std::move(r));
    }
    if (!saw_header) throw CsvError("missing records header", 0);
    return records;
}

}  // namespace sgraph
