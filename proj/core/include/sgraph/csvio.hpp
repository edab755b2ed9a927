#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sgraph/logparse.hpp"

// CSV serialization for parsed records and small shared helpers.
//
// Quoting convention: string-valued fields are always quoted (so a
// present empty string survives the round trip), numeric fields are
// bare, and an absent optional is a fully empty unquoted field.

namespace sgraph {

struct CsvError : std::runtime_error {
    CsvError(const std::string& what, std::int64_t line)
        : std::runtime_error(what + " at line " + std::to_string(line)),
          line(line) {}
    std::int64_t line;
};

// Appends `field` to `out` quoted, doubling inner quotes.
void append_csv_quoted(std::string& out, std::string_view field);

// Splits one CSV line; quoted fields may hold commas and doubled quotes.
// `quoted[i]` reports whether field i was quoted. Throws CsvError on a
// dangling quote or trailing garbage.
std::vector<std::string> split_csv_line(std::string_view line,
                                        std::vector<bool>* quoted = nullptr,
                                        std::int64_t line_no = 0);

inline constexpr const char* kRecordsCsvHeader =
    "source_line,timestamp,method,path,protocol,status,size,referer,"
    "user_agent,client_ip";

void write_records_csv(std::ostream& out,
                       const std::vector<LogRecord>& records);

// Inverse of write_records_csv; validates the header and every row.
std::vector<LogRecord> read_records_csv(std::istream& in);

}  // namespace sgraph
