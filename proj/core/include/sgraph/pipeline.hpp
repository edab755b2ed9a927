#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sgraph/jsonout.hpp"
#include "sgraph/logparse.hpp"
#include "sgraph/modelselect.hpp"
#include "sgraph/statfit.hpp"

// End-to-end orchestration: parse -> split -> sessionize -> graph ->
// metrics -> fit -> compare -> export, plus the per-stage entry points
// the CLI exposes so stages can be re-run independently.

namespace sgraph {

struct IoError : std::runtime_error {
    IoError(const std::string& what, const std::string& path)
        : std::runtime_error(what + ": " + path), path(path) {}
    std::string path;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The whole input parsed to zero records; there is nothing to analyze.
struct EmptyTraffic : std::runtime_error {
    EmptyTraffic() : std::runtime_error("no records parsed from any input") {}
};

enum class XminMode { Auto, Fixed };

struct ExportToggles {
    bool graphml = false;
    bool edgelist = false;
    bool frequency = false;
    bool sessions = false;
};

struct RunConfig {
    std::vector<std::string> inputs;     // paths; glob patterns allowed
    std::string format = "combined-ip";  // token string or alias
    std::string signature_db;            // empty: no robot signatures
    std::int64_t cutoff_seconds = 1800;
    PathPolicy normalization = PathPolicy::Verbatim;
    XminMode xmin_mode = XminMode::Auto;
    std::int64_t xmin_fixed = 1;
    std::string out_dir;
    std::uint64_t seed = 0;  // echoed into the report
    ExportToggles exports;
};

// Expands glob patterns, sorts the union by path, and removes
// duplicates. Throws IoError naming any pattern with no match.
std::vector<std::string> expand_inputs(const std::vector<std::string>& patterns);

// Parses every file in order; record source_line numbers restart per
// file. Throws IoError on an unreadable path.
StreamResult parse_files(const std::vector<std::string>& files,
                         const LogFormat& format);

// Fits and comparisons for one degree direction. Zeros must already be
// excluded from `degrees` handed to analyze_direction.
struct DirectionAnalysis {
    Direction direction = Direction::In;
    bool xmin_auto = true;
    std::int64_t xmin = 1;
    std::string xmin_error;  // set when auto selection failed
    // Fixed order: exponential, lognormal, zeta, dpln. The string
    // alternative holds the failure message for fits that errored.
    std::vector<std::pair<DistKind, std::variant<FitResult, std::string>>> fits;
    std::vector<LlrResult> comparisons;
    std::string comparisons_error;  // set when a required fit is missing
};

// Runs xmin selection (or applies the fixed value), the three tail MLE
// fits, the method-of-moments DPLN fit, and the five comparisons.
// Individual failures land in the per-fit error slot instead of
// propagating.
DirectionAnalysis analyze_direction(const std::vector<std::int64_t>& degrees,
                                    Direction direction, XminMode mode,
                                    std::int64_t fixed_xmin);

Json direction_to_json(const DirectionAnalysis& analysis);

// Canonical single-line JSON document for a direction's fits, newline
// terminated; written as {prefix}_{direction}_fits.json.
std::string fits_file_text(const DirectionAnalysis& analysis);

// Comparisons CSV for a direction; written as
// {prefix}_{direction}_comparisons.csv.
std::string comparisons_file_text(const DirectionAnalysis& analysis);

// Reads one degree column ("in_degree" or "out_degree") of a node table
// produced by write_node_table_csv.
std::vector<std::int64_t> read_degree_column(std::istream& in,
                                             Direction direction);

// Writes `content` atomically enough for our purposes (truncate +
// write); throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

// Full pipeline. Writes report.json plus enabled exports into
// config.out_dir and returns the report document. Per-class artifacts
// are prefixed "human_" / "robot_"; fits and comparisons files are
// always written for non-empty classes.
Json run(const RunConfig& config);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace sgraph
