// sgraph: turn web access logs into session graphs and tail fits.
//
// Subcommands either run the whole pipeline (`run`) or one stage
// (`parse`, `split`, `sessionize`, `graph`, `fit`, `compare`,
// `export`), reading and writing the intermediate CSV/JSON formats so
// stages can be re-run and composed independently.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sgraph/botfilter.hpp"
#include "sgraph/csvio.hpp"
#include "sgraph/graphcore.hpp"
#include "sgraph/jsonout.hpp"
#include "sgraph/logparse.hpp"
#include "sgraph/modelselect.hpp"
#include "sgraph/pipeline.hpp"
#include "sgraph/sessionizer.hpp"

namespace {

using namespace sgraph;

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input", path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<LogRecord> load_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open records file", path);
    return read_records_csv(in);
}

LogFormat checked_format(const std::string& format) {
    try {
        return parse_format(format);
    } catch (const FormatError& e) {
        throw ConfigError(std::string("bad log format: ") + e.what());
    }
}

std::int64_t checked_cutoff(std::int64_t cutoff) {
    if (cutoff <= 0) throw ConfigError("session cutoff must be positive");
    return cutoff;
}

void parse_xmin(const std::string& text, XminMode& mode, std::int64_t& fixed) {
    if (text == "auto") {
        mode = XminMode::Auto;
        return;
    }
    try {
        std::size_t pos = 0;
        fixed = std::stoll(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ConfigError("--xmin needs 'auto' or an integer, got '" + text +
                          "'");
    }
    if (fixed < 1) throw ConfigError("fixed xmin must be >= 1");
    mode = XminMode::Fixed;
}

ExportToggles parse_exports(const std::vector<std::string>& names) {
    ExportToggles t;
    for (const auto& name : names) {
        if (name == "graphml") t.graphml = true;
        else if (name == "edgelist") t.edgelist = true;
        else if (name == "frequency") t.frequency = true;
        else if (name == "sessions") t.sessions = true;
        else if (name == "all")
            t = ExportToggles{true, true, true, true};
        else
            throw ConfigError("unknown export '" + name +
                              "' (graphml, edgelist, frequency, sessions, all)");
    }
    return t;
}

// Writes to the path, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_file(path, content);
}

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

Json graph_metrics_json(const SessionGraph& graph) {
    Json g;
    const std::int64_t nodes = graph.node_count();
    g["nodes"] = nodes;
    g["edges"] = graph.edge_count();
    g["self_loops"] = graph.self_loop_count();
    g["total_weight"] = graph.total_weight();
    g["density"] = nodes >= 2 ? Json(density(graph)) : Json(nullptr);
    g["mean_degree"] = nodes >= 1 ? Json(mean_degree(graph)) : Json(nullptr);
    g["reciprocity_edge_ratio"] =
        reciprocity(graph, ReciprocityMode::EdgeRatio);
    g["reciprocity_pair_formula"] =
        nodes >= 2 ? Json(reciprocity(graph, ReciprocityMode::PairFormula))
                   : Json(nullptr);
    const ComponentSummary comp = component_summary(graph);
    g["wcc_count"] = comp.wcc_count;
    g["scc_count"] = comp.scc_count;
    g["largest_wcc"] = comp.largest_wcc;
    g["largest_scc"] = comp.largest_scc;
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"session graph construction and heavy-tail analysis for web access logs"};
    app.set_version_flag("--version", sgraph::kToolVersion);
    app.require_subcommand(1);

    // Shared option storage; each subcommand binds the subset it uses.
    std::vector<std::string> inputs;
    std::string format = "combined-ip";
    std::string bots_db;
    std::string xmin_text = "auto";
    std::string out;
    std::string out_dir;
    std::string prefix = "graph";
    std::string direction_text = "in";
    std::int64_t cutoff = 1800;
    std::uint64_t seed = 0;
    bool strip_query = false;
    std::vector<std::string> export_names;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format,
                        "log format token string or alias (combined, combined-ip)")
            ->envname("SGRAPH_FORMAT")
            ->capture_default_str();
    };
    auto add_cutoff = [&](CLI::App* cmd) {
        cmd->add_option("--cutoff", cutoff, "session cutoff T in seconds")
            ->envname("SGRAPH_CUTOFF")
            ->capture_default_str();
    };
    auto add_strip = [&](CLI::App* cmd) {
        cmd->add_flag("--strip-query", strip_query,
                      "drop query strings when naming resources")
            ->envname("SGRAPH_STRIP_QUERY");
    };
    auto add_xmin = [&](CLI::App* cmd) {
        cmd->add_option("--xmin", xmin_text, "'auto' or a fixed integer cut")
            ->envname("SGRAPH_XMIN")
            ->capture_default_str();
    };
    auto add_direction = [&](CLI::App* cmd) {
        cmd->add_option("--direction", direction_text, "degree direction: in or out")
            ->envname("SGRAPH_DIRECTION")
            ->check(CLI::IsMember({"in", "out"}))
            ->capture_default_str();
    };
    auto add_out = [&](CLI::App* cmd, const char* what) {
        cmd->add_option("--out", out, what)->envname("SGRAPH_OUT");
    };

    // --- run -----------------------------------------------------------
    auto* cmd_run = app.add_subcommand("run", "full pipeline: parse through report");
    add_format(cmd_run);
    add_cutoff(cmd_run);
    add_strip(cmd_run);
    add_xmin(cmd_run);
    cmd_run->add_option("--bots-db", bots_db, "robot signature db path")
        ->envname("SGRAPH_BOTS_DB");
    cmd_run->add_option("--out", out_dir, "output directory for the report and exports")
        ->envname("SGRAPH_OUT")
        ->required();
    cmd_run->add_option("--seed", seed, "seed echoed into the report")
        ->envname("SGRAPH_SEED")
        ->capture_default_str();
    cmd_run->add_option("--export", export_names,
                        "artifacts to export: graphml, edgelist, frequency, sessions, all")
        ->envname("SGRAPH_EXPORT")
        ->delimiter(',');
    cmd_run->add_option("inputs", inputs, "log files or glob patterns")->required();
    cmd_run->callback([&] {
        RunConfig config;
        config.inputs = inputs;
        config.format = format;
        config.signature_db = bots_db;
        config.cutoff_seconds = cutoff;
        config.normalization =
            strip_query ? PathPolicy::StripQuery : PathPolicy::Verbatim;
        parse_xmin(xmin_text, config.xmin_mode, config.xmin_fixed);
        config.out_dir = out_dir;
        config.seed = seed;
        config.exports = parse_exports(export_names);
        Json report = run(config);
        std::cout << "report: " << out_path(out_dir, "report.json") << '\n';
    });

    // --- parse ---------------------------------------------------------
    auto* cmd_parse = app.add_subcommand("parse", "parse logs into a records CSV");
    add_format(cmd_parse);
    add_out(cmd_parse, "records CSV path (stdout when omitted)");
    cmd_parse->add_option("inputs", inputs, "log files or glob patterns")->required();
    cmd_parse->callback([&] {
        const LogFormat fmt = checked_format(format);
        const auto files = expand_inputs(inputs);
        std::vector<LogRecord> records;
        std::int64_t errors = 0;
        for (const auto& path : files) {
            StreamResult one = parse_stream(read_lines(path), fmt, 1);
            for (const auto& [line_no, err] : one.error_log) {
                std::cerr << path << ':' << line_no << ": "
                          << to_string(err.kind) << ": " << err.detail << '\n';
                ++errors;
            }
            std::move(one.records.begin(), one.records.end(),
                      std::back_inserter(records));
        }
        std::ostringstream os;
        write_records_csv(os, records);
        emit(out, os.str());
        std::cerr << records.size() << " records, " << errors << " rejected\n";
    });

    // --- split ---------------------------------------------------------
    auto* cmd_split = app.add_subcommand("split", "split a records CSV into humans and robots");
    cmd_split->add_option("--bots-db", bots_db, "robot signature db path")
        ->envname("SGRAPH_BOTS_DB");
    cmd_split->add_option("--out-dir", out_dir, "directory for humans.csv and robots.csv")
        ->envname("SGRAPH_OUT_DIR")
        ->required();
    cmd_split->add_option("records", inputs, "records CSV")->expected(1)->required();
    cmd_split->callback([&] {
        AgentSignatureDb db;
        if (!bots_db.empty()) {
            std::ifstream probe(bots_db);
            if (!probe) throw IoError("cannot open signature db", bots_db);
            db = load_signature_db_file(bots_db);
        }
        const auto records = load_records(inputs[0]);
        const SplitResult split = split_stream(records, db);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory", out_dir);
        std::ostringstream hs, rs;
        write_records_csv(hs, split.humans);
        write_records_csv(rs, split.robots);
        write_text_file(out_path(out_dir, "humans.csv"), hs.str());
        write_text_file(out_path(out_dir, "robots.csv"), rs.str());
        std::cerr << split.humans.size() << " human, " << split.robots.size()
                  << " robot, " << split.unidentified << " unidentified\n";
    });

    // --- sessionize ----------------------------------------------------
    auto* cmd_sessionize =
        app.add_subcommand("sessionize", "group a records CSV into sessions");
    add_cutoff(cmd_sessionize);
    add_strip(cmd_sessionize);
    add_out(cmd_sessionize, "sessions CSV path (stdout when omitted)");
    cmd_sessionize->add_option("records", inputs, "records CSV")->expected(1)->required();
    cmd_sessionize->callback([&] {
        const auto records = load_records(inputs[0]);
        const auto sessions = sessionize(
            records, checked_cutoff(cutoff),
            strip_query ? PathPolicy::StripQuery : PathPolicy::Verbatim);
        std::ostringstream os;
        write_sessions_csv(os, sessions);
        emit(out, os.str());
        std::cerr << sessions.size() << " sessions\n";
    });

    // --- graph ---------------------------------------------------------
    auto* cmd_graph = app.add_subcommand(
        "graph", "build the session graph and export edge/node tables");
    add_cutoff(cmd_graph);
    add_strip(cmd_graph);
    cmd_graph->add_option("--out-dir", out_dir, "directory for the exports")
        ->envname("SGRAPH_OUT_DIR")
        ->required();
    cmd_graph->add_option("--prefix", prefix, "artifact file name prefix")
        ->envname("SGRAPH_PREFIX")
        ->capture_default_str();
    cmd_graph->add_option("records", inputs, "records CSV")->expected(1)->required();
    cmd_graph->callback([&] {
        const auto records = load_records(inputs[0]);
        const auto sessions = sessionize(
            records, checked_cutoff(cutoff),
            strip_query ? PathPolicy::StripQuery : PathPolicy::Verbatim);
        const SessionGraph graph = build_graph(sessions);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory", out_dir);
        std::ostringstream es, ns;
        write_edge_list_csv(es, graph);
        write_node_table_csv(ns, graph);
        write_text_file(out_path(out_dir, prefix + "_edges.csv"), es.str());
        write_text_file(out_path(out_dir, prefix + "_nodes.csv"), ns.str());
        std::cout << dump_canonical(graph_metrics_json(graph)) << '\n';
    });

    // --- fit -----------------------------------------------------------
    auto* cmd_fit = app.add_subcommand(
        "fit", "fit tail distributions to one degree column of a node table");
    add_xmin(cmd_fit);
    add_direction(cmd_fit);
    add_out(cmd_fit, "fits JSON path (stdout when omitted)");
    cmd_fit->add_option("nodes", inputs, "node table CSV")->expected(1)->required();
    cmd_fit->callback([&] {
        std::ifstream in(inputs[0], std::ios::binary);
        if (!in) throw IoError("cannot open node table", inputs[0]);
        const Direction dir =
            direction_text == "in" ? Direction::In : Direction::Out;
        const auto degrees = read_degree_column(in, dir);
        XminMode mode = XminMode::Auto;
        std::int64_t fixed = 1;
        parse_xmin(xmin_text, mode, fixed);
        emit(out, fits_file_text(analyze_direction(degrees, dir, mode, fixed)));
    });

    // --- compare -------------------------------------------------------
    auto* cmd_compare = app.add_subcommand(
        "compare", "pairwise model comparisons for one degree column");
    add_xmin(cmd_compare);
    add_direction(cmd_compare);
    add_out(cmd_compare, "comparisons CSV path (stdout when omitted)");
    cmd_compare->add_option("nodes", inputs, "node table CSV")->expected(1)->required();
    cmd_compare->callback([&] {
        std::ifstream in(inputs[0], std::ios::binary);
        if (!in) throw IoError("cannot open node table", inputs[0]);
        const Direction dir =
            direction_text == "in" ? Direction::In : Direction::Out;
        const auto degrees = read_degree_column(in, dir);
        XminMode mode = XminMode::Auto;
        std::int64_t fixed = 1;
        parse_xmin(xmin_text, mode, fixed);
        emit(out,
             comparisons_file_text(analyze_direction(degrees, dir, mode, fixed)));
    });

    // --- export --------------------------------------------------------
    auto* cmd_export = app.add_subcommand(
        "export", "write analysis artifacts for one records CSV");
    add_cutoff(cmd_export);
    add_strip(cmd_export);
    cmd_export->add_option("--out-dir", out_dir, "directory for the artifacts")
        ->envname("SGRAPH_OUT_DIR")
        ->required();
    cmd_export->add_option("--prefix", prefix, "artifact file name prefix")
        ->envname("SGRAPH_PREFIX")
        ->capture_default_str();
    cmd_export->add_option("--export", export_names,
                           "graphml, edgelist, frequency, sessions, all")
        ->envname("SGRAPH_EXPORT")
        ->delimiter(',');
    cmd_export->add_option("records", inputs, "records CSV")->expected(1)->required();
    cmd_export->callback([&] {
        const ExportToggles toggles = parse_exports(export_names);
        const auto records = load_records(inputs[0]);
        const auto sessions = sessionize(
            records, checked_cutoff(cutoff),
            strip_query ? PathPolicy::StripQuery : PathPolicy::Verbatim);
        const SessionGraph graph = build_graph(sessions);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory", out_dir);
        if (toggles.sessions) {
            std::ostringstream os;
            write_sessions_csv(os, sessions);
            write_text_file(out_path(out_dir, prefix + "_sessions.csv"), os.str());
        }
        if (toggles.edgelist) {
            std::ostringstream es, ns;
            write_edge_list_csv(es, graph);
            write_node_table_csv(ns, graph);
            write_text_file(out_path(out_dir, prefix + "_edges.csv"), es.str());
            write_text_file(out_path(out_dir, prefix + "_nodes.csv"), ns.str());
        }
        if (toggles.graphml) {
            std::ostringstream os;
            write_graphml(os, graph);
            write_text_file(out_path(out_dir, prefix + ".graphml"), os.str());
        }
        if (toggles.frequency) {
            const DegreeVectors deg = degrees(graph);
            for (const Direction dir : {Direction::In, Direction::Out}) {
                std::ostringstream os;
                write_frequency_csv(
                    os, frequency_table(dir == Direction::In ? deg.in : deg.out));
                write_text_file(out_path(out_dir, prefix + "_" +
                                                      to_string(dir) +
                                                      "_frequency.csv"),
                                os.str());
            }
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
