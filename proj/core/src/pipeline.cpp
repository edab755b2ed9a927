#include "sgraph/pipeline.hpp"

#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sgraph/botfilter.hpp"
#include "sgraph/csvio.hpp"
#include "sgraph/graphcore.hpp"
#include "sgraph/sessionizer.hpp"

namespace sgraph {

std::vector<std::string> expand_inputs(
    const std::vector<std::string>& patterns) {
    std::vector<std::string> files;
    for (const auto& pattern : patterns) {
        glob_t g{};
        const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
        if (rc == GLOB_NOMATCH) {
            ::globfree(&g);
            throw IoError("no input matches", pattern);
        }
        if (rc != 0) {
            ::globfree(&g);
            throw IoError("glob failed", pattern);
        }
        for (std::size_t i = 0; i < g.gl_pathc; ++i)
            files.emplace_back(g.gl_pathv[i]);
        ::globfree(&g);
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

StreamResult parse_files(const std::vector<std::string>& files,
                         const LogFormat& format) {
    StreamResult all;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open input", path);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
        StreamResult one = parse_stream(lines, format, 1);
        std::move(one.records.begin(), one.records.end(),
                  std::back_inserter(all.records));
        std::move(one.error_log.begin(), one.error_log.end(),
                  std::back_inserter(all.error_log));
    }
    return all;
}

DirectionAnalysis analyze_direction(const std::vector<std::int64_t>& degrees,
                                    Direction direction, XminMode mode,
                                    std::int64_t fixed_xmin) {
    DirectionAnalysis a;
    a.direction = direction;
    a.xmin_auto = mode == XminMode::Auto;
    std::vector<double> positive;
    positive.reserve(degrees.size());
    for (auto d : degrees)
        if (d > 0) positive.push_back(static_cast<double>(d));

    if (mode == XminMode::Auto) {
        try {
            a.xmin = estimate_xmin(positive).xmin;
        } catch (const std::exception& e) {
            a.xmin = 1;
            a.xmin_error = e.what();
        }
    } else {
        a.xmin = fixed_xmin;
    }

    TailSample tail;
    std::string tail_error;
    bool have_tail = false;
    try {
        tail = make_tail_sample(positive, a.xmin);
        have_tail = true;
    } catch (const std::exception& e) {
        tail_error = e.what();
    }

    auto attempt = [&](DistKind kind, auto&& fn) {
        if (!have_tail) {
            a.fits.emplace_back(kind, tail_error);
            return;
        }
        try {
            a.fits.emplace_back(kind, fn());
        } catch (const std::exception& e) {
            a.fits.emplace_back(kind, std::string(e.what()));
        }
    };
    attempt(DistKind::Exponential, [&] { return fit_exponential_mle(tail); });
    attempt(DistKind::Lognormal, [&] { return fit_lognormal_mle(tail); });
    attempt(DistKind::Zeta, [&] { return fit_zeta_mle(tail); });
    attempt(DistKind::Dpln, [&] {
        return make_fit(DistKind::Dpln, fit_dpln_moments(positive), tail);
    });

    if (have_tail) {
        std::vector<FitResult> ok;
        for (const auto& [kind, v] : a.fits)
            if (const auto* f = std::get_if<FitResult>(&v)) ok.push_back(*f);
        try {
            a.comparisons = compare_all(tail, ok, direction);
        } catch (const MissingFit& e) {
            a.comparisons_error = e.what();
        }
    } else {
        a.comparisons_error = tail_error;
    }
    return a;
}

namespace {

Json params_json(const FitResult& fit) {
    Json p;
    switch (fit.kind) {
        case DistKind::Exponential:
            p["lambda"] = std::get<ExponentialParams>(fit.params).lambda;
            break;
        case DistKind::Lognormal: {
            const auto& q = std::get<LognormalParams>(fit.params);
            p["mu"] = q.mu;
            p["sigma"] = q.sigma;
            break;
        }
        case DistKind::Zeta:
            p["alpha"] = std::get<ZetaParams>(fit.params).alpha;
            break;
        case DistKind::Dpln: {
            const auto& q = std::get<DplnParams>(fit.params);
            p["alpha"] = q.alpha;
            p["beta"] = q.beta;
            p["mu"] = q.mu;
            p["sigma"] = q.sigma;
            break;
        }
    }
    return p;
}

Json fit_json(DistKind kind, const std::variant<FitResult, std::string>& v) {
    Json f;
    f["kind"] = to_string(kind);
    if (const auto* fit = std::get_if<FitResult>(&v)) {
        f["params"] = params_json(*fit);
        f["xmin"] = fit->xmin;
        f["n_tail"] = fit->n_tail;
        f["log_likelihood"] = fit->log_likelihood;
    } else {
        f["error"] = std::get<std::string>(v);
    }
    return f;
}

Json llr_json(const LlrResult& c) {
    Json j;
    j["first"] = to_string(c.first);
    j["second"] = to_string(c.second);
    j["R"] = c.R;
    j["p_value"] = c.p_value;
    j["n_tail"] = c.n_tail;
    j["better"] = better_fit(c);
    return j;
}

Json fits_subdocument(const DirectionAnalysis& a) {
    Json d;
    d["direction"] = to_string(a.direction);
    d["xmin"] = a.xmin;
    d["xmin_mode"] = a.xmin_auto ? "auto" : "fixed";
    if (!a.xmin_error.empty()) d["xmin_error"] = a.xmin_error;
    Json fits = Json::array();
    for (const auto& [kind, v] : a.fits) fits.push_back(fit_json(kind, v));
    d["fits"] = fits;
    return d;
}

}  // namespace

Json direction_to_json(const DirectionAnalysis& a) {
    Json d = fits_subdocument(a);
    Json comps = Json::array();
    for (const auto& c : a.comparisons) comps.push_back(llr_json(c));
    d["comparisons"] = comps;
    if (!a.comparisons_error.empty())
        d["comparisons_error"] = a.comparisons_error;
    return d;
}

std::string fits_file_text(const DirectionAnalysis& a) {
    return dump_canonical(fits_subdocument(a)) + "\n";
}

std::string comparisons_file_text(const DirectionAnalysis& a) {
    std::ostringstream os;
    write_comparisons_csv(os, a.comparisons);
    return os.str();
}

std::vector<std::int64_t> read_degree_column(std::istream& in,
                                             Direction direction) {
    const std::string want =
        direction == Direction::In ? "in_degree" : "out_degree";
    std::string line;
    std::int64_t line_no = 0;
    std::size_t column = 0;
    bool have_column = false;
    std::vector<std::int64_t> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line, nullptr, line_no);
        if (!have_column) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == want) {
                    column = i;
                    have_column = true;
                }
            if (!have_column)
                throw CsvError("node table lacks column " + want, line_no);
            continue;
        }
        if (column >= fields.size())
            throw CsvError("row too short for column " + want, line_no);
        try {
            out.push_back(std::stoll(fields[column]));
        } catch (const std::exception&) {
            throw CsvError("bad integer in column " + want, line_no);
        }
    }
    if (!have_column) throw CsvError("empty node table", 0);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing", path);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed", path);
}

namespace {

std::string artifact_path(const RunConfig& config, const std::string& prefix,
                          const std::string& suffix) {
    return (std::filesystem::path(config.out_dir) / (prefix + suffix))
        .string();
}

Json summary_json(const TrafficSummary& s) {
    Json j;
    j["requests"] = s.request_count;
    j["sessions"] = s.session_count;
    j["agents"] = s.agent_count;
    j["ips"] = s.ip_count;
    j["resources"] = s.resource_count;
    j["start_time"] = s.start_time;
    j["end_time"] = s.end_time;
    return j;
}

Json class_stanza(const std::vector<LogRecord>& records,
                  const RunConfig& config, const std::string& prefix) {
    Json s;
    auto sessions =
        sessionize(records, config.cutoff_seconds, config.normalization);
    if (sessions.empty()) {
        s["empty"] = true;
        return s;
    }
    s["empty"] = false;
    s["summary"] = summary_json(summarize(records, sessions));

    SessionGraph graph = build_graph(sessions);
    const std::int64_t nodes = graph.node_count();
    Json g;
    g["nodes"] = nodes;
    g["edges"] = graph.edge_count();
    g["self_loops"] = graph.self_loop_count();
    g["total_weight"] = graph.total_weight();
    g["density"] = nodes >= 2 ? Json(density(graph)) : Json(nullptr);
    g["mean_degree"] = mean_degree(graph);
    g["reciprocity_edge_ratio"] =
        reciprocity(graph, ReciprocityMode::EdgeRatio);
    g["reciprocity_pair_formula"] =
        nodes >= 2 ? Json(reciprocity(graph, ReciprocityMode::PairFormula))
                   : Json(nullptr);
    s["graph"] = g;

    const ComponentSummary comp = component_summary(graph);
    Json c;
    c["wcc_count"] = comp.wcc_count;
    c["scc_count"] = comp.scc_count;
    c["largest_wcc"] = comp.largest_wcc;
    c["largest_scc"] = comp.largest_scc;
    s["components"] = c;

    const DegreeVectors deg = degrees(graph);
    Json dirs;
    for (const Direction direction : {Direction::In, Direction::Out}) {
        const auto& vec =
            direction == Direction::In ? deg.in : deg.out;
        DirectionAnalysis a = analyze_direction(
            vec, direction, config.xmin_mode, config.xmin_fixed);
        dirs[to_string(direction)] = direction_to_json(a);
        const std::string tag =
            std::string("_") + to_string(direction);
        write_text_file(artifact_path(config, prefix, tag + "_fits.json"),
                        fits_file_text(a));
        write_text_file(
            artifact_path(config, prefix, tag + "_comparisons.csv"),
            comparisons_file_text(a));
        if (config.exports.frequency) {
            std::ostringstream os;
            write_frequency_csv(os, frequency_table(vec));
            write_text_file(
                artifact_path(config, prefix, tag + "_frequency.csv"),
                os.str());
        }
    }
    s["degrees"] = dirs;

    if (config.exports.sessions) {
        std::ostringstream os;
        write_sessions_csv(os, sessions);
        write_text_file(artifact_path(config, prefix, "_sessions.csv"),
                        os.str());
    }
    if (config.exports.edgelist) {
        std::ostringstream os;
        write_edge_list_csv(os, graph);
        write_text_file(artifact_path(config, prefix, "_edges.csv"), os.str());
        std::ostringstream ns;
        write_node_table_csv(ns, graph);
        write_text_file(artifact_path(config, prefix, "_nodes.csv"), ns.str());
    }
    if (config.exports.graphml) {
        std::ostringstream os;
        write_graphml(os, graph);
        write_text_file(artifact_path(config, prefix, ".graphml"), os.str());
    }
    return s;
}

Json config_json(const RunConfig& config,
                 const std::vector<std::string>& files) {
    Json c;
    c["cutoff_seconds"] = config.cutoff_seconds;
    c["format"] = config.format;
    c["inputs"] = files;
    c["normalization"] = config.normalization == PathPolicy::Verbatim
                             ? "verbatim"
                             : "strip_query";
    c["out_dir"] = config.out_dir;
    c["seed"] = config.seed;
    c["signature_db"] = config.signature_db;
    c["xmin_mode"] = config.xmin_mode == XminMode::Auto ? "auto" : "fixed";
    c["xmin_fixed"] = config.xmin_fixed;
    Json e;
    e["edgelist"] = config.exports.edgelist;
    e["frequency"] = config.exports.frequency;
    e["graphml"] = config.exports.graphml;
    e["sessions"] = config.exports.sessions;
    c["exports"] = e;
    return c;
}

}  // namespace

Json run(const RunConfig& config) {
    if (config.inputs.empty())
        throw ConfigError("at least one input path is required");
    if (config.cutoff_seconds <= 0)
        throw ConfigError("session cutoff must be positive");
    if (config.xmin_mode == XminMode::Fixed && config.xmin_fixed < 1)
        throw ConfigError("fixed xmin must be >= 1");
    if (config.out_dir.empty())
        throw ConfigError("output directory is required");
    LogFormat format;
    try {
        format = parse_format(config.format);
    } catch (const FormatError& e) {
        throw ConfigError(std::string("bad log format: ") + e.what());
    }

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory", config.out_dir);

    const auto files = expand_inputs(config.inputs);
    StreamResult parsed = parse_files(files, format);

    AgentSignatureDb db;
    if (!config.signature_db.empty()) {
        std::ifstream probe(config.signature_db);
        if (!probe) throw IoError("cannot open signature db", config.signature_db);
        db = load_signature_db_file(config.signature_db);
    }

    if (parsed.records.empty()) throw EmptyTraffic();

    SplitResult split = split_stream(parsed.records, db);

    Json report;
    report["version"] = kToolVersion;
    report["config"] = config_json(config, files);
    Json p;
    p["files"] = static_cast<std::int64_t>(files.size());
    p["records"] = static_cast<std::int64_t>(parsed.records.size());
    p["errors"] = static_cast<std::int64_t>(parsed.error_log.size());
    p["human_records"] = static_cast<std::int64_t>(split.humans.size());
    p["robot_records"] = static_cast<std::int64_t>(split.robots.size());
    p["unidentified"] = split.unidentified;
    report["parse"] = p;
    report["human"] = class_stanza(split.humans, config, "human");
    report["robot"] = class_stanza(split.robots, config, "robot");

    write_text_file(
        (std::filesystem::path(config.out_dir) / "report.json").string(),
        dump_canonical(report) + "\n");
    return report;
}

}  // namespace sgraph
