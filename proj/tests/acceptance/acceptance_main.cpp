// Acceptance suite: eight end-to-end checks over the released surface,
// one [PASS]/[FAIL] line each. Exit status is the failure count.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <variant>
#include <string>
#include <vector>

#include "sgraph/graphcore.hpp"
#include "sgraph/jsonout.hpp"
#include "sgraph/logparse.hpp"
#include "sgraph/modelselect.hpp"
#include "sgraph/pipeline.hpp"
#include "sgraph/sessionizer.hpp"
#include "sgraph/statfit.hpp"
#include "support/oracles.hpp"
#include "support/samplers.hpp"

namespace fs = std::filesystem;
using namespace sgraph;

namespace {

int g_failures = 0;

// Body returns an empty string on success, a reason otherwise.
void criterion(int id, const std::string& name, double budget_seconds,
               const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
        reason = body();
    } catch (const std::exception& e) {
        reason = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (reason.empty() && elapsed > budget_seconds) {
        std::ostringstream os;
        os << "exceeded " << budget_seconds << "s budget";
        reason = os.str();
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    if (reason.empty()) {
        line << "[PASS] " << id << ". " << name << " (" << elapsed << "s)";
    } else {
        line << "[FAIL] " << id << ". " << name << " (" << elapsed
             << "s): " << reason;
        ++g_failures;
    }
    std::cout << line.str() << "\n";
}

std::string check_close(const char* what, double got, double expected,
                        double tol) {
    if (std::fabs(got - expected) <= tol) return {};
    std::ostringstream os;
    os.precision(12);
    os << what << " = " << got << ", expected " << expected << " +-" << tol;
    return os.str();
}

// --- 1: published graph metric identities ------------------------------

std::string metric_identities() {
    std::string r;
    r = check_close("density(93655, 118706)", density_for_counts(93655, 118706),
                    1.353e-05, 1e-8);
    if (!r.empty()) return r;
    r = check_close("mean_degree(93655, 118706)",
                    mean_degree_for_counts(93655, 118706), 1.2675, 1e-4);
    if (!r.empty()) return r;
    r = check_close("density(179432, 377047)",
                    density_for_counts(179432, 377047), 1.171e-05, 1e-8);
    if (!r.empty()) return r;
    return check_close("mean_degree(179432, 377047)",
                       mean_degree_for_counts(179432, 377047), 2.1013, 1e-4);
}

// --- 2: components vs. a transitive-closure oracle ---------------------

std::vector<Session> random_digraph_sessions(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const int n = 2 + static_cast<int>(seed % 49);
    const std::uint64_t percent = 1 + (seed * 13) % 12;
    std::vector<Session> sessions;
    AgentKey agent{std::string("walker"), std::string("10.0.0.1")};
    // One 1-request session per node pins the node order to 0..n-1.
    for (int i = 0; i < n; ++i)
        sessions.push_back(
            {agent, {{"r" + std::to_string(i), 1000}}});
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (gen() % 100 < percent)
                sessions.push_back({agent,
                                    {{"r" + std::to_string(u), 1000},
                                     {"r" + std::to_string(v), 1001}}});
        }
    return sessions;
}

std::string component_oracle() {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto sessions = random_digraph_sessions(seed);
        const SessionGraph graph = build_graph(sessions);
        const testlib::DenseGraph dense =
            testlib::dense_from_sessions(sessions);
        for (const bool weak : {true, false}) {
            const auto expect = testlib::closure_components(dense, weak);
            const auto got = connected_components(
                graph,
                weak ? ConnectivityMode::Weak : ConnectivityMode::Strong);
            if (got.assignment != expect) {
                std::ostringstream os;
                os << (weak ? "weak" : "strong")
                   << " partition mismatch at seed " << seed;
                return os.str();
            }
        }
        const ComponentSummary s = component_summary(graph);
        const auto wcc = testlib::closure_components(dense, true);
        const auto scc = testlib::closure_components(dense, false);
        auto count_largest = [](const std::vector<int>& comp) {
            std::map<int, std::int64_t> sizes;
            for (int c : comp) ++sizes[c];
            std::int64_t largest = 0;
            for (const auto& [c, sz] : sizes) largest = std::max(largest, sz);
            return std::pair<std::int64_t, std::int64_t>(
                static_cast<std::int64_t>(sizes.size()), largest);
        };
        const auto [wn, wl] = count_largest(wcc);
        const auto [sn, sl] = count_largest(scc);
        if (s.wcc_count != wn || s.largest_wcc != wl || s.scc_count != sn ||
            s.largest_scc != sl) {
            std::ostringstream os;
            os << "component summary mismatch at seed " << seed;
            return os.str();
        }
    }
    return {};
}

// --- 3: sessionizer properties -----------------------------------------

std::string session_properties() {
    constexpr std::int64_t kCutoff = 1800;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        std::mt19937_64 gen(seed);
        std::vector<LogRecord> records;
        const int agents = 1 + static_cast<int>(gen() % 5);
        for (int a = 0; a < agents; ++a) {
            std::int64_t t = static_cast<std::int64_t>(gen() % 5000);
            const int count = 2 + static_cast<int>(gen() % 30);
            for (int i = 0; i < count; ++i) {
                static const std::int64_t gaps[] = {0,    1,    5,    600,
                                                    1799, 1800, 1801, 3600};
                if (i > 0) t += gaps[gen() % 8];
                LogRecord rec;
                rec.timestamp = t;
                rec.method = "GET";
                rec.path = "/r" + std::to_string(gen() % 6);
                rec.protocol = "HTTP/1.1";
                rec.status = 200;
                rec.user_agent = "ua" + std::to_string(a);
                rec.client_ip = "10.0.0." + std::to_string(a + 1);
                records.push_back(rec);
            }
        }
        // The boundary agent emits a gap of exactly the cutoff.
        LogRecord edge;
        edge.timestamp = 0;
        edge.method = "GET";
        edge.path = "/edge";
        edge.protocol = "HTTP/1.1";
        edge.status = 200;
        edge.user_agent = "edge-agent";
        edge.client_ip = "10.9.9.9";
        records.push_back(edge);
        edge.timestamp = kCutoff;
        records.push_back(edge);

        const auto sessions = sessionize(records, kCutoff, PathPolicy::Verbatim);

        std::size_t total = 0;
        std::map<AgentKey, std::vector<const Session*>> by_agent;
        for (const auto& s : sessions) {
            if (s.requests.empty()) return "empty session emitted";
            total += s.requests.size();
            for (std::size_t i = 1; i < s.requests.size(); ++i) {
                const std::int64_t gap = s.requests[i].timestamp -
                                         s.requests[i - 1].timestamp;
                if (gap < 0 || gap >= kCutoff) {
                    std::ostringstream os;
                    os << "in-session gap " << gap << " at seed " << seed;
                    return os.str();
                }
            }
            by_agent[s.agent].push_back(&s);
        }
        if (total != records.size()) return "request count not conserved";

        for (const auto& [agent, list] : by_agent) {
            for (std::size_t i = 1; i < list.size(); ++i) {
                const std::int64_t gap =
                    list[i]->start_time() -
                    list[i - 1]->requests.back().timestamp;
                if (gap < kCutoff) {
                    std::ostringstream os;
                    os << "inter-session gap " << gap << " at seed " << seed;
                    return os.str();
                }
            }
        }

        // Per-agent multiset of (resource, timestamp) is conserved.
        std::map<AgentKey, std::multiset<std::pair<std::string, std::int64_t>>>
            want, have;
        for (const auto& rec : records)
            want[AgentKey{rec.user_agent, rec.client_ip}].insert(
                {rec.path, rec.timestamp});
        for (const auto& s : sessions)
            for (const auto& req : s.requests)
                have[s.agent].insert({req.resource, req.timestamp});
        if (want != have) return "per-agent request multiset changed";

        const auto& edge_sessions =
            by_agent[AgentKey{std::string("edge-agent"),
                              std::string("10.9.9.9")}];
        if (edge_sessions.size() != 2 || edge_sessions[0]->length() != 1 ||
            edge_sessions[1]->length() != 1)
            return "gap equal to the cutoff did not split";
    }
    return {};
}

// --- 4: parameter recovery ---------------------------------------------

std::string parameter_recovery() {
    {
        auto vals = testlib::zipf_sample(2.5, 100000, 11);
        const auto fit = fit_zeta_mle(make_tail_sample(std::move(vals), 1));
        const double alpha = std::get<ZetaParams>(fit.params).alpha;
        const auto r = check_close("zeta alpha", alpha, 2.5, 0.05);
        if (!r.empty()) return r;
    }
    {
        auto vals = testlib::lognormal_sample(1.0, 0.5, 100000, 21, 1.0);
        const auto fit =
            fit_lognormal_mle(make_tail_sample(std::move(vals), 1));
        const auto p = std::get<LognormalParams>(fit.params);
        auto r = check_close("lognormal mu", p.mu, 1.0, 0.03);
        if (!r.empty()) return r;
        r = check_close("lognormal sigma", p.sigma, 0.5, 0.02);
        if (!r.empty()) return r;
    }
    {
        auto vals = testlib::exponential_sample(0.7, 1.0, 100000, 31);
        const auto fit =
            fit_exponential_mle(make_tail_sample(std::move(vals), 1));
        const double lambda = std::get<ExponentialParams>(fit.params).lambda;
        const auto r = check_close("exponential lambda", lambda, 0.7, 0.02);
        if (!r.empty()) return r;
    }
    {
        const auto vals = dpln_sample(DplnParams{6.0, 3.0, 0.0, 0.5},
                                      1000000, 2);
        const DplnParams p = fit_dpln_moments(vals);
        if (p.alpha < 5.0 || p.alpha > 7.0) {
            std::ostringstream os;
            os << "moment alpha " << p.alpha << " outside [5, 7]";
            return os.str();
        }
        if (p.beta < 2.5 || p.beta > 3.5) {
            std::ostringstream os;
            os << "moment beta " << p.beta << " outside [2.5, 3.5]";
            return os.str();
        }
    }
    const DplnParams sets[] = {{6.0, 3.0, 0.0, 0.5},
                               {5.0, 2.5, 1.0, 0.3},
                               {8.0, 4.0, -0.5, 0.7},
                               {4.5, 1.5, 0.2, 0.6}};
    for (const auto& p : sets) {
        const std::array<double, 4> m = {
            dpln_moment(p, 1), dpln_moment(p, 2), dpln_moment(p, 3),
            dpln_moment(p, 4)};
        const DplnParams q = solve_dpln_moments(m);
        if (std::fabs(q.alpha - p.alpha) > 1e-4 ||
            std::fabs(q.beta - p.beta) > 1e-4 ||
            std::fabs(q.mu - p.mu) > 1e-4 ||
            std::fabs(q.sigma - p.sigma) > 1e-4) {
            std::ostringstream os;
            os << "moment inversion drifted for alpha=" << p.alpha;
            return os.str();
        }
    }
    return {};
}

// --- 5: special-function and density checks ----------------------------

std::string density_checks() {
    {
        const double pi = 3.14159265358979323846;
        const auto r = check_close("hurwitz_zeta(2, 1)", hurwitz_zeta(2.0, 1),
                                   pi * pi / 6.0, 1e-9);
        if (!r.empty()) return r;
    }
    const DplnParams sets[] = {{2.0, 1.0, 0.0, 0.4},
                               {6.0, 3.0, 0.0, 0.5},
                               {3.0, 5.0, 1.0, 0.25}};
    for (const auto& p : sets) {
        // Integrate over log x so both tails taper inside the window.
        const double lo = p.mu - 40.0 / p.beta;
        const double hi = p.mu + 40.0 / p.alpha;
        const double mass = testlib::integrate(
            [&](double y) {
                const double x = std::exp(y);
                return dpln_pdf(x, p) * x;
            },
            lo, hi, 1e-6);
        const auto r = check_close("dpln mass", mass, 1.0, 1e-3);
        if (!r.empty()) return r;
    }
    {
        const DplnParams p{2.5, 3.0, 0.0, 0.5};
        const double slope = (log_dpln_pdf(1e10, p) - log_dpln_pdf(1e8, p)) /
                             (std::log(1e10) - std::log(1e8));
        const auto r = check_close("tail slope", slope, -p.alpha - 1.0, 0.05);
        if (!r.empty()) return r;
    }
    {
        const DplnParams p{1000.0, 1000.0, 0.0, 0.5};
        for (const double x : {0.5, 1.0, 2.0, 4.0}) {
            const double z = (std::log(x) - p.mu) / p.sigma;
            const double ln_pdf = std::exp(-0.5 * z * z) /
                                  (x * p.sigma * std::sqrt(2.0 * 3.14159265358979323846));
            const double rel = std::fabs(dpln_pdf(x, p) - ln_pdf) / ln_pdf;
            if (rel > 0.05) {
                std::ostringstream os;
                os << "dpln vs lognormal off by " << rel * 100 << "% at x="
                   << x;
                return os.str();
            }
        }
    }
    return {};
}

// --- 6: model comparison behavior --------------------------------------

std::string vuong_behavior() {
    auto vals = testlib::lognormal_sample(1.0, 0.5, 20000, 51, 1.0);
    const TailSample sample = make_tail_sample(std::move(vals), 1);

    std::vector<FitResult> fits;
    fits.push_back(fit_exponential_mle(sample));
    fits.push_back(fit_lognormal_mle(sample));
    fits.push_back(fit_zeta_mle(sample));
    try {
        fits.push_back(make_fit(DistKind::Dpln,
                                fit_dpln_moments(sample.values), sample));
    } catch (const std::exception&) {
        fits.push_back(
            make_fit(DistKind::Dpln, DplnParams{8.0, 6.0, 1.0, 0.5}, sample));
    }

    const auto rows = compare_all(sample, fits);
    if (rows.size() != 5) {
        std::ostringstream os;
        os << "compare_all produced " << rows.size() << " rows, expected 5";
        return os.str();
    }
    for (const auto& row : rows)
        if (!(row.p_value >= 0.0 && row.p_value <= 1.0))
            return "p-value outside [0, 1]";

    // Antisymmetry across every ordered pair of fits.
    for (std::size_t i = 0; i < fits.size(); ++i)
        for (std::size_t j = 0; j < fits.size(); ++j) {
            if (i == j) continue;
            const auto ab = vuong_test(sample, fits[i], fits[j]);
            const auto ba = vuong_test(sample, fits[j], fits[i]);
            if (std::fabs(ab.R + ba.R) >
                1e-9 * std::max(1.0, std::fabs(ab.R)))
                return "R is not antisymmetric";
            if (std::fabs(ab.p_value - ba.p_value) > 1e-12)
                return "p-value changed under order swap";
        }

    for (const auto& row : rows)
        if (row.first == DistKind::Lognormal &&
            row.second == DistKind::Exponential) {
            if (!(row.R > 0.0))
                return "lognormal did not beat exponential (R <= 0)";
            if (!(row.p_value < 0.05))
                return "lognormal/exponential comparison not significant";
            if (better_fit(row) != "lognormal")
                return "better_fit did not name lognormal";
            return {};
        }
    return "lognormal/exponential row missing";
}

// --- 7: end-to-end fixture ---------------------------------------------

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fixture_end_to_end() {
    const fs::path fixtures = SGRAPH_FIXTURE_DIR;
    const fs::path base =
        fs::temp_directory_path() / "sgraph_acceptance_fixture";
    fs::remove_all(base);

    RunConfig config;
    config.inputs = {(fixtures / "fixture.log").string()};
    config.signature_db = (fixtures / "bots.db").string();
    config.out_dir = (base / "run1").string();
    const Json report = run(config);

    const Json oracle = Json::parse(read_file(fixtures / "oracle.json"));
    for (const auto& item : oracle.at("report").items()) {
        const Json* cursor = &report;
        std::istringstream path(item.key());
        std::string step;
        while (std::getline(path, step, '.')) {
            if (!cursor->contains(step))
                return "report lacks " + item.key();
            cursor = &(*cursor)[step];
        }
        bool ok;
        if (cursor->is_number_float() || item.value().is_number_float())
            ok = std::fabs(cursor->get<double>() -
                           item.value().get<double>()) <= 1e-9;
        else
            ok = *cursor == item.value();
        if (!ok) {
            std::ostringstream os;
            os << item.key() << " = " << cursor->dump() << ", oracle says "
               << item.value().dump();
            return os.str();
        }
    }

    // Same invocation again; every artifact must come back byte-identical.
    const fs::path snapshot = base / "snapshot";
    fs::create_directories(snapshot);
    for (const auto& entry : fs::directory_iterator(base / "run1"))
        fs::copy_file(entry.path(), snapshot / entry.path().filename());
    run(config);
    for (const auto& entry : fs::directory_iterator(snapshot)) {
        const fs::path again = base / "run1" / entry.path().filename();
        if (!fs::exists(again))
            return "rerun did not produce " + entry.path().filename().string();
        if (read_file(entry.path()) != read_file(again))
            return entry.path().filename().string() +
                   " differs between reruns";
    }
    return {};
}

// --- 8: reference log line ---------------------------------------------

std::string reference_line() {
    const LogFormat format = parse_format("combined-ip");
    const auto result = parse_line(
        "- - [02/Apr/2016:00:00:09 -0400] "
        "\"GET /path/to/some/resource HTTP/1.1\" 200 5972 "
        "\"http://www.example.com/refererpage.html\" "
        "\"Mozilla/5.0 (iPhone; CPU iPhone OS 7_0 like Mac OS X)\" "
        "\"11.111.111.111\"",
        format);
    const auto* rec = std::get_if<LogRecord>(&result);
    if (!rec) return "reference line failed to parse";
    if (rec->timestamp != 1459569609) {
        std::ostringstream os;
        os << "timestamp " << rec->timestamp << ", expected 1459569609";
        return os.str();
    }
    if (rec->method != "GET") return "method mismatch";
    if (rec->path != "/path/to/some/resource") return "path mismatch";
    if (rec->protocol != "HTTP/1.1") return "protocol mismatch";
    if (rec->status != 200) return "status mismatch";
    if (rec->size != 5972) return "size mismatch";
    if (rec->referer != "http://www.example.com/refererpage.html")
        return "referer mismatch";
    if (rec->user_agent != "Mozilla/5.0 (iPhone; CPU iPhone OS 7_0 like Mac OS X)")
        return "user agent mismatch";
    if (rec->client_ip != "11.111.111.111") return "client ip mismatch";
    return {};
}

}  // namespace

int main() {
    criterion(1, "graph metric identities", 1.0, metric_identities);
    criterion(2, "components vs closure oracle", 10.0, component_oracle);
    criterion(3, "sessionizer properties", 5.0, session_properties);
    criterion(4, "parameter recovery", 120.0, parameter_recovery);
    criterion(5, "density and special functions", 30.0, density_checks);
    criterion(6, "model comparison behavior", 20.0, vuong_behavior);
    criterion(7, "end-to-end fixture", 5.0, fixture_end_to_end);
    criterion(8, "reference log line", 1.0, reference_line);

    if (g_failures == 0)
        std::cout << "acceptance: all 8 criteria passed\n";
    else
        std::cout << "acceptance: " << g_failures << " criteria FAILED\n";
    return g_failures;
}
