#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "sgraph/graphcore.hpp"
#include "sgraph/sessionizer.hpp"

using namespace sgraph;

namespace {

// Random browsing sessions over `resources` distinct pages.
std::vector<Session> synthetic_sessions(int resources, int sessions,
                                        std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<Session> out;
    out.reserve(sessions);
    for (int s = 0; s < sessions; ++s) {
        Session sess;
        sess.agent = AgentKey{std::string("agent") + std::to_string(s % 50),
                              std::string("10.0.0.1")};
        const int length = 2 + static_cast<int>(gen() % 12);
        std::int64_t t = 1000 * s;
        for (int i = 0; i < length; ++i) {
            sess.requests.push_back(
                {"/page/" + std::to_string(gen() % resources), t});
            t += 10;
        }
        out.push_back(std::move(sess));
    }
    return out;
}

void BM_BuildGraph(benchmark::State& state) {
    const auto sessions = synthetic_sessions(
        static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 7);
    for (auto _ : state) {
        SessionGraph g = build_graph(sessions);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_BuildGraph)->Args({500, 2000})->Args({5000, 20000});

void BM_Components(benchmark::State& state) {
    const auto sessions = synthetic_sessions(
        static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 7);
    const SessionGraph g = build_graph(sessions);
    for (auto _ : state) {
        auto weak = connected_components(g, ConnectivityMode::Weak);
        auto strong = connected_components(g, ConnectivityMode::Strong);
        benchmark::DoNotOptimize(weak);
        benchmark::DoNotOptimize(strong);
    }
}
BENCHMARK(BM_Components)->Args({500, 2000})->Args({5000, 20000});

void BM_Degrees(benchmark::State& state) {
    const auto sessions = synthetic_sessions(5000, 20000, 7);
    const SessionGraph g = build_graph(sessions);
    for (auto _ : state) {
        auto d = degrees(g);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_Degrees);

}  // namespace

BENCHMARK_MAIN();
