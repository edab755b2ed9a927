#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "sgraph/logparse.hpp"

using namespace sgraph;

namespace {

const char* kLine =
    "- - [02/Apr/2016:00:00:09 -0400] "
    "\"GET /path/to/some/resource HTTP/1.1\" 200 5972 "
    "\"http://www.example.com/refererpage.html\" "
    "\"Mozilla/5.0 (iPhone; CPU iPhone OS 7_0 like Mac OS X)\" "
    "\"11.111.111.111\"";

std::vector<std::string> synthetic_lines(std::size_t n) {
    std::vector<std::string> lines;
    lines.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        lines.push_back(
            "- - [02/Apr/2016:" + std::to_string(i % 24 / 10) +
            std::to_string(i % 24 % 10) + ":00:09 +0000] \"GET /page/" +
            std::to_string(i % 97) + " HTTP/1.1\" 200 " +
            std::to_string(100 + i % 9000) + " \"-\" \"agent-" +
            std::to_string(i % 13) + "\" \"10.0.0." +
            std::to_string(i % 200 + 1) + "\"");
    }
    return lines;
}

void BM_ParseLine(benchmark::State& state) {
    const LogFormat format = parse_format("combined-ip");
    for (auto _ : state) {
        auto result = parse_line(kLine, format);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ParseLine);

void BM_ParseStream(benchmark::State& state) {
    const LogFormat format = parse_format("combined-ip");
    const auto lines = synthetic_lines(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto result = parse_stream(lines, format);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParseStream)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
