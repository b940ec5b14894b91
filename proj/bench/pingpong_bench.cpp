// Parallel ping-pong kernels against the serial reference on the same
// handling tables.

#include <benchmark/benchmark.h>

#include <map>

#include "ocedforge/analyses.hpp"
#include "ocedforge/turtle.hpp"

#include "generators.hpp"

using namespace ocedforge;

namespace {

const analyses::HandlingTable& table_for(int cases) {
    static std::map<int, analyses::HandlingTable> cache;
    auto it = cache.find(cases);
    if (it == cache.end()) {
        testsupport::Rng rng(static_cast<std::uint64_t>(cases));
        auto pg = testsupport::random_pingpong_graph(
            rng, {.max_cases = cases, .max_events_per_case = 40, .max_teams = 12});
        it = cache.emplace(cases, analyses::collect_handlings(turtle::graph_to_triples(pg.graph))).first;
    }
    return it->second;
}

void BM_DetectParallel(benchmark::State& state) {
    const auto& t = table_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(analyses::detect_ping_pong(t));
    state.counters["cases"] = static_cast<double>(t.cases.size());
}

void BM_DetectReference(benchmark::State& state) {
    const auto& t = table_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(analyses::reference::detect_ping_pong(t));
    state.counters["cases"] = static_cast<double>(t.cases.size());
}

void BM_TeamsParallel(benchmark::State& state) {
    const auto& t = table_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(analyses::team_involvement(t));
}

void BM_TeamsReference(benchmark::State& state) {
    const auto& t = table_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(analyses::reference::team_involvement(t));
}

} // namespace

BENCHMARK(BM_DetectParallel)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetectReference)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TeamsParallel)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TeamsReference)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
