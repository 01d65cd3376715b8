#include <benchmark/benchmark.h>

#include <map>

#include "psiscore/psiscore.hpp"

namespace {

using namespace psiscore;

struct Fixture {
    DirectedGraph graph;
    ActivityProfile activity;
};

const Fixture& fixture(std::size_t n) {
    static std::map<std::size_t, Fixture> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto g = random_digraph_edges(n, 4 * n, n, true);
        auto act = random_uniform(g.num_nodes(), n + 1);
        it = cache.emplace(n, Fixture{std::move(g), std::move(act)}).first;
    }
    return it->second;
}

void BM_ApplyALeft(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const PsiOperator op(f.graph, f.activity);
    std::vector<double> s(op.size(), 1.0), out(op.size());
    MatvecCounter counter;
    for (auto _ : state) {
        op.apply_a_left(s, out, counter);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.graph.num_edges()));
}
BENCHMARK(BM_ApplyALeft)->Arg(1000)->Arg(100000);

void BM_PowerPsi(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const PsiOperator op(f.graph, f.activity);
    for (auto _ : state) benchmark::DoNotOptimize(power_psi(op, {1e-9}).psi.data());
}
BENCHMARK(BM_PowerPsi)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PageRank(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pagerank_power(f.graph, 0.85, {1e-9}).psi.data());
}
BENCHMARK(BM_PageRank)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PsiViaPowerNf(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const PsiOperator op(f.graph, f.activity);
    for (auto _ : state) benchmark::DoNotOptimize(psi_via_power_nf(op, {1e-9}).psi.data());
}
BENCHMARK(BM_PsiViaPowerNf)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ExactPsi(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const PsiOperator op(f.graph, f.activity);
    for (auto _ : state) benchmark::DoNotOptimize(exact_psi(op).data());
}
BENCHMARK(BM_ExactPsi)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
