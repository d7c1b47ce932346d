#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "ragmark/metrics.hpp"

namespace {

std::vector<double> random_scores(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(rng);
    return out;
}

void BM_RocAuc(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> scores = random_scores(n, 17);
    std::vector<bool> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = (i % 2) == 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ragmark::roc_auc(scores, labels));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RocAuc)->Arg(64)->Arg(1024)->Arg(16384);

void BM_NdcgAtK(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> relevances = random_scores(n, 29);
    for (auto& r : relevances) r = std::floor(r * 4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ragmark::ndcg_at_k(relevances, 10));
    }
}
BENCHMARK(BM_NdcgAtK)->Arg(10)->Arg(100)->Arg(1000);

void BM_MrrAtK(benchmark::State& state) {
    const auto queries = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(41);
    std::vector<std::vector<bool>> relevances(queries);
    for (auto& row : relevances) {
        row.resize(20);
        row[rng() % row.size()] = true;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(ragmark::mrr_at_k(relevances, 10));
    }
}
BENCHMARK(BM_MrrAtK)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
