// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include "trdim/dimension.hpp"
#include "trdim/series.hpp"
#include "trdim/tables.hpp"

using namespace trdim;

namespace {

const ExponentConfig cfg22 = ExponentConfig::make(2.0, 2.0);

void BM_tail_exact_product(benchmark::State& state) {
    const auto w = ProductWeights::poly_decay(2.0, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tail_exact_product(w, cfg22, state.range(0) / 2).value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_tail_exact_product)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_evaluator_build(benchmark::State& state) {
    const auto w = ProductWeights::poly_decay(2.0, state.range(0));
    for (auto _ : state) {
        ProductTailEvaluator eval(w, cfg22);
        benchmark::DoNotOptimize(eval.raw_tail(1));
    }
}
BENCHMARK(BM_evaluator_build)->Arg(100000)->Arg(1000000);

void BM_evaluator_probe(benchmark::State& state) {
    const auto w = ProductWeights::poly_decay(2.0, 1000000);
    const ProductTailEvaluator eval(w, cfg22);
    std::int64_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval.raw_tail(k));
        k = (k + 8191) % 1000000;
    }
}
BENCHMARK(BM_evaluator_probe);

void BM_infinite_product_upper(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(infinite_product_upper(4.0, 0.5, state.range(0)));
}
BENCHMARK(BM_infinite_product_upper)->Arg(1000)->Arg(100000);

void BM_pod_tail_bound(benchmark::State& state) {
    const auto pod = PODWeights::make(1.0, 1.0, 1.0, 4.0, 10000);
    for (auto _ : state)
        benchmark::DoNotOptimize(pod_tail_bound(pod, cfg22, state.range(0)).value);
}
BENCHMARK(BM_pod_tail_bound)->Arg(10)->Arg(100)->Arg(1000);

void BM_brute_force_tail(benchmark::State& state) {
    const WeightModel w{ProductWeights::poly_decay(2.0, state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(tail_brute_force(w, cfg22, state.range(0) / 2).value);
}
BENCHMARK(BM_brute_force_tail)->Arg(12)->Arg(16)->Arg(20);

void BM_dimension_cell(benchmark::State& state) {
    DimensionQuery q;
    q.model = ProductWeights::poly_decay(2.0, 1000000);
    q.cfg = cfg22;
    q.epsilon = 1e-6;
    q.method = SolveMethod::direct_scan;
    for (auto _ : state) benchmark::DoNotOptimize(k_eps_scan(q).k);
}
BENCHMARK(BM_dimension_cell);

void BM_reproduce_pod_table(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            tables::run_table(tables::TableId::pod, 1000, static_cast<int>(state.range(0))));
    state.SetLabel("jobs=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_reproduce_pod_table)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
