// Serial against OpenMP variants of the heavy kernels.

#include <benchmark/benchmark.h>

#include "knotdecomp/decomposition.hpp"
#include "knotdecomp/flype.hpp"
#include "knotdecomp/periodicity.hpp"
#include "reference_diagrams.hpp"

using namespace knot;

namespace {

// Moved off its symmetric form so the search has to walk the closure.
LinkDiagram flyped_pretzel() {
    LinkDiagram d = test_support::twisted_pretzel333();
    for (int i = 0; i < 3; ++i) d = apply_flype(d, available_flypes(d).back());
    return d;
}

void BM_bonds_serial(benchmark::State& st) {
    auto d = test_support::four_piece_ring();
    for (auto _ : st) benchmark::DoNotOptimize(four_edge_bonds_serial(d, 0));
}
void BM_bonds_parallel(benchmark::State& st) {
    auto d = test_support::four_piece_ring();
    for (auto _ : st) benchmark::DoNotOptimize(four_edge_bonds_parallel(d, 0));
}

void BM_closure_serial(benchmark::State& st) {
    auto d = test_support::three_piece_ring();
    for (auto _ : st) benchmark::DoNotOptimize(flype_closure_serial(d));
}
void BM_closure_parallel(benchmark::State& st) {
    auto d = test_support::three_piece_ring();
    for (auto _ : st) benchmark::DoNotOptimize(flype_closure_parallel(d));
}

void BM_periodic_serial(benchmark::State& st) {
    auto d = flyped_pretzel();
    for (auto _ : st) benchmark::DoNotOptimize(find_periodic_projection_serial(d, 3));
}
void BM_periodic_parallel(benchmark::State& st) {
    auto d = flyped_pretzel();
    for (auto _ : st) benchmark::DoNotOptimize(find_periodic_projection_parallel(d, 3));
}

}  // namespace

BENCHMARK(BM_bonds_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bonds_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_closure_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_closure_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_periodic_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_periodic_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
