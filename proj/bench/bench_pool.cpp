// Pool evaluation: the OpenMP kernel against the entry-by-entry serial
// reference, on the trace products of degree <= 6 at sampled points.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "cmpoisson/pool.hpp"
#include "cmpoisson/trace_polynomial.hpp"

using namespace cmpoisson;

namespace {

struct Workload {
    std::vector<TracePolynomial> polys;
    std::vector<CMPoint> pts;
};

Workload make_workload(int n, std::size_t points) {
    return {trace_monomials(Mode::Traceless, 6, 2), sample_pool(n, points, 99)};
}

void BM_serial_reference(benchmark::State& state) {
    const auto w = make_workload(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_pool_serial(w.polys, w.pts));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(w.polys.size() * w.pts.size()));
}

void BM_kernel(benchmark::State& state) {
    const auto w = make_workload(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const CompiledPolynomials compiled(w.polys, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_pool(compiled, w.pts));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(w.polys.size() * w.pts.size()));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_kernel_one_thread(benchmark::State& state) {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    BM_kernel(state);
    omp_set_num_threads(saved);
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int n : {2, 3, 4}) b->Args({n, 256});
    b->Args({3, 1024});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_serial_reference)->Apply(sizes);
BENCHMARK(BM_kernel)->Apply(sizes);
BENCHMARK(BM_kernel_one_thread)->Apply(sizes);

BENCHMARK_MAIN();
