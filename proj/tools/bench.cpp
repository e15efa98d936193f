// Serial reference vs OpenMP kernels on the Riemann-sum and samplewise
// workloads.  The parallel kernels are bit-identical to the serial ones
// by construction; this target measures the speedup only.

#include <cmath>

#include <benchmark/benchmark.h>

#include "dqcalc/kernels.hpp"
#include "dqcalc/riemann.hpp"

using namespace dqcalc;

namespace {

void bm_block_sum_serial(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto term = [](std::size_t i, double* out) {
        out[0] = std::sin(1e-6 * static_cast<double>(i));
    };
    for (auto _ : state) {
        auto r = kernels::block_sum_serial(n, 1, term);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(n) * state.iterations());
}

void bm_block_sum_parallel(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto term = [](std::size_t i, double* out) {
        out[0] = std::sin(1e-6 * static_cast<double>(i));
    };
    for (auto _ : state) {
        auto r = kernels::block_sum_parallel(n, 1, term);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(n) * state.iterations());
}

void bm_map_serial(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> out;
    for (auto _ : state) {
        kernels::map_serial(n, [](std::size_t i) {
            return std::exp(-1e-6 * static_cast<double>(i));
        }, out);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(n) * state.iterations());
}

void bm_map_parallel(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> out;
    for (auto _ : state) {
        kernels::map_parallel(n, [](std::size_t i) {
            return std::exp(-1e-6 * static_cast<double>(i));
        }, out);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(n) * state.iterations());
}

void bm_riemann_serial(benchmark::State& state) {
    auto cells = static_cast<std::size_t>(state.range(0));
    Curve c = Curve::scalar(0.0, 1.0, [](double s) { return std::exp(s); });
    auto p = TaggedPartition::uniform(0.0, 1.0, cells);
    for (auto _ : state) {
        auto r = riemann_sum_serial(c, p);
        benchmark::DoNotOptimize(r);
    }
}

void bm_riemann_parallel(benchmark::State& state) {
    auto cells = static_cast<std::size_t>(state.range(0));
    Curve c = Curve::scalar(0.0, 1.0, [](double s) { return std::exp(s); });
    auto p = TaggedPartition::uniform(0.0, 1.0, cells);
    for (auto _ : state) {
        auto r = riemann_sum(c, p);
        benchmark::DoNotOptimize(r);
    }
}

}  // namespace

BENCHMARK(bm_block_sum_serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_block_sum_parallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_map_serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_map_parallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_riemann_serial)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(bm_riemann_parallel)->Arg(1 << 14)->Arg(1 << 18);

BENCHMARK_MAIN();
