// Serial reference against the OpenMP kernels. Set OMP_NUM_THREADS to vary
// the thread count.

#include <benchmark/benchmark.h>

#include "endoscopy/kernels.hpp"
#include "endoscopy/spectrum.hpp"

using namespace endoscopy;

namespace {

template <bool Parallel>
void BM_McFundMoments(benchmark::State& state)
{
    const EndoDatum d({4, 2, 2});
    for (auto _ : state) {
        auto m = Parallel ? kernels::omp::mc_fund_moments(d, static_cast<std::uint64_t>(state.range(0)), 1)
                          : kernels::serial::mc_fund_moments(d, static_cast<std::uint64_t>(state.range(0)), 1);
        benchmark::DoNotOptimize(m.sum.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_FillHaarAngles(benchmark::State& state)
{
    const int n = 3;
    std::vector<double> out(static_cast<std::size_t>(state.range(0)) * n);
    for (auto _ : state) {
        if (Parallel)
            kernels::omp::fill_haar_angles(n, 1, 7, out);
        else
            kernels::serial::fill_haar_angles(n, 1, 7, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

const SpectrumStore& bench_store()
{
    static const SpectrumStore store = [] {
        SpectrumConfig c;
        c.N = 4;
        c.pool_sizes = {{2, 3}, {4, 2}, {6, 1}, {8, 1}};
        c.prime_bound = 1000000;
        c.seed = 11;
        return generate_spectrum(c);
    }();
    return store;
}

template <bool Parallel>
void BM_WeightedTraceTerms(benchmark::State& state)
{
    const auto& store = bench_store();
    std::vector<kernels::WeightedTuple> tuples;
    for (const auto& phi : enumerate_phi2(store, 4))
        tuples.push_back(weighted_tuple(store, phi.components, phi.weight().value()));
    const auto r = RepLabel::fund(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto v = Parallel ? kernels::omp::weighted_trace_terms(store.unramified_norms(), tuples, r, 1)
                          : kernels::serial::weighted_trace_terms(store.unramified_norms(), tuples, r, 1);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(store.slot_count() * tuples.size()));
}

}  // namespace

BENCHMARK(BM_McFundMoments<false>)->Name("mc_fund_moments/serial")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McFundMoments<true>)->Name("mc_fund_moments/omp")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FillHaarAngles<false>)->Name("fill_haar_angles/serial")->Arg(78498)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FillHaarAngles<true>)->Name("fill_haar_angles/omp")->Arg(78498)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedTraceTerms<false>)->Name("weighted_trace_terms/serial")->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedTraceTerms<true>)->Name("weighted_trace_terms/omp")->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
