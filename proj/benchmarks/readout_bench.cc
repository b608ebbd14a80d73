#include <benchmark/benchmark.h>

#include "ionpnr/ionpnr.h"

using namespace ionpnr;

namespace {

FluorescenceModel model(double eta) { return FluorescenceModel::from_detector(DetectorParams{}, eta); }

}  // namespace

static void BM_PoissonPmf(benchmark::State &state) {
    const double mean = static_cast<double>(state.range(0));
    std::int64_t n = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(poisson_pmf(n, mean));
        n = (n + 1) % (2 * state.range(0) + 1);
    }
}
BENCHMARK(BM_PoissonPmf)->Arg(40)->Arg(1000)->Arg(100000);

static void BM_CountDistribution(benchmark::State &state) {
    const auto m = model(0.93);
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_distribution(m, state.range(0), 150e-6));
    }
}
BENCHMARK(BM_CountDistribution)->Arg(1)->Arg(3)->Arg(10);

static void BM_ErrorProbability(benchmark::State &state) {
    const auto m = model(0.93);
    for (auto _ : state) {
        benchmark::DoNotOptimize(error_probability(m, 430e-6, state.range(0)));
    }
}
BENCHMARK(BM_ErrorProbability)->Arg(1)->Arg(10);

static void BM_TimeToError(benchmark::State &state) {
    const auto m = model(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(time_to_error(m, state.range(0), 0.10, 1e-3));
    }
}
BENCHMARK(BM_TimeToError)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloBatch(benchmark::State &state) {
    McConfig cfg;
    cfg.model = model(1.0);
    cfg.n_trials = 10000;
    cfg.path = state.range(0) == 0 ? SamplingPath::kPerIon : SamplingPath::kAggregate;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_batch(cfg));
        ++cfg.seed;
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_trials);
}
BENCHMARK(BM_MonteCarloBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
