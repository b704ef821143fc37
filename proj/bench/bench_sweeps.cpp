// Serial reference versus OpenMP sweeps over the same grids.

#include <benchmark/benchmark.h>

#include <vector>

#include "cptsq/grid.hpp"
#include "cptsq/langevin.hpp"
#include "cptsq/sweep.hpp"

using namespace cptsq;

namespace {

const langevin::FluctuationModel& model()
{
    static const auto m = [] {
        SystemParams p;
        p.C = 100.0;
        p.kappa = 2.0;
        p.phi = 1.0;
        p.delta_bar = 1.0;
        return langevin::build_model(p, 144.0);
    }();
    return m;
}

const std::vector<double>& omegas()
{
    static const auto w = hybrid_omega_grid(400);
    return w;
}

const std::vector<langevin::TwoModeSpectrum>& spectra_cache()
{
    static const auto s = [] {
        const auto w = hybrid_omega_grid(64);
        return sweep::serial::spectra(model(), w);
    }();
    return s;
}

void BM_SpectraSerial(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(sweep::serial::spectra(model(), omegas()));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(omegas().size()));
}

void BM_SpectraParallel(benchmark::State& state)
{
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep::parallel::spectra(model(), omegas(), threads));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(omegas().size()));
}

void BM_EntanglementSerial(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(sweep::serial::entanglement(spectra_cache(), {}));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(spectra_cache().size()));
}

void BM_EntanglementParallel(benchmark::State& state)
{
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep::parallel::entanglement(spectra_cache(), {}, threads));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(spectra_cache().size()));
}

}  // namespace

BENCHMARK(BM_SpectraSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SpectraParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EntanglementSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EntanglementParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
