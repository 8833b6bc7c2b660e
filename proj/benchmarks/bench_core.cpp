#include <benchmark/benchmark.h>

#include <vector>

#include "superburst/bifurcation.hpp"
#include "superburst/cumulant.hpp"
#include "superburst/phase_diagram.hpp"
#include "superburst/scenarios.hpp"
#include "superburst/spectrum.hpp"

using namespace superburst;

namespace {

// Derivative of the binned cumulant system at a mid-burst-like state.
void BM_CumulantDerivs(benchmark::State& state) {
    const auto p = reference::regime_three();
    const auto bins = build_bins(reference::gaussian_disorder(p), p.ensemble_size, static_cast<int>(state.range(0)));
    const CumulantModel model(p, bins);
    auto y = model.ground_state();
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += 1e-3 * static_cast<double>(i % 7);
    std::vector<double> dy(y.size());
    for (auto _ : state) {
        model.derivs(0.0, y, dy);
        benchmark::DoNotOptimize(dy.data());
    }
    state.counters["dim"] = static_cast<double>(model.dim());
}
BENCHMARK(BM_CumulantDerivs)->Arg(49)->Arg(129)->Arg(257)->Unit(benchmark::kMicrosecond);

void BM_PhaseDiagram(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> g(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = 0.01 + 1.99 * static_cast<double>(i) / static_cast<double>(n - 1);
        d[i] = 8.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    const auto base = reference::reduced();
    for (auto _ : state) benchmark::DoNotOptimize(phase_diagram(g, d, base));
}
BENCHMARK(BM_PhaseDiagram)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CriticalDisorder(benchmark::State& state) {
    const auto p = reference::reduced();
    for (auto _ : state) benchmark::DoNotOptimize(find_critical_disorder(p, angular(100e3)));
}
BENCHMARK(BM_CriticalDisorder)->Unit(benchmark::kMicrosecond);

void BM_Periodogram(benchmark::State& state) {
    EmissionTrace tr;
    tr.dt = 100e-9;
    tr.power.resize(15001);
    for (std::size_t k = 0; k < tr.power.size(); ++k) tr.power[k] = 1.0 + static_cast<double>(k % 880 < 40);
    for (auto _ : state) benchmark::DoNotOptimize(psd(tr));
}
BENCHMARK(BM_Periodogram)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
