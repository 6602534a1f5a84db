#include <benchmark/benchmark.h>

#include "gpcyl/functionals.hpp"
#include "gpcyl/minimizer.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/sweep.hpp"

using namespace gpcyl;

namespace {

ComplexField2D field(std::size_t nx, std::size_t ny) {
    auto g = CylinderGrid::symmetric(30.0, nx, ny, 0.5, 1.0);
    return perturbed_soliton_seed(g, 0.5, 0.05, 1);
}

void BM_Energy(benchmark::State& st) {
    const auto f = field(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(energy(f).total);
    st.SetItemsProcessed(st.iterations() * static_cast<long>(f.values.size()));
}
BENCHMARK(BM_Energy)->Args({601, 16})->Args({1201, 32})->Args({4096, 64});

void BM_Momentum(benchmark::State& st) {
    const auto f = field(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(momentum(f).p_theta);
    st.SetItemsProcessed(st.iterations() * static_cast<long>(f.values.size()));
}
BENCHMARK(BM_Momentum)->Args({601, 16})->Args({1201, 32});

void BM_GradEnergy(benchmark::State& st) {
    const auto f = field(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(grad_energy(f).values.data());
    st.SetItemsProcessed(st.iterations() * static_cast<long>(f.values.size()));
}
BENCHMARK(BM_GradEnergy)->Args({601, 16})->Args({1201, 32});

void BM_Minimize(benchmark::State& st) {
    const auto f = field(601, 8);
    MinimizeOptions o;
    o.max_iters = static_cast<int>(st.range(0));
    o.grad_tol = 1e-14;
    for (auto _ : st) benchmark::DoNotOptimize(minimize(f, 0.5, o).energy.total);
}
BENCHMARK(BM_Minimize)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SpeedFromMomentum(benchmark::State& st) {
    double p = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(speed_from_momentum(p));
        p = p < 1.5 ? p + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_SpeedFromMomentum);

}  // namespace

BENCHMARK_MAIN();
