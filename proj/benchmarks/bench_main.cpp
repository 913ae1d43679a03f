#include <benchmark/benchmark.h>

#include <cmath>

#include "fxray/abel.hpp"
#include "fxray/finsler.hpp"
#include "fxray/geodesic.hpp"
#include "fxray/tomography.hpp"

using namespace fxray;

namespace {

NormSpec aniso_spec() {
    return NormSpec::anisotropic_speed(
        0.7, {RadialProfile::constant(1.0), RadialProfile::polynomial({0.0, 0.3})});
}

void BM_NormEval(benchmark::State& state) {
    NormSpec spec = aniso_spec();
    double r = 0.8, rho = 0.3, phi = 0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spec.norm(r, rho, phi));
        phi = phi > 1.0 ? 0.2 : phi + 1e-6;
    }
}
BENCHMARK(BM_NormEval);

void BM_SprayCoefficients(benchmark::State& state) {
    NormSpec spec = aniso_spec();
    FiberPoint p{0.8, 0.3, 0.9};
    for (auto _ : state) benchmark::DoNotOptimize(spray_coefficients(spec, p));
}
BENCHMARK(BM_SprayCoefficients);

void BM_TraceTangential(benchmark::State& state) {
    NormSpec spec = aniso_spec();
    TraceOptions opts;
    opts.n_samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(trace_tangential(spec, 0.8, 0.0, opts));
}
BENCHMARK(BM_TraceTangential)->Arg(64)->Arg(256);

void BM_OperatorBuild(benchmark::State& state) {
    NormSpec spec = aniso_spec();
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = 0.7 + 0.3 * static_cast<double>(i) / (n - 1.0);
    grid.back() = 1.0;
    std::vector<AbelKernelRow> rows;
    for (std::size_t i = 1; i + 1 < n; ++i)
        rows.push_back(kernel_from_trace(trace_tangential(spec, grid[i]),
                                         turning_acceleration(spec, grid[i])));
    for (auto _ : state) benchmark::DoNotOptimize(build_operators(rows, grid, 8));
}
BENCHMARK(BM_OperatorBuild)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TikhonovInvert(benchmark::State& state) {
    NormSpec spec = NormSpec::euclidean(0.3);
    const std::size_t n = 128;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = 0.3 + 0.7 * static_cast<double>(i) / (n - 1.0);
    grid.back() = 1.0;
    std::vector<AbelKernelRow> rows;
    for (std::size_t i = 1; i + 1 < n; ++i)
        rows.push_back(kernel_from_trace(trace_tangential(spec, grid[i]),
                                         turning_acceleration(spec, grid[i])));
    AbelOperator op = discretize(rows, grid, 0);
    std::vector<double> truth(n);
    for (std::size_t i = 0; i < n; ++i) truth[i] = (1.0 - grid[i]) * (grid[i] - 0.3);
    std::vector<double> data = apply_operator(op, truth);
    for (auto _ : state) benchmark::DoNotOptimize(invert(op, data, 1e-10));
}
BENCHMARK(BM_TikhonovInvert)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
