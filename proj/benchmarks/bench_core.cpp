#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fracground/dilation.hpp"
#include "fracground/fourier.hpp"
#include "fracground/grid.hpp"
#include "fracground/nonlinearity.hpp"
#include "fracground/rearrange.hpp"
#include "fracground/solver.hpp"

using namespace fracground;

namespace {

Field bump2d(int n, double L) {
    return sample(make_grid(2, n, L), [](const std::array<double, 3>& x) {
        return 1.3 * std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
}

ModelNonlinearity model() {
    ProblemParams p;
    p.C = 5.0;
    return ModelNonlinearity(p);
}

} // namespace

static void BM_ApplyFractionalLaplacian(benchmark::State& state) {
    Field u = bump2d(static_cast<int>(state.range(0)), 12.0);
    for (auto _ : state) benchmark::DoNotOptimize(apply_fractional_laplacian(u, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyFractionalLaplacian)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_SeminormSpectral(benchmark::State& state) {
    Field u = bump2d(static_cast<int>(state.range(0)), 12.0);
    for (auto _ : state) benchmark::DoNotOptimize(seminorm_sq_spectral(u, 0.5));
}
BENCHMARK(BM_SeminormSpectral)->RangeMultiplier(2)->Range(64, 512);

static void BM_SeminormDirect1D(benchmark::State& state) {
    Grid g = make_grid(1, static_cast<int>(state.range(0)), 12.0);
    Field u = sample(g, [](const std::array<double, 3>& x) { return std::exp(-x[0] * x[0]); });
    for (auto _ : state) benchmark::DoNotOptimize(seminorm_sq_direct(u, 0.5));
}
BENCHMARK(BM_SeminormDirect1D)->RangeMultiplier(2)->Range(64, 1024);

static void BM_Dilate(benchmark::State& state) {
    Field u = bump2d(static_cast<int>(state.range(0)), 12.0);
    for (auto _ : state) benchmark::DoNotOptimize(dilate(u, 1.37));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dilate)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_Rearrangement(benchmark::State& state) {
    Grid g = make_grid(2, static_cast<int>(state.range(0)), 12.0);
    std::mt19937_64 rng(3);
    Field u = random_band_limited(g, 8, rng);
    for (auto _ : state) benchmark::DoNotOptimize(symmetric_decreasing_rearrangement(u));
}
BENCHMARK(BM_Rearrangement)->RangeMultiplier(2)->Range(64, 512);

static void BM_PotentialEnergy(benchmark::State& state) {
    Field u = bump2d(static_cast<int>(state.range(0)), 12.0);
    ModelNonlinearity nl = model();
    for (auto _ : state) benchmark::DoNotOptimize(potential_energy(u, nl));
}
BENCHMARK(BM_PotentialEnergy)->RangeMultiplier(2)->Range(64, 512);

static void BM_ProjectToConstraint(benchmark::State& state) {
    ModelNonlinearity nl = model();
    Field u = amplitude_tune(bump2d(static_cast<int>(state.range(0)), 12.0), nl);
    for (auto _ : state) benchmark::DoNotOptimize(project_to_constraint(u, nl));
}
BENCHMARK(BM_ProjectToConstraint)->RangeMultiplier(2)->Range(64, 256);

static void BM_MinimizeFiveSteps(benchmark::State& state) {
    ModelNonlinearity nl = model();
    Grid g = make_grid(2, static_cast<int>(state.range(0)), 12.0);
    SolverConfig config;
    config.max_iterations = 5;
    config.gradient_tolerance = 1e-12; // never satisfied: measures 5 descent steps
    for (auto _ : state) benchmark::DoNotOptimize(minimize_M(g, nl, config));
}
BENCHMARK(BM_MinimizeFiveSteps)->RangeMultiplier(2)->Range(64, 256);

BENCHMARK_MAIN();
