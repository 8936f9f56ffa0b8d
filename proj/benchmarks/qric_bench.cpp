#include <benchmark/benchmark.h>

#include "qric/model.hpp"
#include "qric/numerics.hpp"
#include "qric/riccati.hpp"
#include "qric/rng.hpp"
#include "qric/runner.hpp"
#include "qric/stationary.hpp"

namespace {

using namespace qric;

void BM_eigh(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StreamRng rng(1, "bench/eigh");
    const ComplexMatrix a = rng.hermitian_gaussian_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(eigh(a));
    state.SetComplexityN(n);
}
BENCHMARK(BM_eigh)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_unitary_exp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StreamRng rng(1, "bench/exp");
    const ComplexMatrix h = rng.hermitian_gaussian_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(unitary_exp(h, 0.7));
}
BENCHMARK(BM_unitary_exp)->RangeMultiplier(2)->Range(8, 128);

void BM_sylvester(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StreamRng rng(1, "bench/sylv");
    // Shifting one side apart keeps the spectra disjoint at every size.
    const ComplexMatrix a =
        rng.hermitian_gaussian_matrix(n) + 10.0 * ComplexMatrix::Identity(n, n);
    const ComplexMatrix b = rng.hermitian_gaussian_matrix(n);
    const ComplexMatrix c = rng.complex_gaussian_matrix(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(sylvester_solve(a, b, c));
}
BENCHMARK(BM_sylvester)->RangeMultiplier(2)->Range(8, 64);

void BM_invariant_subspace(benchmark::State& state) {
    SpinBosonParams p;
    p.n_env = static_cast<int>(state.range(0));
    p.g = 0.2;
    p.alpha = 0.5;
    const BlockHamiltonian h = build_spin_boson(p).h;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_invariant_subspace(h, SelectionStrategy::max_invertibility));
}
BENCHMARK(BM_invariant_subspace)->Arg(8)->Arg(16)->Arg(32);

void BM_newton(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StreamRng rng(1, "bench/newton");
    // Separated block spectra with moderate coupling keep the zero start
    // inside the Newton basin at every size.
    const ComplexMatrix shift = 6.0 * ComplexMatrix::Identity(n, n);
    const BlockHamiltonian h = from_blocks(
        rng.hermitian_gaussian_matrix(n) + shift, rng.hermitian_gaussian_matrix(n) - shift,
        0.5 * rng.complex_gaussian_matrix(n, n));
    for (auto _ : state) benchmark::DoNotOptimize(solve_newton(h, 50, 0.0));
}
BENCHMARK(BM_newton)->Arg(4)->Arg(8)->Arg(16);

void BM_stationary_states(benchmark::State& state) {
    SpinBosonParams p;
    p.n_env = static_cast<int>(state.range(0));
    p.g = 0.2;
    p.alpha = 0.5;
    const SpinBosonSystem sys = build_spin_boson(p);
    const std::vector<RiccatiSolution> sols =
        analytic_solutions(sys.h, ModelKind::spin_boson);
    for (auto _ : state)
        benchmark::DoNotOptimize(all_stationary_states(sys.h, sols.front()));
}
BENCHMARK(BM_stationary_states)->Arg(16)->Arg(32);

void BM_pipeline(benchmark::State& state) {
    RunConfig cfg;
    SpinBosonParams p;
    p.n_env = 16;
    p.g = 0.2;
    p.alpha = 0.5;
    cfg.params = p;
    cfg.solver = SolverChoice::analytic;
    for (auto _ : state) benchmark::DoNotOptimize(execute_run(cfg));
}
BENCHMARK(BM_pipeline);

}  // namespace

BENCHMARK_MAIN();
