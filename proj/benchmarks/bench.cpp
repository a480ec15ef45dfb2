#include <array>
#include <vector>

#include <benchmark/benchmark.h>

#include "su2k/gauge.hpp"
#include "su2k/qalgebra.hpp"
#include "su2k/sim.hpp"
#include "su2k/synth.hpp"

using namespace su2k;

static void BM_six_j(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Truncation t(k);
    // admissible stencils only, so the Racah sum actually runs
    std::vector<std::array<int, 6>> args;
    for (int a = 0; a <= k; ++a)
        for (int e = 0; e <= k; ++e)
            for (int f = 0; f <= k; ++f)
                if (admissible2(a, a, e, k) && admissible2(a, a, f, k) && admissible2(a, a, e, k))
                    args.push_back({a, a, e, a, a, f});
    size_t i = 0;
    for (auto _ : state) {
        const auto& q = args[i++ % args.size()];
        benchmark::DoNotOptimize(six_j(q[0], q[1], q[2], q[3], q[4], q[5], t));
    }
}
BENCHMARK(BM_six_j)->Arg(2)->Arg(8)->Arg(32);

static void BM_phys_dim(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(phys_dim(Truncation(k), true).value);
}
BENCHMARK(BM_phys_dim)->Arg(50)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_emit_trotter_reduced(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    EvolutionParams p{0.2, 1.0, 1};
    for (auto _ : state) benchmark::DoNotOptimize(emit_trotter_step(Truncation(k), p, Scheme::reduced));
}
BENCHMARK(BM_emit_trotter_reduced)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_apply_trotter_step(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const GateList gl = emit_trotter_step(Truncation(k), {0.2, 1.0, 1}, Scheme::reduced);
    const RegisterSpec spec(gl.dims);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(spec.total());
    psi[0] = 1.0;
    for (auto _ : state) {
        for (const Gate& g : gl.gates) apply_gate(psi, spec, g);
        benchmark::DoNotOptimize(psi.data());
    }
}
BENCHMARK(BM_apply_trotter_step)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
