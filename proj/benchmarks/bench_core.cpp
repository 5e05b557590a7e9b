#include <benchmark/benchmark.h>

#include <complex>

#include "stabres/eig.hpp"
#include "stabres/expost_cs.hpp"
#include "stabres/model1d.hpp"

namespace {

const stabres::PotentialParams kWell{7.1, 4.5, 4.0, 2.0, 4.92};

stabres::BasisSpec sector_basis(int N) {
    stabres::BasisSpec b;
    b.L0 = 50.0;
    b.N = N;
    b.quadrature_points = 4 * N;
    b.parity = stabres::Parity::Even;
    return b;
}

void BM_BuildRealHamiltonian(benchmark::State& state) {
    const auto b = sector_basis(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto H = stabres::build_real_hamiltonian(0.37, kWell, b);
        benchmark::DoNotOptimize(H.matrix.data());
    }
}
BENCHMARK(BM_BuildRealHamiltonian)->Arg(200)->Arg(500);

void BM_BuildComplexHamiltonian(benchmark::State& state) {
    const auto b = sector_basis(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto H = stabres::build_complex_hamiltonian(0.15, 0.0, kWell, b);
        benchmark::DoNotOptimize(H.matrix.data());
    }
}
BENCHMARK(BM_BuildComplexHamiltonian)->Arg(200)->Arg(500);

void BM_EigSymmetricValues(benchmark::State& state) {
    const auto b = sector_basis(static_cast<int>(state.range(0)));
    const auto H = stabres::build_real_hamiltonian(0.0, kWell, b);
    for (auto _ : state) {
        auto ev = stabres::eigvals_symmetric(H.matrix);
        benchmark::DoNotOptimize(ev.data());
    }
}
BENCHMARK(BM_EigSymmetricValues)->Arg(200)->Arg(500);

void BM_EigComplexValues(benchmark::State& state) {
    stabres::BasisSpec b = sector_basis(static_cast<int>(state.range(0)));
    b.parity = stabres::Parity::Full;
    const auto H = stabres::build_complex_hamiltonian(0.1, 0.0, kWell, b);
    for (auto _ : state) {
        auto ev = stabres::eigvals_complex(H.matrix);
        benchmark::DoNotOptimize(ev.data());
    }
}
BENCHMARK(BM_EigComplexValues)->Arg(100)->Arg(250);

void BM_DiabaticThetaStep(benchmark::State& state) {
    // a model of the production size: one resonance + 65 channels
    stabres::DiabaticModel m;
    m.E_r = 1.5388;
    for (int k = 0; k < 65; ++k) {
        const double eta_c = -0.95 + 0.03 * k;
        m.channels.emplace_back(
            stabres::ContinuumChannel{eta_c, 2.2, -0.05, 0.0, 1.5388}, 4e-3);
    }
    for (auto _ : state) {
        auto sys = stabres::eig_complex(stabres::assemble(m, {0.0, 0.2}));
        benchmark::DoNotOptimize(sys.values.data());
    }
}
BENCHMARK(BM_DiabaticThetaStep);

}  // namespace

BENCHMARK_MAIN();
