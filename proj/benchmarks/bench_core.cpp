// Copyright 2026 The wva-costlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>

#include "wva/cost.hpp"
#include "wva/experiment.hpp"
#include "wva/fisher.hpp"
#include "wva/quantum.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_HermitianEigs4(benchmark::State &state) {
    const wva::HermitianOperator a = wva::ReferenceBasis::sigma_y_eigenbasis().sigma();
    const wva::HermitianOperator h(wva::kron(a.matrix(), wva::pauli_z().matrix()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wva::hermitian_eigs(h));
    }
}
BENCHMARK(BM_HermitianEigs4);

void BM_CouplingUnitary(benchmark::State &state) {
    const wva::HermitianOperator a = wva::ReferenceBasis::sigma_y_eigenbasis().sigma();
    const wva::HermitianOperator m = wva::pauli_z();
    double g = 0.0349;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wva::coupling_unitary(a, m, g));
        g += 1e-9;
    }
}
BENCHMARK(BM_CouplingUnitary);

void BM_QfiMixed(benchmark::State &state) {
    const wva::ReferenceBasis y = wva::ReferenceBasis::sigma_y_eigenbasis();
    const wva::HermitianOperator a = y.sigma();
    const wva::HermitianOperator m = wva::pauli_z();
    const wva::ComplexMatrix rho =
        wva::kron(wva::DensityMatrix::pure(y.real_superposition(kPi / 6.0)).matrix(),
                  wva::DensityMatrix::pure(wva::Ket{1.0, 1.0}).matrix());
    const wva::MixedFamily f = [&](double g) {
        const wva::UnitaryOperator u = wva::coupling_unitary(a, m, g);
        return wva::DensityMatrix(u.matrix() * rho * u.matrix().adjoint());
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(wva::qfi_mixed(f, 0.0349));
    }
}
BENCHMARK(BM_QfiMixed);

void BM_BoundaryCurve(benchmark::State &state) {
    const auto grid = wva::default_alpha_grid(kPi / 6.0);
    const wva::CostRates unit(1.0, 1.0, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wva::boundary_curve(kPi / 6.0, grid, unit));
    }
}
BENCHMARK(BM_BoundaryCurve);

void BM_Campaign(benchmark::State &state) {
    wva::ExperimentConfig cfg;
    cfg.theta = kPi / 6.0;
    cfg.alpha = -kPi / 6.0;
    cfg.g_true = 0.0349;
    cfg.stopping = wva::Stopping::postselected(700);
    cfg.n_reps = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wva::run_campaign(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Campaign)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
