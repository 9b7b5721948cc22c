// Copyright 2026 The gyroqfi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference kernels against their OpenMP counterparts. Thread count
// follows QFI_GYRO_THREADS.

#include <benchmark/benchmark.h>

#include "gyroqfi/fock.hpp"
#include "gyroqfi/kernels.hpp"
#include "gyroqfi/states.hpp"

namespace {

using namespace gyroqfi;

HermitianMatrix ses_density(double n) {
  return projector(build_state({Family::SES, n, std::nullopt, 0.0, Truncation::adaptive()}));
}

template <Eigen::MatrixXcd (*Loss)(const FockBasis&, const Eigen::MatrixXcd&, double, double)>
void BM_ApplyLoss(benchmark::State& state) {
  const HermitianMatrix rho = ses_density(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Loss(rho.basis(), rho.entries(), 0.7, 0.7));
  state.counters["dim"] = static_cast<double>(rho.dim());
}

template <double (*Sum)(const Eigen::VectorXd&, const Eigen::MatrixXcd&, const Eigen::VectorXd&)>
void BM_MixedQfiSum(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Eigen::VectorXd lambda = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0).normalized();
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(n, n);
  const Eigen::MatrixXcd g = a + a.adjoint();
  const Eigen::VectorXd g2 = (g * g).diagonal().real();
  for (auto _ : state) benchmark::DoNotOptimize(Sum(lambda, g, g2));
}

}  // namespace

BENCHMARK(BM_ApplyLoss<kernels::serial::apply_loss>)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyLoss<kernels::omp::apply_loss>)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MixedQfiSum<kernels::serial::mixed_qfi_sum>)->Arg(256)->Arg(1024);
BENCHMARK(BM_MixedQfiSum<kernels::omp::mixed_qfi_sum>)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
