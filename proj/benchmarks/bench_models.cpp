// Copyright 2026 The fockml Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "fockml/kernel.hpp"
#include "fockml/model.hpp"
#include "fockml/rks.hpp"

namespace {

using namespace fockml;

void BM_EvaluateModel(benchmark::State& state) {
  const FockState input = parse_fock_state(state.range(0) == 1 ? "100" : "221");
  CircuitSpec spec =
      CircuitSpec::with_zero_meshes(3, input, EncodingLayout::per_feature(2));
  for (auto& mesh : spec.meshes) {
    for (double& a : mesh.mutable_angles()) a = 0.3;
  }
  const Observable obs = Observable::constant(Detector::PNR, 3, input.photons(), 0.5);
  const QuantumModel model(spec, obs);
  const std::vector<double> x{0.4, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(model.evaluate(spec, x));
}
BENCHMARK(BM_EvaluateModel)->Arg(1)->Arg(5);

void BM_HshSimulate(benchmark::State& state) {
  const HshCircuit circuit(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(circuit.simulate(0.7));
}
BENCHMARK(BM_HshSimulate)->Arg(2)->Arg(10);

void BM_HshFourierTable(benchmark::State& state) {
  const HshCircuit circuit(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(circuit.probabilities(0.7));
}
BENCHMARK(BM_HshFourierTable)->Arg(2)->Arg(10);

void BM_FitKernelObservable(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_kernel_observable(static_cast<int>(state.range(0)), 0.5));
  }
}
BENCHMARK(BM_FitKernelObservable)->Arg(4)->Arg(10);

void BM_RksFeatureMatrix(benchmark::State& state) {
  DataMatrix x(60, 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    x(i, 0) = 0.05 * static_cast<double>(i);
    x(i, 1) = -0.03 * static_cast<double>(i);
  }
  const RandomFeatureSet fs =
      sample_feature_set(static_cast<int>(state.range(0)), 2, 1.0, 4, 9);
  for (auto _ : state) benchmark::DoNotOptimize(feature_matrix(x, fs, 10));
}
BENCHMARK(BM_RksFeatureMatrix)->Arg(10)->Arg(100);

}  // namespace
