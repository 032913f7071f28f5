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

#include "fockml/fock.hpp"
#include "fockml/rng.hpp"

namespace {

fockml::ComplexMatrix random_matrix(int k, std::uint64_t seed) {
  fockml::Rng rng(seed);
  fockml::ComplexMatrix a(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a(i, j) = {rng.normal(), rng.normal()};
  }
  return a;
}

void BM_Permanent(benchmark::State& state) {
  const auto a = random_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fockml::permanent(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Permanent)->DenseRange(2, 14, 2);

void BM_LiftUnitary(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const int photons = static_cast<int>(state.range(1));
  const fockml::FockBasis basis(modes, photons);
  const Eigen::HouseholderQR<fockml::ComplexMatrix> qr(random_matrix(modes, 2));
  const fockml::ComplexMatrix u = qr.householderQ();
  for (auto _ : state) benchmark::DoNotOptimize(fockml::lift_unitary(u, basis));
  state.counters["dim"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_LiftUnitary)->Args({2, 10})->Args({3, 3})->Args({3, 5})->Args({4, 4});

}  // namespace
