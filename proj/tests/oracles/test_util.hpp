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

#pragma once

#include "fockml/circuit.hpp"
#include "fockml/model.hpp"
#include "fockml/rng.hpp"

namespace fockml::testing_util {

inline ComplexMatrix random_complex(Rng& rng, int rows, int cols) {
  ComplexMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  }
  return a;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal moved into Q.
inline ComplexMatrix random_unitary(Rng& rng, int m) {
  const ComplexMatrix z = random_complex(rng, m, m);
  const Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline std::vector<double> random_angles(Rng& rng, std::size_t count) {
  std::vector<double> out(count);
  for (double& v : out) v = rng.uniform(-kPi, kPi);
  return out;
}

inline CircuitSpec random_spec(Rng& rng, int modes, FockState input,
                               EncodingLayout layout) {
  CircuitSpec spec = CircuitSpec::with_zero_meshes(modes, std::move(input),
                                                   std::move(layout));
  for (auto& mesh : spec.meshes) {
    mesh = MeshParams(random_angles(rng, MeshParams::count_for(modes)));
  }
  return spec;
}

inline Observable random_observable(Rng& rng, Detector detector, int modes,
                                    int photons) {
  Observable obs = Observable::constant(detector, modes, photons, 0.0);
  for (double& w : obs.weights) w = rng.uniform(-1.0, 1.0);
  return obs;
}

inline FockState first_state(int modes, int photons) {
  std::vector<int> occ(modes, 0);
  occ[0] = photons;
  return FockState(occ);
}

}  // namespace fockml::testing_util
