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

// n-photon quantum models: expectation of a diagonal observable in the
// output state of a circuit, their Fourier coefficients in the encoded
// data, degree-of-freedom counts, and finite-shot sampling.

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fockml/circuit.hpp"
#include "fockml/fock.hpp"

namespace fockml {

enum class Detector { PNR, Threshold };

std::string_view to_string(Detector detector);
Detector parse_detector(std::string_view name);

/// Basis states grouped by which modes register at least one photon.
struct ClickPartition {
  /// Bit i set when mode i clicks. Ordered by first occurrence in the basis.
  std::vector<std::uint64_t> patterns;
  /// pattern_of_state[a] indexes `patterns` for basis state a.
  std::vector<std::size_t> pattern_of_state;

  std::size_t size() const { return patterns.size(); }
};

ClickPartition group_by_clicks(const FockBasis& basis);

/// Diagonal observable: one weight per basis state (PNR) or per click
/// pattern (Threshold).
struct Observable {
  Detector detector = Detector::PNR;
  int modes = 0;
  int photons = 0;
  std::vector<double> weights;

  /// Number of weights the detector type requires for (modes, photons).
  static std::size_t weight_count(Detector detector, int modes, int photons);
  static Observable constant(Detector detector, int modes, int photons,
                             double value);

  void validate() const;
  /// Weight of every basis state, expanding click patterns for Threshold.
  std::vector<double> state_weights(const FockBasis& basis) const;
};

/// Model evaluator for a fixed (modes, photons, input, observable). The
/// basis and per-state weights are built once; the circuit parameters are
/// passed per call. Safe for concurrent const use.
class QuantumModel {
 public:
  QuantumModel(const CircuitSpec& spec, const Observable& obs);

  const FockBasis& basis() const { return basis_; }

  /// |<b| U(x) |input>|^2 for every basis state b.
  Eigen::VectorXd probabilities(const CircuitSpec& spec, Features x) const;
  double evaluate(const CircuitSpec& spec, Features x) const;
  /// Same evaluation with replacement observable weights of matching size.
  double evaluate(const CircuitSpec& spec, std::span<const double> state_weights,
                  Features x) const;

 private:
  FockBasis basis_;
  std::vector<double> state_weights_;
};

/// <input| U^dag(x) M U(x) |input>.
double evaluate_model(const CircuitSpec& spec, const Observable& obs, Features x);

/// Coefficients c_w, w = -D..D, of a single-feature model.
struct FourierCoefficients {
  int degree = 0;
  std::vector<Complex> coeffs;  ///< coeffs[w + degree]

  Complex at(int omega) const;
  /// sum_w c_w e^{i w x}, real part.
  double evaluate(double x) const;
};

/// Samples the model at 2D+1 equispaced points of [0, 2pi) and inverts the
/// discrete Fourier transform; exact whenever the model's band limit is at
/// most D. Coefficients are with respect to the encoded variable, so any
/// feature scaling in `spec` is ignored. Requires a single-feature layout.
FourierCoefficients extract_fourier_coefficients(const CircuitSpec& spec,
                                                 const Observable& obs,
                                                 int degree);

/// Multi-feature coefficients on a (2D+1)^d tensor grid.
struct FourierTensor {
  int degree = 0;
  int dims = 0;
  std::vector<Complex> coeffs;  ///< row-major over (w_1 + D, ..., w_d + D)

  Complex at(std::span<const int> omega) const;
};

FourierTensor extract_fourier_tensor(const CircuitSpec& spec,
                                     const Observable& obs, int degree);

/// Safe degree: n times the widest encoding multiplier of feature 0.
int band_limit(const CircuitSpec& spec);

/// 2m(m-1) + C(n+m-1, n).
std::uint64_t dof_pnr(int modes, int photons);
/// 2m(m-1) + sum_{k=1}^{min(n,m)} C(m, k).
std::uint64_t dof_threshold(int modes, int photons);
/// 2n + 1 real parameters to control one real and n complex coefficients.
std::uint64_t m_min(int photons);

/// Multinomial draw of `shots` PNR outcomes from the exact output
/// distribution at x. counts[a] refers to FockBasis(modes, photons)[a].
std::vector<std::uint64_t> sample_counts(const CircuitSpec& spec, Features x,
                                         std::uint64_t shots, std::uint64_t seed);

}  // namespace fockml
