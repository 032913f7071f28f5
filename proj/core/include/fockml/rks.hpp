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

// Random kitchen sinks with features sampled from the H S(u) H circuit.
//
// Feature r of input x is sqrt(2) cos(k * gamma * (w_r . x + b_r)) / sqrt(R)
// with w_r ~ N(0, I_D) and b_r ~ U[0, 2pi). The circuit is driven with phase
// u = gamma (w_r . x + b_r); a weight vector lambda^(k), fitted once per
// (n, k), turns its n+1 outcome probabilities into sqrt(2) cos(k u). One
// probability table therefore yields every frequency k = 1..n.

#pragma once

#include <cstdint>
#include <vector>

#include "fockml/kernel.hpp"

namespace fockml {

struct RandomFeatureSet {
  int features = 0;  ///< R
  int dims = 0;      ///< D
  DataMatrix w;      ///< R x D, standard normal
  std::vector<double> b;  ///< R offsets, uniform on [0, 2pi)
  double gamma = 1.0;
  int k = 1;
  std::uint64_t seed = 0;
};

/// Feature r draws from its own stream derive_seed(seed, r): D normals,
/// then b_r. Growing R keeps the first features unchanged.
RandomFeatureSet sample_feature_set(int features, int dims, double gamma, int k,
                                    std::uint64_t seed);

/// Least-squares weights reproducing sqrt(2) cos(k u) from the outcome
/// probabilities on `grid_points` phases 2pi j / grid_points.
std::vector<double> isolation_weights(const HshCircuit& circuit, int k,
                                      int grid_points = 101);

/// Throws ConfigError if k is outside [1, n].
double isolated_cosine(const HshCircuit& circuit, int k, double u,
                       std::span<const double> weights);
double isolated_cosine(int photons, int k, double u,
                       std::span<const double> weights);

/// Outcome probabilities at every (sample, feature) phase.
struct FeatureProbabilities {
  Eigen::Index samples = 0;
  int features = 0;
  int photons = 0;
  /// Row i * R + r holds p(u_ir).
  Eigen::MatrixXd table;
};

FeatureProbabilities sample_feature_probabilities(const DataMatrix& x,
                                                  const RandomFeatureSet& fs,
                                                  const HshCircuit& circuit,
                                                  int threads = 1);

/// N x R matrix (1/sqrt(R)) lambda . p(u_ir).
Eigen::MatrixXd feature_matrix(const FeatureProbabilities& probabilities,
                               std::span<const double> weights);

/// Convenience: builds the circuit and isolation weights for fs.k.
Eigen::MatrixXd feature_matrix(const DataMatrix& x, const RandomFeatureSet& fs,
                               int photons, int threads = 1);

struct RksModel {
  Eigen::VectorXd c_opt;
  RandomFeatureSet features;
  double alpha = 0.0;
  int photons = 0;
  std::vector<double> isolation;  ///< lambda^(k) used for fs.k
};

/// c_opt = (Z^T Z + alpha I_R)^{-1} Z^T y. Throws NumericalError when the
/// system is singular (alpha = 0 with R > N).
RksModel rks_train_from_features(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                                 const RandomFeatureSet& fs, double alpha,
                                 int photons, std::vector<double> isolation);

RksModel rks_train(const DataMatrix& x, const Eigen::VectorXd& y,
                   const RandomFeatureSet& fs, double alpha, int photons,
                   int threads = 1);

/// f*(x) = c_opt . z(x).
Eigen::VectorXd rks_predict(const RksModel& model, const DataMatrix& x,
                            int threads = 1);

}  // namespace fockml
