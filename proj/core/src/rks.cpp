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

#include "fockml/rks.hpp"

#include <cmath>

#include "fockml/parallel.hpp"
#include "fockml/rng.hpp"

namespace fockml {

namespace {

void check_frequency(const HshCircuit& circuit, int k) {
  if (k < 1 || k > circuit.photons()) {
    throw ConfigError("frequency k = " + std::to_string(k) +
                      " is not in the spectrum of a " +
                      std::to_string(circuit.photons()) + "-photon circuit");
  }
}

}  // namespace

RandomFeatureSet sample_feature_set(int features, int dims, double gamma, int k,
                                    std::uint64_t seed) {
  if (features < 1) throw ConfigError("feature set: R must be >= 1");
  if (dims < 1) throw ConfigError("feature set: D must be >= 1");
  if (k < 1) throw ConfigError("feature set: k must be >= 1");
  if (!std::isfinite(gamma)) throw ConfigError("feature set: gamma must be finite");
  RandomFeatureSet fs;
  fs.features = features;
  fs.dims = dims;
  fs.gamma = gamma;
  fs.k = k;
  fs.seed = seed;
  fs.w.resize(features, dims);
  fs.b.resize(features);
  for (int r = 0; r < features; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    for (int d = 0; d < dims; ++d) fs.w(r, d) = rng.normal();
    fs.b[r] = rng.uniform(0.0, kTwoPi);
  }
  return fs;
}

std::vector<double> isolation_weights(const HshCircuit& circuit, int k,
                                      int grid_points) {
  check_frequency(circuit, k);
  if (grid_points < 2 * circuit.photons() + 1) {
    throw ConfigError("isolation weights: grid too coarse for the spectrum");
  }
  const auto outcomes = static_cast<Eigen::Index>(circuit.outcomes());
  Eigen::MatrixXd table(grid_points, outcomes);
  Eigen::VectorXd target(grid_points);
  for (int g = 0; g < grid_points; ++g) {
    const double u = kTwoPi * g / grid_points;
    table.row(g) = circuit.simulate(u).transpose();
    target[g] = std::sqrt(2.0) * std::cos(k * u);
  }
  const Eigen::VectorXd lambda = table.colPivHouseholderQr().solve(target);
  return {lambda.data(), lambda.data() + lambda.size()};
}

double isolated_cosine(const HshCircuit& circuit, int k, double u,
                       std::span<const double> weights) {
  check_frequency(circuit, k);
  return circuit.response(u, weights);
}

double isolated_cosine(int photons, int k, double u,
                       std::span<const double> weights) {
  return isolated_cosine(HshCircuit(photons), k, u, weights);
}

FeatureProbabilities sample_feature_probabilities(const DataMatrix& x,
                                                  const RandomFeatureSet& fs,
                                                  const HshCircuit& circuit,
                                                  int threads) {
  if (x.cols() != fs.dims) {
    throw ConfigError("feature probabilities: data has " +
                      std::to_string(x.cols()) + " features, set expects " +
                      std::to_string(fs.dims));
  }
  FeatureProbabilities out;
  out.samples = x.rows();
  out.features = fs.features;
  out.photons = circuit.photons();
  out.table.resize(x.rows() * fs.features,
                   static_cast<Eigen::Index>(circuit.outcomes()));
  parallel_for(static_cast<std::size_t>(x.rows()), threads, [&](std::size_t i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (int r = 0; r < fs.features; ++r) {
      const double u = fs.gamma * (fs.w.row(r).dot(x.row(row)) + fs.b[r]);
      out.table.row(row * fs.features + r) = circuit.probabilities(u).transpose();
    }
  });
  return out;
}

Eigen::MatrixXd feature_matrix(const FeatureProbabilities& probabilities,
                               std::span<const double> weights) {
  if (static_cast<Eigen::Index>(weights.size()) != probabilities.table.cols()) {
    throw ConfigError("feature_matrix: weight count != outcome count");
  }
  const Eigen::Map<const Eigen::VectorXd> lambda(
      weights.data(), static_cast<Eigen::Index>(weights.size()));
  const Eigen::VectorXd flat = probabilities.table * lambda;
  const double norm = 1.0 / std::sqrt(static_cast<double>(probabilities.features));
  Eigen::MatrixXd z(probabilities.samples, probabilities.features);
  for (Eigen::Index i = 0; i < probabilities.samples; ++i) {
    for (int r = 0; r < probabilities.features; ++r) {
      z(i, r) = norm * flat[i * probabilities.features + r];
    }
  }
  return z;
}

Eigen::MatrixXd feature_matrix(const DataMatrix& x, const RandomFeatureSet& fs,
                               int photons, int threads) {
  const HshCircuit circuit(photons);
  const std::vector<double> weights = isolation_weights(circuit, fs.k);
  return feature_matrix(sample_feature_probabilities(x, fs, circuit, threads),
                        weights);
}

RksModel rks_train_from_features(const Eigen::MatrixXd& z,
                                 const Eigen::VectorXd& y,
                                 const RandomFeatureSet& fs, double alpha,
                                 int photons, std::vector<double> isolation) {
  if (z.rows() == 0) throw ConfigError("rks_train: empty training set");
  if (z.rows() != y.size()) throw ConfigError("rks_train: |Z| != |y|");
  if (z.cols() != fs.features) throw ConfigError("rks_train: Z has wrong width");
  if (!(alpha >= 0.0)) throw ConfigError("rks_train: alpha must be >= 0");
  if (alpha == 0.0 && z.cols() > z.rows()) {
    throw NumericalError("rks_train: Z^T Z is singular (alpha = 0, R > N)");
  }
  Eigen::MatrixXd system = z.transpose() * z;
  system.diagonal().array() += alpha;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
  if (ldlt.info() != Eigen::Success || !(ldlt.rcond() > 1e-13)) {
    throw NumericalError("rks_train: Z^T Z + alpha I is singular");
  }
  RksModel model;
  model.c_opt = ldlt.solve(z.transpose() * y);
  model.features = fs;
  model.alpha = alpha;
  model.photons = photons;
  model.isolation = std::move(isolation);
  return model;
}

RksModel rks_train(const DataMatrix& x, const Eigen::VectorXd& y,
                   const RandomFeatureSet& fs, double alpha, int photons,
                   int threads) {
  const HshCircuit circuit(photons);
  std::vector<double> weights = isolation_weights(circuit, fs.k);
  const Eigen::MatrixXd z =
      feature_matrix(sample_feature_probabilities(x, fs, circuit, threads), weights);
  return rks_train_from_features(z, y, fs, alpha, photons, std::move(weights));
}

Eigen::VectorXd rks_predict(const RksModel& model, const DataMatrix& x,
                            int threads) {
  const HshCircuit circuit(model.photons);
  const Eigen::MatrixXd z = feature_matrix(
      sample_feature_probabilities(x, model.features, circuit, threads),
      model.isolation);
  return z * model.c_opt;
}

}  // namespace fockml
