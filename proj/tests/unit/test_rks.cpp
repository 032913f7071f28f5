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

#include <gtest/gtest.h>

#include <cmath>

#include "fockml/data.hpp"
#include "fockml/rks.hpp"
#include "oracles.hpp"

namespace fockml {
namespace {

TEST(FeatureSet, Reproducible) {
  const auto a = sample_feature_set(20, 2, 1.0, 3, 42);
  const auto b = sample_feature_set(20, 2, 1.0, 3, 42);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.b, b.b);
  const auto c = sample_feature_set(20, 2, 1.0, 3, 43);
  EXPECT_NE(a.w, c.w);
}

TEST(FeatureSet, PrefixStable) {
  const auto small = sample_feature_set(10, 2, 1.0, 1, 5);
  const auto large = sample_feature_set(100, 2, 1.0, 1, 5);
  EXPECT_EQ(small.w, large.w.topRows(10));
  for (int r = 0; r < 10; ++r) EXPECT_EQ(small.b[r], large.b[r]);
}

TEST(FeatureSet, Distributions) {
  const auto fs = sample_feature_set(20000, 2, 1.0, 1, 9);
  EXPECT_NEAR(fs.w.mean(), 0.0, 0.02);
  EXPECT_NEAR((fs.w.array() * fs.w.array()).mean(), 1.0, 0.03);
  double mean_b = 0.0;
  for (double b : fs.b) {
    EXPECT_GE(b, 0.0);
    EXPECT_LT(b, kTwoPi);
    mean_b += b;
  }
  EXPECT_NEAR(mean_b / fs.b.size(), kPi, 0.05);
}

TEST(FeatureSet, Validation) {
  EXPECT_THROW(sample_feature_set(0, 2, 1.0, 1, 0), ConfigError);
  EXPECT_THROW(sample_feature_set(5, 0, 1.0, 1, 0), ConfigError);
  EXPECT_THROW(sample_feature_set(5, 2, 1.0, 0, 0), ConfigError);
}

TEST(IsolatedCosine, SpecialPoints) {
  const HshCircuit circuit(10);
  for (int k = 1; k <= 10; ++k) {
    const auto lambda = isolation_weights(circuit, k);
    EXPECT_NEAR(isolated_cosine(circuit, k, 0.0, lambda), std::sqrt(2.0), 1e-6);
    EXPECT_NEAR(isolated_cosine(circuit, k, kPi / (2 * k), lambda), 0.0, 1e-6);
  }
}

TEST(IsolatedCosine, WholeGrid) {
  const HshCircuit circuit(10);
  for (int k = 1; k <= 10; ++k) {
    const auto lambda = isolation_weights(circuit, k);
    double worst = 0.0;
    for (int g = 0; g < 1000; ++g) {
      const double u = -20.0 + 40.0 * g / 999;
      worst = std::max(worst, std::abs(isolated_cosine(circuit, k, u, lambda) -
                                       std::sqrt(2.0) * std::cos(k * u)));
    }
    EXPECT_LE(worst, 1e-6) << "k=" << k;
  }
}

TEST(IsolatedCosine, FrequencyOutsideSpectrum) {
  const HshCircuit circuit(3);
  EXPECT_THROW(isolation_weights(circuit, 4), ConfigError);
  EXPECT_THROW(isolation_weights(circuit, 0), ConfigError);
  const std::vector<double> lambda(4, 0.0);
  EXPECT_THROW(isolated_cosine(circuit, 5, 0.0, lambda), ConfigError);
}

TEST(FeatureMatrix, ZeroDrawsGiveConstant) {
  RandomFeatureSet fs = sample_feature_set(4, 2, 1.0, 2, 1);
  fs.w.setZero();
  std::fill(fs.b.begin(), fs.b.end(), 0.0);
  const DataMatrix x = DataMatrix::Random(6, 2);
  const Eigen::MatrixXd z = feature_matrix(x, fs, 4);
  EXPECT_LT((z.array() - std::sqrt(2.0) / 2.0).abs().maxCoeff(), 1e-6);
}

TEST(FeatureMatrix, EqualsClassicalFeatures) {
  const LabeledDataset data = make_moons(40, 3, 0.1);
  const HshCircuit circuit(10);
  const auto fs = sample_feature_set(25, 2, 1.0, 1, 17);
  const auto probs = sample_feature_probabilities(data.x, fs, circuit);
  for (int k = 1; k <= 10; ++k) {
    const Eigen::MatrixXd z = feature_matrix(probs, isolation_weights(circuit, k));
    const Eigen::MatrixXd expected = oracle::classical_rff(data.x, fs.w, fs.b, fs.gamma, k);
    EXPECT_LE((z - expected).cwiseAbs().maxCoeff(), 1e-6) << "k=" << k;
  }
}

TEST(FeatureMatrix, ThreadIndependent) {
  const LabeledDataset data = make_moons(30, 3, 0.1);
  const auto fs = sample_feature_set(10, 2, 1.0, 2, 5);
  EXPECT_EQ(feature_matrix(data.x, fs, 5, 1), feature_matrix(data.x, fs, 5, 3));
}

TEST(FeatureMatrix, ApproximatesGaussianKernel) {
  const int k = 2;
  const double gamma = 0.5;
  const auto fs = sample_feature_set(5000, 2, gamma, k, 23);
  DataMatrix pairs(9, 2);
  for (int i = 0; i < 9; ++i) {
    pairs(i, 0) = 0.25 * i;
    pairs(i, 1) = -0.1 * i;
  }
  const Eigen::MatrixXd z = feature_matrix(pairs, fs, 4);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const double d2 = (pairs.row(i) - pairs.row(j)).squaredNorm();
      const double expected = std::exp(-k * k * gamma * gamma * d2 / 2.0);
      EXPECT_NEAR(z.row(i).dot(z.row(j)), expected, 0.05);
    }
  }
}

TEST(RksTrain, SingleFeatureClosedForm) {
  const LabeledDataset data = make_moons(30, 1, 0.1);
  const auto fs = sample_feature_set(1, 2, 1.0, 1, 2);
  const RksModel model = rks_train(data.x, data.y, fs, 0.3, 4);
  const Eigen::MatrixXd z = feature_matrix(data.x, fs, 4);
  const double expected = z.col(0).dot(data.y) / (z.col(0).squaredNorm() + 0.3);
  EXPECT_NEAR(model.c_opt[0], expected, 1e-10);
}

TEST(RksTrain, HeavyRegularizationVanishes) {
  const LabeledDataset data = make_moons(30, 1, 0.1);
  const auto fs = sample_feature_set(10, 2, 1.0, 1, 2);
  EXPECT_LT(rks_train(data.x, data.y, fs, 1e9, 4).c_opt.norm(), 1e-7);
}

TEST(RksTrain, SingularWithoutRegularization) {
  const LabeledDataset data = make_moons(10, 1, 0.1);
  const auto fs = sample_feature_set(20, 2, 1.0, 1, 2);
  EXPECT_THROW(rks_train(data.x, data.y, fs, 0.0, 4), NumericalError);
}

TEST(RksTrain, MatchesClassicalOracle) {
  const LabeledDataset data = make_moons(100, 6, 0.1);
  const auto [train, test] = split(data, 60, 40, 6);
  const auto fs = sample_feature_set(100, 2, 1.0, 4, 6);
  const RksModel model = rks_train(train.x, train.y, fs, 0.2, 10);
  const Eigen::VectorXd c = oracle::ridge_weights(
      oracle::classical_rff(train.x, fs.w, fs.b, 1.0, 4), train.y, 0.2);
  EXPECT_LT((model.c_opt - c).cwiseAbs().maxCoeff(), 1e-4);
  const Eigen::VectorXd quantum = rks_predict(model, test.x);
  const Eigen::VectorXd classical = oracle::classical_rff(test.x, fs.w, fs.b, 1.0, 4) * c;
  EXPECT_EQ(oracle::sign_accuracy(quantum, test.y), oracle::sign_accuracy(classical, test.y));
}

}  // namespace
}  // namespace fockml
