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
#include "fockml/kernel.hpp"
#include "fockml/model.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace fockml {
namespace {

TEST(HshCircuit, UnitWeightsGiveOne) {
  for (int n : {1, 3, 6}) {
    const std::vector<double> ones(n + 1, 1.0);
    for (double phase : {0.0, 0.4, 2.0, 5.5}) {
      EXPECT_NEAR(kernel_circuit_response(n, phase, ones), 1.0, 1e-12);
    }
  }
}

TEST(HshCircuit, ZeroPhaseIsIdentity) {
  // H S(0) H = H^2 = I, so |n,0> stays put and only outcome 0 responds.
  const ComplexMatrix u = HshCircuit::mode_unitary(0.0);
  EXPECT_LT((u - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
  const std::vector<double> weights{0.7, -2.0, 3.0, 1.5};
  EXPECT_NEAR(kernel_circuit_response(3, 0.0, weights), 0.7, 1e-14);
}

TEST(HshCircuit, ProbabilitiesAreBinomial) {
  const int n = 5;
  const HshCircuit circuit(n);
  for (double phase : {0.3, 1.7, 4.0}) {
    const Eigen::VectorXd p = circuit.simulate(phase);
    const double q = std::pow(std::cos(phase / 2), 2);
    for (int j = 0; j <= n; ++j) {
      const double expected = static_cast<double>(binomial(n, j)) *
                              std::pow(q, n - j) * std::pow(1 - q, j);
      EXPECT_NEAR(p[j], expected, 1e-12);
    }
  }
}

TEST(HshCircuit, FourierTableMatchesSimulation) {
  const HshCircuit circuit(10);
  Rng rng(103);
  for (int i = 0; i < 20; ++i) {
    const double phase = rng.uniform(-10, 10);
    EXPECT_LT((circuit.probabilities(phase) - circuit.simulate(phase)).cwiseAbs().maxCoeff(),
              1e-10);
  }
}

TEST(HshCircuit, ResponseIsBandLimited) {
  const int n = 4;
  Rng rng(107);
  CircuitSpec spec = CircuitSpec::with_zero_meshes(2, {n, 0}, EncodingLayout::single());
  // The Reck block T(pi/4, pi) equals -H, so the two meshes give H S H.
  spec.meshes[0] = MeshParams({kPi / 4, kPi});
  spec.meshes[1] = MeshParams({kPi / 4, kPi});
  const auto obs = testing_util::random_observable(rng, Detector::PNR, 2, n);
  const auto c = extract_fourier_coefficients(spec, obs, 2 * n);
  for (int w = n + 1; w <= 2 * n; ++w) EXPECT_LT(std::abs(c.at(w)), 1e-10);
  const HshCircuit circuit(n);
  for (double phase : {0.1, 1.0, 2.5}) {
    EXPECT_NEAR(evaluate_model(spec, obs, {&phase, 1}), circuit.response(phase, obs.weights),
                1e-12);
  }
}

TEST(HshCircuit, RejectsBadInput) {
  EXPECT_THROW(HshCircuit(0), ConfigError);
  const std::vector<double> two(2, 1.0);
  EXPECT_THROW(kernel_circuit_response(3, 0.0, two), ConfigError);
}

TEST(PeriodicGaussian, Shape) {
  EXPECT_EQ(periodic_gaussian(0.0, 0.5), 1.0);
  EXPECT_NEAR(periodic_gaussian(1.0, 1.0), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(periodic_gaussian(kTwoPi - 1.0, 1.0), std::exp(-0.5), 1e-14);
  EXPECT_NEAR(periodic_gaussian(-1.0, 1.0), std::exp(-0.5), 1e-15);
  EXPECT_EQ(periodic_gaussian(2.0, INFINITY), 1.0);
}

TEST(KernelFit, InfiniteSigmaIsExact) {
  const auto fit = fit_kernel_observable(3, INFINITY, 50);
  EXPECT_LT(fit.max_abs_error, 1e-12);
  for (double w : fit.weights) EXPECT_NEAR(w, 1.0, 1e-10);
}

TEST(KernelFit, ErrorTargets) {
  EXPECT_LE(fit_kernel_observable(2, 1.0).max_abs_error, 0.02);
  const double good = fit_kernel_observable(4, 0.5).max_abs_error;
  const double poor = fit_kernel_observable(4, 0.25).max_abs_error;
  EXPECT_LE(good, 0.05);
  EXPECT_GE(poor, 5.0 * good);
  EXPECT_LE(fit_kernel_observable(10, 0.25).max_abs_error, 0.05);
}

TEST(KernelFit, ErrorNonIncreasingInPhotons) {
  for (double sigma : {0.25, 0.33, 0.5, 1.0}) {
    double previous = INFINITY;
    for (int n : {2, 4, 6, 8, 10}) {
      const double err = fit_kernel_observable(n, sigma).max_abs_error;
      EXPECT_LE(err, previous + 1e-12) << "sigma=" << sigma << " n=" << n;
      previous = err;
    }
  }
}

TEST(KernelFit, OneTableServesEverySigma) {
  const HshCircuit circuit(6);
  const Eigen::MatrixXd table = kernel_probability_table(circuit, 200);
  const auto phases = kernel_phase_grid(200);
  for (double sigma : {0.33, 0.5, 1.0}) {
    const auto shared = fit_kernel_observable(table, phases, sigma);
    const auto fresh = fit_kernel_observable(6, sigma);
    EXPECT_NEAR(shared.max_abs_error, fresh.max_abs_error, 1e-12);
  }
}

TEST(KernelFit, SearchAgreesWithDirectSolve) {
  const HshCircuit circuit(3);
  const Eigen::MatrixXd table = kernel_probability_table(circuit, 200);
  const auto phases = kernel_phase_grid(200);
  const auto direct = fit_kernel_observable(table, phases, 1.0);
  const auto search = fit_kernel_observable_search(table, phases, 1.0);
  const Eigen::Map<const Eigen::VectorXd> a(direct.weights.data(), 4);
  const Eigen::Map<const Eigen::VectorXd> b(search.weights.data(), 4);
  EXPECT_LT((table * (a - b)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(KernelFit, RidgeShrinksWeights) {
  const auto plain = fit_kernel_observable(4, 0.5, 200, 0.0);
  const auto ridge = fit_kernel_observable(4, 0.5, 200, 0.1);
  double a = 0, b = 0;
  for (double w : plain.weights) a += w * w;
  for (double w : ridge.weights) b += w * w;
  EXPECT_LT(b, a);
}

TEST(RidgeSolve, IdentityCases) {
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(5, -1, 1);
  const Eigen::MatrixXd k = Eigen::MatrixXd::Identity(5, 5);
  EXPECT_LT((ridge_solve(k, y, 0.0) - y).norm(), 1e-15);
  EXPECT_LT((ridge_solve(k, y, 1.0) - y / 2).norm(), 1e-15);
}

TEST(RidgeSolve, RandomPsdResidual) {
  Rng rng(109);
  Eigen::MatrixXd a(20, 8);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  const Eigen::MatrixXd k = a * a.transpose();
  Eigen::VectorXd y(20);
  for (auto& v : y) v = rng.normal();
  const Eigen::VectorXd beta = ridge_solve(k, y, 0.1);
  EXPECT_LE(((k + 0.1 * Eigen::MatrixXd::Identity(20, 20)) * beta - y).norm(), 1e-8 * y.norm());
  EXPECT_LT((beta - oracle::solve_dense(k + 0.1 * Eigen::MatrixXd::Identity(20, 20), y)).norm(),
            1e-8);
}

TEST(RidgeSolve, Errors) {
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(ridge_solve(Eigen::MatrixXd::Zero(3, 3), y, 0.0), NumericalError);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(3, 3);
  asym(0, 1) = 0.5;
  EXPECT_THROW(ridge_solve(asym, y, 0.0), ConfigError);
  EXPECT_THROW(ridge_solve(Eigen::MatrixXd::Identity(3, 3), y, -1.0), ConfigError);
  EXPECT_THROW(ridge_solve(Eigen::MatrixXd::Identity(2, 2), y, 0.0), ConfigError);
}

TEST(KernelModel, SinglePointAndZeroBeta) {
  const auto fit = fit_kernel_observable(6, 0.5);
  const DistanceKernel k = circuit_kernel(fit);
  KernelModel model;
  model.support = DataMatrix::Zero(1, 2);
  model.beta = Eigen::VectorXd::Ones(1);
  const std::vector<double> origin{0.0, 0.0};
  EXPECT_NEAR(kernel_predict(model, origin, k), 1.0, fit.max_abs_error + 1e-12);
  model.beta.setZero();
  EXPECT_EQ(kernel_predict(model, origin, k), 0.0);
}

TEST(KernelModel, InputScale) {
  DataMatrix x(2, 2);
  x << 0, 0, 3, 4;
  EXPECT_DOUBLE_EQ(input_scale_for(x), kPi / 5.0);
  x << 0, 0, 1, 1;
  EXPECT_EQ(input_scale_for(x), 1.0);
}

TEST(KernelModel, GaussianKernelMatchesOracle) {
  const LabeledDataset data = make_circles(100, 4, 0.05);
  const auto [train, test] = split(data, 60, 40, 4);
  const double scale = input_scale_for(train.x);
  const KernelModel model = fit_kernel_model(train.x, train.y, gaussian_kernel(0.5), 0.5, 0.2);
  const Eigen::VectorXd expected =
      oracle::gaussian_kernel_ridge(train.x, train.y, test.x, 0.5, 0.2, scale);
  for (Eigen::Index i = 0; i < test.size(); ++i) {
    EXPECT_NEAR(kernel_predict(model, row_of(test.x, i), gaussian_kernel(0.5)), expected[i], 1e-9);
  }
}

TEST(KernelModel, CircuitKernelClassifiesCircles) {
  double circuit_total = 0.0, oracle_total = 0.0;
  const int seeds = 5;
  const DistanceKernel k = circuit_kernel(fit_kernel_observable(10, 0.5));
  for (int seed = 1; seed <= seeds; ++seed) {
    const LabeledDataset data = make_circles(100, seed, 0.05);
    const auto [train, test] = split(data, 60, 40, seed);
    const KernelModel model = fit_kernel_model(train.x, train.y, k, 0.5, 0.2);
    Eigen::VectorXd pred(test.size());
    for (Eigen::Index i = 0; i < test.size(); ++i) {
      pred[i] = kernel_predict(model, row_of(test.x, i), k);
    }
    circuit_total += oracle::sign_accuracy(pred, test.y);
    oracle_total += oracle::sign_accuracy(
        oracle::gaussian_kernel_ridge(train.x, train.y, test.x, 0.5, 0.2, model.input_scale),
        test.y);
  }
  EXPECT_GE(circuit_total / seeds, 0.9);
  EXPECT_NEAR(circuit_total / seeds, oracle_total / seeds, 0.05);
}

TEST(KernelMatrix, ThreadIndependent) {
  const LabeledDataset data = make_moons(50, 2, 0.1);
  const auto k = gaussian_kernel(0.7);
  const Eigen::MatrixXd a = kernel_matrix(data.x, data.x, 1.0, k, 1);
  const Eigen::MatrixXd b = kernel_matrix(data.x, data.x, 1.0, k, 4);
  EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace fockml
