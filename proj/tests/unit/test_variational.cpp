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

#include "fockml/variational.hpp"
#include "test_util.hpp"

namespace fockml {
namespace {

struct Grid {
  DataMatrix x;
  Eigen::VectorXd y;
};

template <typename F>
Grid sample_grid(int points, double lo, double hi, F&& f) {
  Grid g;
  g.x.resize(points, 1);
  g.y.resize(points);
  for (int i = 0; i < points; ++i) {
    g.x(i, 0) = lo + (hi - lo) * i / (points - 1);
    g.y[i] = f(g.x(i, 0));
  }
  return g;
}

TEST(Cost, PerfectModelIsZero) {
  Rng rng(83);
  const auto spec = testing_util::random_spec(rng, 2, {1, 0}, EncodingLayout::single());
  const auto obs = testing_util::random_observable(rng, Detector::PNR, 2, 1);
  const Grid g = sample_grid(10, -3, 3, [&](double x) { return evaluate_model(spec, obs, {&x, 1}); });
  EXPECT_NEAR(cost(spec, obs, g.x, g.y, 0.0), 0.0, 1e-28);
}

TEST(Cost, ZeroModel) {
  const auto spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  const auto obs = Observable::constant(Detector::PNR, 2, 1, 0.0);
  const Grid g = sample_grid(7, 0, 1, [](double x) { return 1.0 + x; });
  EXPECT_DOUBLE_EQ(cost(spec, obs, g.x, g.y, 0.0), g.y.squaredNorm() / 14.0);
}

TEST(Cost, RegularizerIsAdditive) {
  Rng rng(89);
  const auto spec = testing_util::random_spec(rng, 2, {1, 1}, EncodingLayout::single());
  const auto obs = testing_util::random_observable(rng, Detector::PNR, 2, 2);
  const Grid g = sample_grid(9, -1, 1, [](double x) { return std::sin(x); });
  double penalty = 0.0;
  for (double w : obs.weights) penalty += w * w;
  EXPECT_NEAR(cost(spec, obs, g.x, g.y, 0.3) - cost(spec, obs, g.x, g.y, 0.0), 0.3 * penalty,
              1e-14);
}

TEST(Cost, RejectsEmptyOrMismatched) {
  const auto spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  const auto obs = Observable::constant(Detector::PNR, 2, 1, 0.0);
  EXPECT_THROW(cost(spec, obs, DataMatrix(0, 1), Eigen::VectorXd(0), 0.0), ConfigError);
  EXPECT_THROW(cost(spec, obs, DataMatrix::Zero(3, 1), Eigen::VectorXd::Zero(2), 0.0),
               ConfigError);
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  c.alpha = -1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_evals = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.mesh_bound = INFINITY;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(PackParameters, RoundTrip) {
  Rng rng(97);
  auto spec = testing_util::random_spec(rng, 3, {1, 1, 0}, EncodingLayout::parallel_1d(3));
  auto obs = testing_util::random_observable(rng, Detector::Threshold, 3, 2);
  const auto params = pack_parameters(spec, obs);
  EXPECT_EQ(params.size(), 3 * 6 + obs.weights.size());
  auto spec2 = CircuitSpec::with_zero_meshes(3, {1, 1, 0}, EncodingLayout::parallel_1d(3));
  auto obs2 = Observable::constant(Detector::Threshold, 3, 2, 0.0);
  unpack_parameters(params, spec2, obs2);
  EXPECT_EQ(pack_parameters(spec2, obs2), params);
  EXPECT_THROW(unpack_parameters(std::span(params).first(3), spec2, obs2), ConfigError);
}

TEST(Train, ZeroTargetFromZeroWeights) {
  const auto spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  const auto obs = Observable::constant(Detector::PNR, 2, 1, 0.0);
  const Grid g = sample_grid(5, -1, 1, [](double) { return 0.0; });
  const TrainedModel model = train(spec, obs, g.x, g.y, {});
  ASSERT_FALSE(model.history.empty());
  EXPECT_EQ(model.history.front().evaluation, 1);
  EXPECT_EQ(model.history.front().cost, 0.0);
  EXPECT_EQ(model.final_cost, 0.0);
  EXPECT_TRUE(model.converged);
}

TEST(Train, FitsDegreeOneSeries) {
  const auto target = [](double x) { return 0.3 + 0.8 * std::cos(x) - 0.5 * std::sin(x); };
  const Grid g = sample_grid(30, -kPi, kPi, target);
  const auto spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  const auto obs = Observable::constant(Detector::PNR, 2, 1, 0.0);
  TrainConfig config;
  config.restarts = 4;
  config.seed = 3;
  config.max_evals = 3000;
  const TrainedModel model = train(spec, obs, g.x, g.y, config);
  EXPECT_LT(model.final_cost, 1e-8);
  // Stored parameters reproduce the stored cost exactly.
  EXPECT_EQ(cost(model.spec, model.obs, g.x, g.y, config.alpha), model.final_cost);
  for (std::size_t i = 1; i < model.history.size(); ++i) {
    EXPECT_LT(model.history[i].cost, model.history[i - 1].cost);
    EXPECT_GT(model.history[i].evaluation, model.history[i - 1].evaluation);
  }
  EXPECT_EQ(model.history.back().cost, model.final_cost);
}

TEST(Train, DeterministicAndThreadIndependent) {
  const Grid g = sample_grid(12, -2, 2, [](double x) { return std::cos(2 * x); });
  const auto spec = CircuitSpec::with_zero_meshes(2, {1, 1}, EncodingLayout::single());
  const auto obs = Observable::constant(Detector::PNR, 2, 2, 0.0);
  TrainConfig config;
  config.restarts = 3;
  config.max_evals = 300;
  config.seed = 11;
  const TrainedModel a = train(spec, obs, g.x, g.y, config);
  config.threads = 3;
  const TrainedModel b = train(spec, obs, g.x, g.y, config);
  EXPECT_EQ(a.final_cost, b.final_cost);
  EXPECT_EQ(pack_parameters(a.spec, a.obs), pack_parameters(b.spec, b.obs));
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Train, RespectsBounds) {
  const Grid g = sample_grid(10, -1, 1, [](double) { return 100.0; });
  const auto spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  const auto obs = Observable::constant(Detector::PNR, 2, 1, 0.0);
  TrainConfig config;
  config.max_evals = 200;
  config.weight_bound = 2.0;
  const TrainedModel model = train(spec, obs, g.x, g.y, config);
  for (double w : model.obs.weights) EXPECT_LE(std::abs(w), 2.0);
  for (const auto& mesh : model.spec.meshes) {
    for (double a : mesh.angles()) EXPECT_LE(std::abs(a), kPi);
  }
}

TEST(Train, RegularizationShrinksWeightsOnAverage) {
  const auto target = [](double x) { return 1.5 * std::cos(x) + 0.4; };
  const Grid g = sample_grid(20, -kPi, kPi, target);
  const auto spec = CircuitSpec::with_zero_meshes(2, {1, 1}, EncodingLayout::single());
  const auto obs = Observable::constant(Detector::PNR, 2, 2, 0.0);
  std::vector<double> mean_norm;
  for (double alpha : {0.0, 0.1, 0.2}) {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      TrainConfig config;
      config.alpha = alpha;
      config.seed = seed;
      config.restarts = 2;
      config.max_evals = 800;
      const TrainedModel model = train(spec, obs, g.x, g.y, config);
      for (double w : model.obs.weights) total += w * w;
    }
    mean_norm.push_back(total / 5.0);
  }
  EXPECT_GE(mean_norm[0], mean_norm[1]);
  EXPECT_GE(mean_norm[1], mean_norm[2]);
}

TEST(Classify, SignConvention) {
  EXPECT_EQ(classify_value(0.3), 1);
  EXPECT_EQ(classify_value(-0.3), -1);
  EXPECT_EQ(classify_value(0.0), 1);
}

TEST(Accuracy, AllCorrectAndFlipped) {
  TrainedModel model;
  model.spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  model.obs = Observable{Detector::PNR, 2, 1, {1.0, -1.0}};
  // Zero meshes: the photon stays in mode 0, so f = +1 everywhere.
  DataMatrix x(4, 1);
  x << 0.1, 0.5, -2.0, 3.0;
  Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
  EXPECT_EQ(accuracy(model, x, y), 1.0);
  EXPECT_EQ(accuracy(model, x, -y), 0.0);
}

TEST(Accuracy, TrivialModelOnBalancedRandomLabels) {
  TrainedModel model;
  model.spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  model.obs = Observable{Detector::PNR, 2, 1, {1.0, 1.0}};
  Rng rng(101);
  const int n = 2000;
  DataMatrix x = DataMatrix::Zero(n, 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.uniform() < 0.5 ? 1.0 : -1.0;
  EXPECT_NEAR(accuracy(model, x, y), 0.5, 0.05);
}

}  // namespace
}  // namespace fockml
