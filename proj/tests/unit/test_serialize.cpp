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

#include "fockml/serialize.hpp"
#include "test_util.hpp"

namespace fockml {
namespace {

TEST(Serialize, CircuitSpecRoundTrip) {
  Rng rng(113);
  auto spec = testing_util::random_spec(rng, 3, {2, 2, 1}, EncodingLayout::per_feature(2));
  spec.feature_scale = {0.5, 2.0};
  spec.feature_offset = {kPi, 0.1};
  const CircuitSpec back = circuit_spec_from_json(circuit_spec_to_json(spec));
  EXPECT_EQ(back.modes, spec.modes);
  EXPECT_EQ(back.input, spec.input);
  EXPECT_EQ(back.layout.variant, spec.layout.variant);
  EXPECT_EQ(back.feature_scale, spec.feature_scale);
  EXPECT_EQ(back.feature_offset, spec.feature_offset);
  ASSERT_EQ(back.meshes.size(), spec.meshes.size());
  for (std::size_t i = 0; i < spec.meshes.size(); ++i) {
    EXPECT_TRUE(std::ranges::equal(back.meshes[i].angles(), spec.meshes[i].angles()));
  }
  const std::vector<double> x{0.3, -1.2};
  EXPECT_EQ(mode_unitary(back, x), mode_unitary(spec, x));
}

TEST(Serialize, RejectsInconsistentSpec) {
  EXPECT_THROW(circuit_spec_from_json("{"), ConfigError);
  EXPECT_THROW(circuit_spec_from_json("{}"), ConfigError);
  auto spec = CircuitSpec::with_zero_meshes(3, {1, 1, 0}, EncodingLayout::single());
  std::string text = circuit_spec_to_json(spec);
  text.replace(text.find("\"modes\": 3"), 10, "\"modes\": 4");
  EXPECT_THROW(circuit_spec_from_json(text), ConfigError);
}

TEST(Serialize, TrainedModelRoundTrip) {
  Rng rng(127);
  TrainedModel model;
  model.spec = testing_util::random_spec(rng, 3, {1, 1, 1}, EncodingLayout::single());
  model.obs = testing_util::random_observable(rng, Detector::Threshold, 3, 3);
  model.config.alpha = 0.2;
  model.config.seed = 12345678901234567ull;
  model.config.restarts = 7;
  model.history = {{1, 3.5}, {4, 0.1 + 0.2}};
  model.final_cost = 0.1 + 0.2;
  model.converged = true;
  model.evaluations = 99;
  model.best_restart = 3;
  const TrainedModel back = trained_model_from_json(trained_model_to_json(model));
  EXPECT_EQ(back.final_cost, model.final_cost);
  EXPECT_EQ(back.obs.weights, model.obs.weights);
  EXPECT_EQ(back.obs.detector, Detector::Threshold);
  EXPECT_EQ(back.config.seed, model.config.seed);
  EXPECT_EQ(back.config.alpha, 0.2);
  EXPECT_EQ(back.config.restarts, 7);
  EXPECT_EQ(back.history.size(), 2u);
  EXPECT_EQ(back.history[1].cost, model.history[1].cost);
  EXPECT_EQ(back.best_restart, 3);
  EXPECT_EQ(trained_model_to_json(back), trained_model_to_json(model));
}

TEST(Serialize, KernelObservableRoundTrip) {
  const KernelObservable obs{3, 0.5, {0.1, -0.2, 1.0 / 3.0, 7.0}, 200, 0.01, 0.005};
  const KernelObservable back = kernel_observable_from_json(kernel_observable_to_json(obs));
  EXPECT_EQ(back.weights, obs.weights);
  EXPECT_EQ(back.sigma, obs.sigma);
  EXPECT_THROW(kernel_observable_from_json(R"({"photons": 3, "sigma": 1, "weights": [1]})"),
               ConfigError);
}

TEST(Serialize, FeatureSetRoundTrip) {
  const auto fs = sample_feature_set(7, 3, 0.75, 4, 99);
  const auto back = feature_set_from_json(feature_set_to_json(fs));
  EXPECT_EQ(back.w, fs.w);
  EXPECT_EQ(back.b, fs.b);
  EXPECT_EQ(back.gamma, fs.gamma);
  EXPECT_EQ(back.k, fs.k);
  EXPECT_EQ(back.seed, fs.seed);
}

TEST(Serialize, DatasetMetadata) {
  LabeledDataset d = make_circles(20, 31, 0.07, 0.4);
  LabeledDataset blank;
  apply_dataset_metadata(dataset_metadata_to_json(d), blank);
  EXPECT_EQ(blank.name, "circles");
  EXPECT_EQ(blank.seed, 31u);
  EXPECT_EQ(blank.noise, 0.07);
  EXPECT_EQ(blank.factor, 0.4);
}

}  // namespace
}  // namespace fockml
