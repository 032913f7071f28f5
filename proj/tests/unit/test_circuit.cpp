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

#include "fockml/circuit.hpp"
#include "test_util.hpp"

namespace fockml {
namespace {

TEST(Reck, ZeroAnglesGiveIdentity) {
  for (int m = 1; m <= 5; ++m) {
    const ComplexMatrix u = reck_unitary(MeshParams::zeros(m), m);
    EXPECT_LT((u - ComplexMatrix::Identity(m, m)).norm(), 1e-15);
  }
}

TEST(Reck, TwoModeClosedForm) {
  const double theta = 0.7, phi = -1.3;
  const ComplexMatrix u = reck_unitary(MeshParams({theta, phi}), 2);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix expected(2, 2);
  expected << e * std::cos(theta), -std::sin(theta), e * std::sin(theta), std::cos(theta);
  EXPECT_LT((u - expected).norm(), 1e-15);
  EXPECT_LT(unitarity_deviation(u), 1e-15);
}

TEST(Reck, RandomMeshesAreUnitary) {
  Rng rng(21);
  for (int m = 2; m <= 6; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const MeshParams params(testing_util::random_angles(rng, MeshParams::count_for(m)));
      EXPECT_LT(unitarity_deviation(reck_unitary(params, m)), 1e-12);
    }
  }
}

TEST(Reck, BlockOrderCoversEveryAngleOnce) {
  for (int m = 2; m <= 6; ++m) {
    const auto blocks = reck_block_order(m);
    ASSERT_EQ(blocks.size(), static_cast<std::size_t>(m * (m - 1) / 2));
    std::vector<int> seen(MeshParams::count_for(m), 0);
    for (const auto& block : blocks) {
      EXPECT_GE(block.top_mode, 0);
      EXPECT_LT(block.top_mode + 1, m);
      ++seen[block.theta_index];
      ++seen[block.phi_index];
    }
    for (int count : seen) EXPECT_EQ(count, 1);
  }
}

TEST(Reck, RejectsWrongParameterCount) {
  EXPECT_THROW(reck_unitary(MeshParams({0.1, 0.2, 0.3}), 3), ConfigError);
}

TEST(Encoding, SingleAtZeroIsIdentity) {
  const double x = 0.0;
  const ComplexMatrix s = encoding_unitary({&x, 1}, EncodingLayout::single(), 0, 3);
  EXPECT_LT((s - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(Encoding, SingleAtPi) {
  const double x = kPi;
  const ComplexMatrix s = encoding_unitary({&x, 1}, EncodingLayout::single(), 0, 3);
  EXPECT_NEAR(s(0, 0).real(), -1.0, 1e-15);
  EXPECT_NEAR(s(0, 0).imag(), 0.0, 1e-15);
  EXPECT_EQ(s(1, 1), Complex(1.0));
  EXPECT_EQ(s(2, 2), Complex(1.0));
  EXPECT_EQ(s(0, 1), Complex(0.0));
}

TEST(Encoding, Series1DPhases) {
  const double x = 0.37;
  const ComplexMatrix s =
      encoding_unitary({&x, 1}, EncodingLayout::series_1d(3), 0, 3);
  EXPECT_LT(std::abs(s(0, 0) - std::polar(1.0, x)), 1e-15);
  EXPECT_LT(std::abs(s(1, 1) - std::polar(1.0, 2 * x)), 1e-15);
  EXPECT_EQ(s(2, 2), Complex(1.0));
}

TEST(Encoding, Parallel1DLayers) {
  const auto layout = EncodingLayout::parallel_1d(4);
  EXPECT_EQ(layout.layer_count(), 3u);
  EXPECT_DOUBLE_EQ(layout.frequency_multiplier(0), 3.0);
}

TEST(Encoding, SeriesMultiDHasAllSubsetSums) {
  const auto layout = EncodingLayout::series_multi_d(3);
  ASSERT_EQ(layout.layers.size(), 1u);
  EXPECT_EQ(layout.layers[0].size(), 7u);
  EXPECT_EQ(layout.min_modes(), 7);
  const std::vector<double> x{0.1, 0.2, 0.4};
  const ComplexVector phases = encoding_phases(x, layout, 0, 7);
  EXPECT_LT(std::abs(phases[6] - std::polar(1.0, 0.7)), 1e-15);  // mask 0b111
  EXPECT_LT(std::abs(phases[4] - std::polar(1.0, 0.5)), 1e-15);  // mask 0b101
}

TEST(Encoding, ParallelMultiDLayers) {
  const auto layout = EncodingLayout::parallel_multi_d(2);
  ASSERT_EQ(layout.layer_count(), 2u);
  const std::vector<double> x{0.3, -0.8};
  EXPECT_LT(std::abs(encoding_phases(x, layout, 1, 3)[0] - std::polar(1.0, -0.8)), 1e-15);
}

TEST(Encoding, RejectsDimensionMismatch) {
  const std::vector<double> x{0.1, 0.2};
  EXPECT_THROW(encoding_unitary(x, EncodingLayout::single(), 0, 3), ConfigError);
  EXPECT_THROW(encoding_unitary(x, EncodingLayout::per_feature(2), 1, 3), ConfigError);
}

TEST(Encoding, VariantNamesRoundTrip) {
  for (auto v : {EncodingVariant::Single, EncodingVariant::Series1D,
                 EncodingVariant::Parallel1D, EncodingVariant::SeriesMultiD,
                 EncodingVariant::ParallelMultiD, EncodingVariant::PerFeature}) {
    EXPECT_EQ(parse_encoding_variant(to_string(v)), v);
  }
  EXPECT_THROW(parse_encoding_variant("zigzag"), ConfigError);
}

TEST(ModeUnitary, ZeroMeshesGiveEncodingOnly) {
  const auto spec = CircuitSpec::with_zero_meshes(3, {1, 1, 0}, EncodingLayout::single());
  const double x = 1.1;
  EXPECT_LT((mode_unitary(spec, {&x, 1}) -
             encoding_unitary({&x, 1}, spec.layout, 0, 3)).norm(), 1e-15);
}

TEST(ModeUnitary, AtZeroIsProductOfMeshes) {
  Rng rng(23);
  const auto spec = testing_util::random_spec(rng, 3, {1, 1, 1}, EncodingLayout::parallel_1d(3));
  const double x = 0.0;
  ComplexMatrix expected = ComplexMatrix::Identity(3, 3);
  for (const auto& mesh : spec.meshes) expected = reck_unitary(mesh, 3) * expected;
  EXPECT_LT((mode_unitary(spec, {&x, 1}) - expected).norm(), 1e-14);
}

TEST(ModeUnitary, RandomSpecIsUnitary) {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = testing_util::random_spec(rng, 4, {1, 0, 1, 0},
                                                EncodingLayout::series_1d(4));
    const double x = rng.uniform(-5, 5);
    EXPECT_LT(unitarity_deviation(mode_unitary(spec, {&x, 1})), 1e-12);
  }
}

TEST(ModeUnitary, FeatureScaling) {
  auto spec = CircuitSpec::with_zero_meshes(2, {1, 0}, EncodingLayout::single());
  spec.feature_scale = {2.0};
  spec.feature_offset = {0.5};
  const double x = 0.25;
  EXPECT_LT(std::abs(mode_unitary(spec, {&x, 1})(0, 0) - std::polar(1.0, 1.0)), 1e-15);
}

TEST(CircuitSpec, ValidateCatchesInconsistency) {
  auto spec = CircuitSpec::with_zero_meshes(3, {1, 1, 0}, EncodingLayout::single());
  spec.meshes.pop_back();
  EXPECT_THROW(spec.validate(), ConfigError);
  EXPECT_THROW(CircuitSpec::with_zero_meshes(2, {1, 1, 0}, EncodingLayout::single()),
               ConfigError);
  EXPECT_THROW(CircuitSpec::with_zero_meshes(2, {1, 1}, EncodingLayout::series_multi_d(2)),
               ConfigError);
}

}  // namespace
}  // namespace fockml
