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

#include <map>
#include <numeric>

#include "fockml/model.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace fockml {
namespace {

using testing_util::first_state;
using testing_util::random_observable;
using testing_util::random_spec;

TEST(Detector, Names) {
  EXPECT_EQ(parse_detector(to_string(Detector::PNR)), Detector::PNR);
  EXPECT_EQ(parse_detector(to_string(Detector::Threshold)), Detector::Threshold);
  EXPECT_THROW(parse_detector("photodiode"), ConfigError);
}

TEST(ClickPatterns, Counts) {
  EXPECT_EQ(group_by_clicks(FockBasis(3, 3)).size(), 7u);
  EXPECT_EQ(group_by_clicks(FockBasis(2, 1)).size(), 2u);
  EXPECT_EQ(group_by_clicks(FockBasis(3, 1)).size(), 3u);
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 5; ++n) {
      std::uint64_t expected = 0;
      for (int k = 1; k <= std::min(n, m); ++k) expected += binomial(m, k);
      EXPECT_EQ(group_by_clicks(FockBasis(m, n)).size(), expected);
    }
  }
}

TEST(ClickPatterns, FirstOccurrenceOrder) {
  const auto partition = group_by_clicks(FockBasis(2, 2));
  // (2,0), (1,1), (0,2)
  ASSERT_EQ(partition.patterns.size(), 3u);
  EXPECT_EQ(partition.patterns[0], 0b01u);
  EXPECT_EQ(partition.patterns[1], 0b11u);
  EXPECT_EQ(partition.patterns[2], 0b10u);
  EXPECT_EQ(partition.pattern_of_state, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Observable, WeightCountAndValidation) {
  EXPECT_EQ(Observable::weight_count(Detector::PNR, 3, 3), 10u);
  EXPECT_EQ(Observable::weight_count(Detector::Threshold, 3, 3), 7u);
  Observable obs = Observable::constant(Detector::PNR, 3, 2, 1.0);
  obs.weights.pop_back();
  EXPECT_THROW(obs.validate(), ConfigError);
}

TEST(EvaluateModel, NormalizationAndZero) {
  Rng rng(31);
  for (Detector detector : {Detector::PNR, Detector::Threshold}) {
    const auto spec = random_spec(rng, 3, {1, 1, 1}, EncodingLayout::single());
    const double x = 0.83;
    EXPECT_NEAR(evaluate_model(spec, Observable::constant(detector, 3, 3, 1.0), {&x, 1}),
                1.0, 1e-12);
    EXPECT_EQ(evaluate_model(spec, Observable::constant(detector, 3, 3, 0.0), {&x, 1}), 0.0);
  }
}

TEST(EvaluateModel, RejectsMismatch) {
  const auto spec = CircuitSpec::with_zero_meshes(3, {1, 1, 0}, EncodingLayout::single());
  const double x = 0.0;
  EXPECT_THROW(evaluate_model(spec, Observable::constant(Detector::PNR, 3, 3, 1.0), {&x, 1}),
               ConfigError);
  const std::vector<double> two{0.0, 0.0};
  EXPECT_THROW(evaluate_model(spec, Observable::constant(Detector::PNR, 3, 2, 1.0), two),
               ConfigError);
}

TEST(EvaluateModel, ProbabilitiesSumToOne) {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + static_cast<int>(rng.index(3));
    const int n = 1 + static_cast<int>(rng.index(4));
    const auto spec = random_spec(rng, m, first_state(m, n), EncodingLayout::parallel_1d(m));
    const QuantumModel model(spec, Observable::constant(Detector::PNR, m, n, 0.0));
    const double x = rng.uniform(-10, 10);
    EXPECT_NEAR(model.probabilities(spec, {&x, 1}).sum(), 1.0, 1e-10);
  }
}

TEST(EvaluateModel, ThresholdEqualsExpandedPnr) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = random_spec(rng, 3, {2, 1, 0}, EncodingLayout::single());
    const Observable thr = random_observable(rng, Detector::Threshold, 3, 3);
    Observable pnr = Observable::constant(Detector::PNR, 3, 3, 0.0);
    pnr.weights = thr.state_weights(FockBasis(3, 3));
    const double x = rng.uniform(-3, 3);
    EXPECT_NEAR(evaluate_model(spec, thr, {&x, 1}), evaluate_model(spec, pnr, {&x, 1}),
                1e-12);
  }
}

TEST(Fourier, ConstantModel) {
  Rng rng(43);
  const auto spec = random_spec(rng, 3, {1, 1, 0}, EncodingLayout::single());
  const auto c = extract_fourier_coefficients(
      spec, Observable::constant(Detector::PNR, 3, 2, 0.7), 4);
  EXPECT_NEAR(c.at(0).real(), 0.7, 1e-10);
  EXPECT_NEAR(c.at(0).imag(), 0.0, 1e-10);
  for (int w = 1; w <= 4; ++w) {
    EXPECT_LT(std::abs(c.at(w)), 1e-10);
    EXPECT_LT(std::abs(c.at(-w)), 1e-10);
  }
}

TEST(Fourier, ReconstructsModel) {
  Rng rng(47);
  const auto spec = random_spec(rng, 3, {1, 1, 1}, EncodingLayout::single());
  const auto obs = random_observable(rng, Detector::PNR, 3, 3);
  const auto c = extract_fourier_coefficients(spec, obs, band_limit(spec));
  for (int i = 0; i < 25; ++i) {
    const double x = rng.uniform(-10, 10);
    EXPECT_NEAR(c.evaluate(x), evaluate_model(spec, obs, {&x, 1}), 1e-8);
  }
}

TEST(Fourier, ConjugateSymmetry) {
  Rng rng(53);
  const auto spec = random_spec(rng, 3, {1, 1, 0}, EncodingLayout::series_1d(3));
  const auto c = extract_fourier_coefficients(
      spec, random_observable(rng, Detector::Threshold, 3, 2), 6);
  for (int w = 0; w <= 6; ++w) EXPECT_LT(std::abs(c.at(-w) - std::conj(c.at(w))), 1e-10);
}

TEST(Fourier, IgnoresFeatureScaling) {
  Rng rng(59);
  auto spec = random_spec(rng, 2, {1, 1}, EncodingLayout::single());
  const auto obs = random_observable(rng, Detector::PNR, 2, 2);
  const auto plain = extract_fourier_coefficients(spec, obs, 3);
  spec.feature_scale = {3.0};
  const auto scaled = extract_fourier_coefficients(spec, obs, 3);
  for (int w = -3; w <= 3; ++w) EXPECT_LT(std::abs(plain.at(w) - scaled.at(w)), 1e-14);
}

TEST(Fourier, MatchesMatrixElementOracle) {
  Rng rng(61);
  for (int trial = 0; trial < 3; ++trial) {
    const auto spec = random_spec(rng, 3, {1, 1, 0}, EncodingLayout::single());
    const auto obs = random_observable(rng, Detector::PNR, 3, 2);
    const FockBasis basis(3, 2);
    std::map<oracle::Occupation, double> weights;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      weights[{basis[a].occupations().begin(), basis[a].occupations().end()}] =
          obs.weights[a];
    }
    const auto expected = oracle::matrix_element_coefficients(
        reck_unitary(spec.meshes[0], 3), reck_unitary(spec.meshes[1], 3), {1, 1, 0},
        weights);
    const auto c = extract_fourier_coefficients(spec, obs, 2);
    for (int w = -2; w <= 2; ++w) {
      EXPECT_LT(std::abs(c.at(w) - expected[w + 2]), 1e-12) << "omega=" << w;
    }
  }
}

TEST(Fourier, TensorMatchesOneDimensional) {
  Rng rng(67);
  const auto spec = random_spec(rng, 3, {1, 1, 0}, EncodingLayout::single());
  const auto obs = random_observable(rng, Detector::PNR, 3, 2);
  const auto c = extract_fourier_coefficients(spec, obs, 3);
  const auto t = extract_fourier_tensor(spec, obs, 3);
  for (int w = -3; w <= 3; ++w) {
    const int idx[1] = {w};
    EXPECT_LT(std::abs(c.at(w) - t.at(idx)), 1e-12);
  }
}

TEST(Fourier, PerFeatureSpectrumIsTriangle) {
  Rng rng(71);
  const int n = 2;
  const auto spec = random_spec(rng, 3, {1, 1, 0}, EncodingLayout::per_feature(2));
  const auto obs = random_observable(rng, Detector::PNR, 3, n);
  const auto t = extract_fourier_tensor(spec, obs, 3);
  double inside = 0.0;
  for (int w1 = -3; w1 <= 3; ++w1) {
    for (int w2 = -3; w2 <= 3; ++w2) {
      const int idx[2] = {w1, w2};
      const bool allowed = std::max(w1, 0) + std::max(w2, 0) <= n &&
                           std::max(-w1, 0) + std::max(-w2, 0) <= n;
      if (allowed) {
        inside = std::max(inside, std::abs(t.at(idx)));
      } else {
        EXPECT_LT(std::abs(t.at(idx)), 1e-10) << w1 << "," << w2;
      }
    }
  }
  EXPECT_GT(inside, 1e-6);
}

TEST(Dof, Formulas) {
  for (int n = 0; n <= 15; ++n) {
    EXPECT_EQ(dof_pnr(3, n), 12u + static_cast<std::uint64_t>((n + 2) * (n + 1) / 2));
  }
  EXPECT_EQ(dof_pnr(3, 3), 22u);
  EXPECT_EQ(dof_pnr(2, 1), 6u);
  EXPECT_EQ(dof_threshold(3, 1), 15u);
  for (int n = 3; n <= 15; ++n) EXPECT_EQ(dof_threshold(3, n), 19u);
  EXPECT_EQ(m_min(0), 1u);
  EXPECT_EQ(m_min(3), 7u);
  EXPECT_EQ(m_min(9), 19u);
  for (int n = 1; n <= 15; ++n) EXPECT_EQ(dof_threshold(3, n) >= m_min(n), n <= 9);
}

TEST(Dof, PnrMatchesParameterCount) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) {
      EXPECT_EQ(dof_pnr(m, n), 2 * MeshParams::count_for(m) +
                                   Observable::weight_count(Detector::PNR, m, n));
    }
  }
}

TEST(Sampling, DeterministicAndConsistent) {
  Rng rng(73);
  const auto spec = random_spec(rng, 3, {1, 1, 0}, EncodingLayout::single());
  const double x = 0.4;
  const auto a = sample_counts(spec, {&x, 1}, 1000, 5);
  const auto b = sample_counts(spec, {&x, 1}, 1000, 5);
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::accumulate(a.begin(), a.end(), std::uint64_t{0}), 1000u);
  EXPECT_THROW(sample_counts(spec, {&x, 1}, 0, 5), ConfigError);
}

TEST(Sampling, CertainOutcome) {
  const auto spec = CircuitSpec::with_zero_meshes(3, {1, 1, 0}, EncodingLayout::single());
  const double x = 1.0;
  const auto counts = sample_counts(spec, {&x, 1}, 500, 1);
  const std::size_t idx = FockBasis(3, 2).index_of({1, 1, 0});
  for (std::size_t a = 0; a < counts.size(); ++a) EXPECT_EQ(counts[a], a == idx ? 500u : 0u);
}

TEST(Sampling, ConvergesToExactProbabilities) {
  Rng rng(79);
  const auto spec = random_spec(rng, 3, {1, 1, 0}, EncodingLayout::single());
  const double x = -0.9;
  const std::uint64_t shots = 1'000'000;
  const auto counts = sample_counts(spec, {&x, 1}, shots, 99);
  const QuantumModel model(spec, Observable::constant(Detector::PNR, 3, 2, 0.0));
  const Eigen::VectorXd p = model.probabilities(spec, {&x, 1});
  for (std::size_t a = 0; a < counts.size(); ++a) {
    EXPECT_LT(std::abs(static_cast<double>(counts[a]) / shots - p[static_cast<Eigen::Index>(a)]),
              5e-3);
  }
}

}  // namespace
}  // namespace fockml
