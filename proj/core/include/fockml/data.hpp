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

// Toy binary-classification datasets and train/test splits.
//
// linear:  points from two Gaussian blobs (std 0.4) centred at +-(0.5, 0.5),
//          each kept only if it falls on its own side of x1 + x2 = 0, so
//          the clean set is separable by that line; label = side.
// circles: n_out points on the unit circle (label -1) and n_in on the
//          circle of radius `factor` (label +1), equally spaced in angle.
// moons:   upper arc (cos t, sin t), t in [0, pi] (label -1) and lower arc
//          (1 - cos t, 0.5 - sin t) (label +1).
// Every generator adds N(0, noise^2) jitter to each coordinate and
// shuffles the rows; all randomness comes from Rng(seed).

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

#include "fockml/types.hpp"

namespace fockml {

struct LabeledDataset {
  std::string name;
  DataMatrix x;
  Eigen::VectorXd y;  ///< labels in {-1, +1}
  std::uint64_t seed = 0;
  double noise = 0.0;
  double factor = 0.0;  ///< circles only

  Eigen::Index size() const { return x.rows(); }
};

LabeledDataset make_linear(int n, std::uint64_t seed, double noise);
LabeledDataset make_circles(int n, std::uint64_t seed, double noise,
                            double factor = 0.5);
LabeledDataset make_moons(int n, std::uint64_t seed, double noise);

/// Dispatches on "linear", "circles" or "moons" (default noise/factor per
/// generator when the arguments are negative).
LabeledDataset make_dataset(const std::string& name, int n, std::uint64_t seed,
                            double noise);

/// Disjoint stratified split. Each class contributes to train and test in
/// proportion to its share of the data.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                int n_train, int n_test,
                                                std::uint64_t seed);

/// CSV with header x1,...,xD,label.
void write_csv(const LabeledDataset& data, const std::filesystem::path& path);
LabeledDataset read_csv(const std::filesystem::path& path);

/// Default noise levels.
inline constexpr double kMoonsNoise = 0.1;
inline constexpr double kCirclesNoise = 0.05;
inline constexpr double kLinearNoise = 0.0;

}  // namespace fockml
