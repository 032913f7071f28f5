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

#include "fockml/data.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "fockml/rng.hpp"

namespace fockml {

namespace {

void check_size(int n) {
  if (n < 2) throw ConfigError("dataset: need at least 2 points");
}

// Adds jitter, then applies one seeded permutation to the rows.
LabeledDataset finish(std::string name, std::vector<double> coords,
                      std::vector<double> labels, Rng& rng, std::uint64_t seed,
                      double noise) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (noise > 0.0) {
    for (double& c : coords) c += noise * rng.normal();
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);

  LabeledDataset data;
  data.name = std::move(name);
  data.seed = seed;
  data.noise = noise;
  data.x.resize(n, 2);
  data.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto src = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
    data.x(i, 0) = coords[2 * src];
    data.x(i, 1) = coords[2 * src + 1];
    data.y[i] = labels[src];
  }
  return data;
}

}  // namespace

LabeledDataset make_linear(int n, std::uint64_t seed, double noise) {
  check_size(n);
  if (noise < 0.0) throw ConfigError("dataset: noise must be >= 0");
  Rng rng(seed);
  std::vector<double> coords;
  std::vector<double> labels;
  const double centre = 0.5;
  const double spread = 0.4;
  for (int i = 0; i < n; ++i) {
    const double label = (i % 2 == 0) ? 1.0 : -1.0;
    double a = 0.0, b = 0.0;
    do {
      a = label * centre + spread * rng.normal();
      b = label * centre + spread * rng.normal();
    } while (label * (a + b) <= 0.0);
    coords.push_back(a);
    coords.push_back(b);
    labels.push_back(label);
  }
  return finish("linear", std::move(coords), std::move(labels), rng, seed, noise);
}

LabeledDataset make_circles(int n, std::uint64_t seed, double noise,
                            double factor) {
  check_size(n);
  if (noise < 0.0) throw ConfigError("dataset: noise must be >= 0");
  if (!(factor > 0.0 && factor < 1.0)) {
    throw ConfigError("circles: factor must lie in (0, 1)");
  }
  Rng rng(seed);
  const int n_out = n / 2;
  const int n_in = n - n_out;
  std::vector<double> coords;
  std::vector<double> labels;
  for (int i = 0; i < n_out; ++i) {
    const double t = kTwoPi * i / n_out;
    coords.push_back(std::cos(t));
    coords.push_back(std::sin(t));
    labels.push_back(-1.0);
  }
  for (int i = 0; i < n_in; ++i) {
    const double t = kTwoPi * i / n_in;
    coords.push_back(factor * std::cos(t));
    coords.push_back(factor * std::sin(t));
    labels.push_back(1.0);
  }
  LabeledDataset data =
      finish("circles", std::move(coords), std::move(labels), rng, seed, noise);
  data.factor = factor;
  return data;
}

LabeledDataset make_moons(int n, std::uint64_t seed, double noise) {
  check_size(n);
  if (noise < 0.0) throw ConfigError("dataset: noise must be >= 0");
  Rng rng(seed);
  const int n_out = n / 2;
  const int n_in = n - n_out;
  std::vector<double> coords;
  std::vector<double> labels;
  for (int i = 0; i < n_out; ++i) {
    const double t = n_out > 1 ? kPi * i / (n_out - 1) : 0.0;
    coords.push_back(std::cos(t));
    coords.push_back(std::sin(t));
    labels.push_back(-1.0);
  }
  for (int i = 0; i < n_in; ++i) {
    const double t = n_in > 1 ? kPi * i / (n_in - 1) : 0.0;
    coords.push_back(1.0 - std::cos(t));
    coords.push_back(0.5 - std::sin(t));
    labels.push_back(1.0);
  }
  return finish("moons", std::move(coords), std::move(labels), rng, seed, noise);
}

LabeledDataset make_dataset(const std::string& name, int n, std::uint64_t seed,
                            double noise) {
  if (name == "linear") return make_linear(n, seed, noise < 0 ? kLinearNoise : noise);
  if (name == "circles" || name == "circle") {
    return make_circles(n, seed, noise < 0 ? kCirclesNoise : noise);
  }
  if (name == "moons" || name == "moon") {
    return make_moons(n, seed, noise < 0 ? kMoonsNoise : noise);
  }
  throw ConfigError("unknown dataset '" + name +
                    "' (expected linear, circles or moons)");
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                int n_train, int n_test,
                                                std::uint64_t seed) {
  if (n_train < 1 || n_test < 0) throw ConfigError("split: invalid sizes");
  if (n_train + n_test > data.size()) {
    throw ConfigError("split: " + std::to_string(n_train + n_test) +
                      " points requested from a dataset of " +
                      std::to_string(data.size()));
  }
  Rng rng(seed);
  std::vector<Eigen::Index> positive, negative;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    (data.y[i] >= 0.0 ? positive : negative).push_back(i);
  }
  rng.shuffle(positive);
  rng.shuffle(negative);

  const double share = static_cast<double>(positive.size()) /
                       static_cast<double>(data.size());
  auto take = [&](int total, std::size_t pos_available, std::size_t neg_available) {
    auto pos = static_cast<std::size_t>(std::lround(share * total));
    pos = std::min(pos, pos_available);
    if (total - static_cast<int>(pos) > static_cast<int>(neg_available)) {
      pos = static_cast<std::size_t>(total) - neg_available;
    }
    return pos;
  };
  const std::size_t train_pos = take(n_train, positive.size(), negative.size());
  const std::size_t train_neg = static_cast<std::size_t>(n_train) - train_pos;
  const std::size_t test_pos =
      take(n_test, positive.size() - train_pos, negative.size() - train_neg);
  const std::size_t test_neg = static_cast<std::size_t>(n_test) - test_pos;

  auto gather = [&](const std::string& suffix, std::size_t pos_from,
                    std::size_t pos_count, std::size_t neg_from,
                    std::size_t neg_count) {
    std::vector<Eigen::Index> rows;
    rows.insert(rows.end(), positive.begin() + static_cast<std::ptrdiff_t>(pos_from),
                positive.begin() + static_cast<std::ptrdiff_t>(pos_from + pos_count));
    rows.insert(rows.end(), negative.begin() + static_cast<std::ptrdiff_t>(neg_from),
                negative.begin() + static_cast<std::ptrdiff_t>(neg_from + neg_count));
    rng.shuffle(rows);
    LabeledDataset out;
    out.name = data.name + suffix;
    out.seed = data.seed;
    out.noise = data.noise;
    out.factor = data.factor;
    out.x.resize(static_cast<Eigen::Index>(rows.size()), data.x.cols());
    out.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.x.row(static_cast<Eigen::Index>(i)) = data.x.row(rows[i]);
      out.y[static_cast<Eigen::Index>(i)] = data.y[rows[i]];
    }
    return out;
  };
  return {gather("/train", 0, train_pos, 0, train_neg),
          gather("/test", train_pos, test_pos, train_neg, test_neg)};
}

void write_csv(const LabeledDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (Eigen::Index d = 0; d < data.x.cols(); ++d) out << 'x' << d + 1 << ',';
  out << "label\n";
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index d = 0; d < data.x.cols(); ++d) out << data.x(i, d) << ',';
    out << (data.y[i] >= 0.0 ? 1 : -1) << '\n';
  }
}

LabeledDataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file");
  Eigen::Index columns = 1;
  for (char c : line) columns += c == ',';
  if (columns < 2) throw ConfigError(path.string() + ": need features and label");

  std::vector<double> values;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    Eigen::Index count = 0;
    while (std::getline(fields, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw ConfigError(path.string() + ": bad number '" + field + "'");
      }
      ++count;
    }
    if (count != columns) {
      throw ConfigError(path.string() + ": row " + std::to_string(rows + 1) +
                        " has " + std::to_string(count) + " fields");
    }
    ++rows;
  }
  LabeledDataset data;
  data.name = path.stem().string();
  data.x.resize(rows, columns - 1);
  data.y.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index d = 0; d + 1 < columns; ++d) {
      data.x(i, d) = values[static_cast<std::size_t>(i * columns + d)];
    }
    data.y[i] = values[static_cast<std::size_t>(i * columns + columns - 1)];
  }
  return data;
}

}  // namespace fockml
