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
#include <filesystem>
#include <fstream>
#include <set>

#include "fockml/data.hpp"

namespace fockml {
namespace {

int positives(const LabeledDataset& d) {
  int count = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) count += d.y[i] > 0;
  return count;
}

TEST(Linear, SeparableAndBalanced) {
  const LabeledDataset d = make_linear(200, 5, 0.0);
  EXPECT_EQ(d.size(), 200);
  EXPECT_EQ(positives(d), 100);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    EXPECT_GT(d.y[i] * (d.x(i, 0) + d.x(i, 1)), 0.0);
  }
}

TEST(Circles, RadiiWithoutNoise) {
  const LabeledDataset d = make_circles(100, 1, 0.0, 0.5);
  EXPECT_EQ(positives(d), 50);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double r = d.x.row(i).norm();
    EXPECT_NEAR(r, d.y[i] > 0 ? 0.5 : 1.0, 1e-12);
  }
  EXPECT_THROW(make_circles(100, 1, 0.0, 1.5), ConfigError);
}

TEST(Moons, PointsOnArcsWithoutNoise) {
  const LabeledDataset d = make_moons(100, 1, 0.0);
  EXPECT_EQ(positives(d), 50);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d.y[i] < 0) {
      EXPECT_NEAR(d.x.row(i).norm(), 1.0, 1e-12);
      EXPECT_GE(d.x(i, 1), -1e-12);
    } else {
      EXPECT_NEAR(std::hypot(d.x(i, 0) - 1.0, d.x(i, 1) - 0.5), 1.0, 1e-12);
      EXPECT_LE(d.x(i, 1), 0.5 + 1e-12);
    }
  }
}

TEST(Generators, SeedDeterminism) {
  for (const char* name : {"linear", "circles", "moons"}) {
    const auto a = make_dataset(name, 50, 8, -1);
    const auto b = make_dataset(name, 50, 8, -1);
    const auto c = make_dataset(name, 50, 9, -1);
    EXPECT_EQ(a.x, b.x) << name;
    EXPECT_EQ(a.y, b.y) << name;
    EXPECT_NE(a.x, c.x) << name;
  }
  EXPECT_THROW(make_dataset("spirals", 50, 1, -1), ConfigError);
}

TEST(Generators, DefaultNoise) {
  EXPECT_EQ(make_dataset("moons", 10, 1, -1).noise, kMoonsNoise);
  EXPECT_EQ(make_dataset("circles", 10, 1, -1).noise, kCirclesNoise);
}

TEST(Split, DisjointStratifiedDeterministic) {
  const LabeledDataset d = make_moons(100, 3, 0.1);
  const auto [train, test] = split(d, 60, 40, 7);
  EXPECT_EQ(train.size(), 60);
  EXPECT_EQ(test.size(), 40);
  EXPECT_EQ(positives(train), 30);
  EXPECT_EQ(positives(test), 20);
  std::set<std::pair<double, double>> seen;
  for (const auto* part : {&train, &test}) {
    for (Eigen::Index i = 0; i < part->size(); ++i) {
      EXPECT_TRUE(seen.insert({part->x(i, 0), part->x(i, 1)}).second);
    }
  }
  EXPECT_EQ(seen.size(), 100u);
  const auto again = split(d, 60, 40, 7);
  EXPECT_EQ(again.first.x, train.x);
  EXPECT_THROW(split(d, 80, 40, 7), ConfigError);
}

TEST(Csv, RoundTrip) {
  const LabeledDataset d = make_circles(30, 2, 0.05);
  const auto path = std::filesystem::temp_directory_path() / "fockml_csv_roundtrip.csv";
  write_csv(d, path);
  const LabeledDataset back = read_csv(path);
  EXPECT_EQ(back.x, d.x);
  EXPECT_EQ(back.y, d.y);
  std::filesystem::remove(path);
}

TEST(Csv, RejectsMalformed) {
  const auto path = std::filesystem::temp_directory_path() / "fockml_csv_bad.csv";
  {
    std::ofstream out(path);
    out << "x1,x2,label\n0.1,0.2,1\n0.3,abc,-1\n";
  }
  EXPECT_THROW(read_csv(path), ConfigError);
  {
    std::ofstream out(path);
    out << "x1,x2,label\n0.1,1\n";
  }
  EXPECT_THROW(read_csv(path), ConfigError);
  std::filesystem::remove(path);
  EXPECT_THROW(read_csv(path), ConfigError);
}

}  // namespace
}  // namespace fockml
