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

#include "commands.hpp"
#include "fockml/types.hpp"

namespace fockml::cli {
namespace {

TEST(MergeConfig, OverridesNestedKeys) {
  const Json merged = merge_config(default_config("fit-fourier"),
                                   Json::parse(R"({"train": {"restarts": 3}})"));
  EXPECT_EQ(merged["train"]["restarts"], 3);
  EXPECT_EQ(merged["train"]["max_evals"], default_config("fit-fourier")["train"]["max_evals"]);
}

TEST(MergeConfig, RejectsUnknownKeys) {
  EXPECT_THROW(merge_config(default_config("rks"), Json::parse(R"({"gama": 1})")),
               ConfigError);
  EXPECT_THROW(merge_config(default_config("classify-variational"),
                            Json::parse(R"({"train": {"lr": 0.1}})")),
               ConfigError);
}

TEST(MergeConfig, RejectsWrongTypes) {
  EXPECT_THROW(merge_config(default_config("rks"), Json::parse(R"({"k": 2.5})")),
               ConfigError);
  EXPECT_THROW(merge_config(default_config("rks"), Json::parse(R"({"dataset": 3})")),
               ConfigError);
  EXPECT_NO_THROW(merge_config(default_config("rks"), Json::parse(R"({"gamma": 2})")));
  EXPECT_NO_THROW(merge_config(default_config("rks"), Json::parse(R"({"noise": 0.2})")));
}

TEST(Commands, EveryCommandHasDefaults) {
  for (const std::string& name : command_names()) {
    EXPECT_TRUE(is_command(name));
    EXPECT_TRUE(default_config(name).is_object()) << name;
  }
  EXPECT_FALSE(is_command("train"));
  EXPECT_THROW(default_config("train"), ConfigError);
}

TEST(Commands, DofTableMetrics) {
  const RunResult run = run_command("dof-table", Json::parse(R"({"m_max": 3})"), {});
  const Json& m3 = run.metrics["modes"][2];
  EXPECT_EQ(m3["modes"], 3);
  EXPECT_EQ(m3["dof_pnr"][0], 13);
  EXPECT_EQ(m3["m_min"][0], 1);
  EXPECT_EQ(m3["first_threshold_crossing"], 10);
  EXPECT_TRUE(run.files.empty());
}

TEST(Commands, GenDataIsBalanced) {
  const RunResult run =
      run_command("gen-data", Json::parse(R"({"name": "linear", "n": 100})"), {});
  EXPECT_EQ(run.metrics["positive"], 50);
  EXPECT_EQ(run.metrics["negative"], 50);
}

TEST(Commands, BadValuesAreConfigErrors) {
  EXPECT_THROW(run_command("rks", Json::parse(R"({"k": 0})"), {}), ConfigError);
  EXPECT_THROW(run_command("gen-data", Json::parse(R"({"name": "spirals"})"), {}),
               ConfigError);
  EXPECT_THROW(run_command("fit-kernel", Json::object(), {{}, 0}), ConfigError);
}

}  // namespace
}  // namespace fockml::cli
