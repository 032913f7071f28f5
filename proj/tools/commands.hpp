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

// Experiment commands shared by the fockml executable and the acceptance
// suite. A command takes a complete JSON configuration (defaults merged with
// a config file and flags) and returns deterministic metrics; when an output
// directory is given it also writes config.json, metrics.json, report.json
// and plot-ready CSV files there.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace fockml::cli {

using Json = nlohmann::ordered_json;

const std::vector<std::string>& command_names();
bool is_command(std::string_view name);

/// Complete configuration of `command` with every key present.
Json default_config(std::string_view command);

/// Overlays `overrides` on `base`. Nested objects merge key by key, every
/// other value is replaced. Unknown keys and values whose JSON type differs
/// from the base value raise ConfigError; a null base value accepts a
/// number.
Json merge_config(const Json& base, const Json& overrides);

/// Reads a JSON object from disk. Empty files and non-objects raise
/// ConfigError.
Json load_config_file(const std::filesystem::path& path);

struct RunOptions {
  std::filesystem::path out;  ///< empty: nothing is written
  int threads = 1;
};

struct RunResult {
  std::string command;
  Json config;
  Json metrics;
  std::vector<std::string> files;
  double wall_seconds = 0.0;
};

/// Runs one command. Metrics depend only on the configuration, never on the
/// thread count or the wall clock.
RunResult run_command(std::string_view command, const Json& config,
                      const RunOptions& options);

}  // namespace fockml::cli
