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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fockml/types.hpp"

namespace {

using fockml::cli::Json;

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

template <typename T>
void flag(CLI::App* sub, Json& overrides, const std::string& name,
          const std::string& key, const std::string& help) {
  sub->add_option_function<T>(
      name, [&overrides, key](const T& value) { overrides[key] = value; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-state photonic quantum machine learning experiments"};
  app.name("fockml");
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 1;
  app.add_option("--config", config_path, "JSON file with configuration overrides");
  app.add_option("--seed", seed, "Base seed of the run");
  app.add_option("--out", out, "Output directory (default: runs/<command>)");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  Json overrides = Json::object();
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  CLI::App* gen = add("gen-data", "Generate a toy dataset as CSV plus metadata");
  flag<std::string>(gen, overrides, "--name", "name", "linear, circles or moons");
  flag<int>(gen, overrides, "--n", "n", "Number of points");
  flag<double>(gen, overrides, "--noise", "noise", "Gaussian noise level");
  flag<double>(gen, overrides, "--factor", "factor", "Inner radius of circles");

  CLI::App* fourier = add("fit-fourier", "Fit a degree-3 Fourier series per input state");
  flag<std::vector<std::string>>(fourier, overrides, "--states", "states",
                                 "Input Fock states, e.g. 100 110 111");

  CLI::App* dof = add("dof-table", "Degrees of freedom against photon number");
  flag<int>(dof, overrides, "--m-max", "m_max", "Largest mode count");
  flag<int>(dof, overrides, "--n-max", "n_max", "Largest photon number");

  CLI::App* variational =
      add("classify-variational", "Variational classifiers on the toy datasets");
  flag<std::vector<std::string>>(variational, overrides, "--datasets", "datasets",
                                 "Datasets to classify");
  flag<std::vector<std::string>>(variational, overrides, "--states", "states",
                                 "Input Fock states");
  flag<int>(variational, overrides, "--repeats", "repeats", "Seeds per configuration");

  CLI::App* kernel_fit = add("fit-kernel", "Fit Gaussian kernels with the HSH circuit");
  flag<std::vector<int>>(kernel_fit, overrides, "--photons", "photons", "Photon numbers");
  flag<std::vector<double>>(kernel_fit, overrides, "--sigma", "sigmas", "Kernel widths");
  flag<int>(kernel_fit, overrides, "--grid-points", "grid_points", "Phase grid size");

  CLI::App* kernel = add("classify-kernel", "Kernel ridge classification");
  flag<std::string>(kernel, overrides, "--dataset", "dataset", "Dataset name");
  flag<int>(kernel, overrides, "--photons", "photons", "Photon number");
  flag<double>(kernel, overrides, "--sigma", "sigma", "Kernel width");
  flag<double>(kernel, overrides, "--alpha", "alpha", "Ridge regularization");
  flag<int>(kernel, overrides, "--repeats", "repeats", "Seeds");

  CLI::App* sinks = add("rks", "Random kitchen sinks with circuit-sampled features");
  flag<std::string>(sinks, overrides, "--dataset", "dataset", "Dataset name");
  flag<int>(sinks, overrides, "--photons", "photons", "Photon number");
  flag<double>(sinks, overrides, "--gamma", "gamma", "Base resolution");
  flag<int>(sinks, overrides, "--k", "k", "Frequency index");
  flag<std::vector<int>>(sinks, overrides, "--features", "features",
                         "Feature counts R");
  flag<double>(sinks, overrides, "--alpha", "alpha", "Ridge regularization");
  flag<int>(sinks, overrides, "--repeats", "repeats", "Seeds");
  sinks->add_flag_function(
      "--standardize", [&overrides](std::int64_t) { overrides["standardize"] = true; },
      "Standardize features with training statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Json config = fockml::cli::default_config(command);
    if (!config_path.empty()) {
      config = fockml::cli::merge_config(config,
                                         fockml::cli::load_config_file(config_path));
    }
    if (seed) {
      if (!config.contains("seed")) {
        throw fockml::ConfigError(command + " does not take a seed");
      }
      overrides["seed"] = *seed;
    }
    config = fockml::cli::merge_config(config, overrides);

    fockml::cli::RunOptions options;
    options.out = out.empty() ? std::filesystem::path("runs") / command
                              : std::filesystem::path(out);
    options.threads = threads;
    const auto result = fockml::cli::run_command(command, config, options);
    std::cout << command << ": wrote " << result.files.size() << " files to "
              << options.out.string() << " in " << result.wall_seconds << " s\n";
    return 0;
  } catch (const fockml::ConfigError& e) {
    std::cerr << "fockml " << command << ": " << e.what() << '\n';
    return kConfigExit;
  } catch (const fockml::NumericalError& e) {
    std::cerr << "fockml " << command << ": numerical failure: " << e.what() << '\n';
    return kNumericalExit;
  } catch (const std::exception& e) {
    std::cerr << "fockml " << command << ": " << e.what() << '\n';
    return 1;
  }
}
