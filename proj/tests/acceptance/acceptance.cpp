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

// End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
// the exit status is non-zero when any selected criterion fails.
//
//   fockml_acceptance            run every criterion
//   fockml_acceptance 2 5 7      run a subset

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "commands.hpp"
#include "fockml/circuit.hpp"
#include "fockml/data.hpp"
#include "fockml/fock.hpp"
#include "fockml/kernel.hpp"
#include "fockml/model.hpp"
#include "fockml/rks.hpp"
#include "fockml/rng.hpp"
#include "fockml/serialize.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using namespace fockml;
using cli::Json;
using testing_util::random_observable;
using testing_util::random_spec;
using testing_util::random_unitary;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int hardware_threads() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

FockState random_input(Rng& rng, int modes, int photons) {
  const auto states = oracle::compositions(modes, photons);
  return FockState(states[rng.index(states.size())]);
}

Outcome fourier_fit() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto run = cli::run_command("fit-fourier", Json::object(), {{}, 1});
  const double elapsed = seconds_since(start);
  const Json& cfg = run.config;
  const Json& states = run.metrics.at("states");

  // Independent floors from the training grid and target.
  std::vector<double> xs, ys;
  const int points = cfg.at("points").get<int>();
  const double lo = cfg.at("x_min").get<double>(), hi = cfg.at("x_max").get<double>();
  const auto& target = cfg.at("target");
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    double g = target.at("c0").get<double>();
    int k = 1;
    for (const auto& c : target.at("coefficients")) {
      g += 2.0 * (c[0].get<double>() * std::cos(k * x) - c[1].get<double>() * std::sin(k * x));
      ++k;
    }
    xs.push_back(x);
    ys.push_back(g);
  }
  const double mse111 = states.at("111").at("training_mse").get<double>();
  out.check(mse111 <= 1e-3, "|111> training MSE <= 1e-3");
  out.detail << " |111> mse=" << mse111;
  for (const auto& [label, degree] : {std::pair{"100", 1}, std::pair{"110", 2}}) {
    const double mse = states.at(label).at("training_mse").get<double>();
    const double floor = oracle::trig_fit_mse(xs, ys, degree);
    out.check(std::abs(mse - floor) <= 0.1 * floor,
              std::string("|") + label + "> within 10% of the oracle floor");
    out.detail << " |" << label << "> mse=" << mse << " floor=" << floor;
  }
  out.check(elapsed <= 300.0, "runtime <= 5 min");
  out.detail << " time=" << elapsed << "s";
  return out;
}

Outcome band_limit_property() {
  Outcome out;
  Rng rng(2024);
  double worst = 0.0;
  for (const auto& [m, n] : {std::pair{2, 1}, std::pair{3, 2}, std::pair{3, 3},
                             std::pair{2, 5}}) {
    for (int trial = 0; trial < 100; ++trial) {
      const CircuitSpec spec =
          random_spec(rng, m, random_input(rng, m, n), EncodingLayout::single());
      const Observable obs = random_observable(rng, Detector::PNR, m, n);
      const FourierCoefficients c = extract_fourier_coefficients(spec, obs, n + 3);
      for (int w = n + 1; w <= n + 3; ++w) {
        worst = std::max({worst, std::abs(c.at(w)), std::abs(c.at(-w))});
      }
    }
  }
  out.check(worst <= 1e-10, "|c_w| <= 1e-10 beyond the band limit");
  out.detail << " max |c_w| for |w| > n: " << worst;
  return out;
}

Outcome spectrum_law() {
  Outcome out;
  Rng rng(77);
  const int m = 3, n = 2, support = (m - 1) * n;
  for (EncodingVariant variant : {EncodingVariant::Series1D, EncodingVariant::Parallel1D}) {
    std::vector<double> peak(static_cast<std::size_t>(support + 3), 0.0);
    for (int trial = 0; trial < 20; ++trial) {
      const CircuitSpec spec = random_spec(rng, m, random_input(rng, m, n),
                                           EncodingLayout::make(variant, m, 1));
      const Observable obs = random_observable(rng, Detector::PNR, m, n);
      const FourierCoefficients c = extract_fourier_coefficients(spec, obs, support + 2);
      for (int w = 0; w <= support + 2; ++w) {
        peak[w] = std::max({peak[w], std::abs(c.at(w)), std::abs(c.at(-w))});
      }
    }
    const std::string name(to_string(variant));
    for (int w = 0; w <= support; ++w) {
      out.check(peak[w] > 1e-6, name + ": frequency " + std::to_string(w) + " present");
    }
    out.check(peak[support + 1] <= 1e-10 && peak[support + 2] <= 1e-10,
              name + ": nothing beyond " + std::to_string(support));
    out.detail << " " << name << " |c_4|max=" << peak[support]
               << " |c_5|max=" << peak[support + 1];
  }
  return out;
}

Outcome unitarity_and_oracles() {
  Outcome out;
  Rng rng(4);
  double unitarity = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng.index(4));
    const int n = 1 + static_cast<int>(rng.index(4));
    const FockBasis basis(m, n);
    const ComplexMatrix lifted = lift_unitary(random_unitary(rng, m), basis);
    const ComplexMatrix gram = lifted.adjoint() * lifted;
    unitarity = std::max(
        unitarity,
        (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff());
  }
  out.check(unitarity <= 1e-10, "lifted unitaries are unitary");

  double perm_error = 0.0;
  for (int k = 1; k <= 7; ++k) {
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix a = testing_util::random_complex(rng, k, k);
      const Complex expected = oracle::naive_permanent(a);
      perm_error = std::max(perm_error,
                            std::abs(permanent(a) - expected) / std::max(1.0, std::abs(expected)));
    }
  }
  out.check(perm_error <= 1e-10, "Ryser matches the naive permanent");

  double amp_error = 0.0;
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const ComplexMatrix u = random_unitary(rng, m);
      for (const auto& in : oracle::compositions(m, n)) {
        for (const auto& o : oracle::compositions(m, n)) {
          amp_error = std::max(
              amp_error, std::abs(transition_amplitude(u, FockState(in), FockState(o)) -
                                  oracle::mode_operator_amplitude(u, in, o)));
        }
      }
    }
  }
  out.check(amp_error <= 1e-10, "amplitudes match the mode-operator expansion");
  out.detail << " unitarity=" << unitarity << " permanent=" << perm_error
             << " amplitude=" << amp_error;
  return out;
}

Outcome dof_table() {
  Outcome out;
  const auto run = cli::run_command("dof-table", Json::object(), {{}, 1});
  const Json* row = nullptr;
  for (const Json& r : run.metrics.at("modes")) {
    if (r.at("modes") == 3) row = &r;
  }
  out.check(row != nullptr, "m = 3 row present");
  if (!row) return out;
  for (int n = 0; n <= 15; ++n) {
    const auto pnr = row->at("dof_pnr")[n].get<std::uint64_t>();
    out.check(pnr == static_cast<std::uint64_t>(12 + (n + 2) * (n + 1) / 2),
              "M_PNR(3," + std::to_string(n) + ")");
    // Click patterns counted directly from the occupation vectors.
    std::set<std::vector<bool>> patterns;
    for (const auto& occ : oracle::compositions(3, n)) {
      std::vector<bool> clicks;
      for (int c : occ) clicks.push_back(c > 0);
      if (n > 0) patterns.insert(clicks);
    }
    const auto thr = row->at("dof_threshold")[n].get<std::uint64_t>();
    out.check(thr == 12 + patterns.size(), "M_THR(3," + std::to_string(n) + ")");
    if (n >= 3) out.check(thr == 19, "M_THR saturates at 19");
  }
  out.check(row->at("first_threshold_crossing") == 10, "threshold crossing at n = 10");
  out.check(row->at("threshold_enhanced_up_to") == 9, "enhancement up to 9 photons");
  out.detail << " crossing n=" << row->at("first_threshold_crossing")
             << " saturation=" << row->at("threshold_saturation");
  return out;
}

Outcome kernel_fits() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto run = cli::run_command("fit-kernel", Json::object(), {{}, 1});
  const double elapsed = seconds_since(start);
  const int grid = run.config.at("grid_points").get<int>();

  // Re-evaluates every reported error with the permanent-based simulation.
  auto error_of = [&](int photons, double sigma) {
    for (const Json& fit : run.metrics.at("fits")) {
      if (fit.at("photons") != photons || fit.at("sigma").get<double>() != sigma) continue;
      const auto weights = fit.at("weights").get<std::vector<double>>();
      const HshCircuit circuit(photons);
      double worst = 0.0;
      for (int g = 0; g < grid; ++g) {
        const double phase = kTwoPi * g / (grid - 1);
        const double wrapped = std::min(phase, kTwoPi - phase);
        const double target = std::exp(-wrapped * wrapped / (2.0 * sigma * sigma));
        const Eigen::VectorXd p = circuit.simulate(phase);
        double response = 0.0;
        for (int j = 0; j <= photons; ++j) response += weights[j] * p[j];
        worst = std::max(worst, std::abs(response - target));
      }
      const double reported = fit.at("max_abs_error").get<double>();
      out.check(std::abs(worst - reported) <= 1e-9, "reported error reproduces");
      return worst;
    }
    out.check(false, "fit present");
    return 1.0;
  };
  const double e21 = error_of(2, 1.0), e45 = error_of(4, 0.5), e105 = error_of(10, 0.25);
  const double e425 = error_of(4, 0.25);
  out.check(e21 <= 0.02, "(n=2, sigma=1) <= 0.02");
  out.check(e45 <= 0.05, "(n=4, sigma=0.5) <= 0.05");
  out.check(e105 <= 0.05, "(n=10, sigma=0.25) <= 0.05");
  out.check(e425 >= 5.0 * e45, "(n=4, sigma=0.25) >= 5x (n=4, sigma=0.5)");
  out.check(elapsed <= 60.0, "runtime <= 1 min");
  out.detail << " (2,1.00)=" << e21 << " (4,0.50)=" << e45 << " (10,0.25)=" << e105
             << " (4,0.25)=" << e425 << " time=" << elapsed << "s";
  return out;
}

Outcome rks_equivalence() {
  Outcome out;
  const int photons = 10;
  const LabeledDataset data = make_moons(60, 11, kMoonsNoise);
  const auto [train, test] = split(data, 40, 20, 12);
  const HshCircuit circuit(photons);
  double deviation = 0.0;
  bool accuracies_match = true;
  for (int k = 1; k <= photons; ++k) {
    const RandomFeatureSet fs = sample_feature_set(50, 2, 1.0, k, 100 + k);
    const auto weights = isolation_weights(circuit, k);
    const Eigen::MatrixXd zq_train = feature_matrix(
        sample_feature_probabilities(train.x, fs, circuit), weights);
    const Eigen::MatrixXd zq_test = feature_matrix(
        sample_feature_probabilities(test.x, fs, circuit), weights);
    const Eigen::MatrixXd zc_train = oracle::classical_rff(train.x, fs.w, fs.b, 1.0, k);
    const Eigen::MatrixXd zc_test = oracle::classical_rff(test.x, fs.w, fs.b, 1.0, k);
    deviation = std::max({deviation, (zq_train - zc_train).cwiseAbs().maxCoeff(),
                          (zq_test - zc_test).cwiseAbs().maxCoeff()});

    const RksModel model =
        rks_train_from_features(zq_train, train.y, fs, 0.2, photons, weights);
    const Eigen::VectorXd c = oracle::ridge_weights(zc_train, train.y, 0.2);
    accuracies_match &= oracle::sign_accuracy(zq_test * model.c_opt, test.y) ==
                        oracle::sign_accuracy(zc_test * c, test.y);
  }
  out.check(deviation <= 1e-6, "features within 1e-6 of sqrt(2) cos(k gamma u)");
  out.check(accuracies_match, "accuracy equals the classical RFF ridge oracle");
  out.detail << " max feature deviation=" << deviation;
  return out;
}

Outcome variational_trends() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto run =
      cli::run_command("classify-variational", Json::object(), {{}, hardware_threads()});
  const double elapsed = seconds_since(start);
  const Json& acc = run.metrics.at("mean_test_accuracy");
  const double linear100 = acc.at("linear").at("100").get<double>();
  const double moon100 = acc.at("moons").at("100").get<double>();
  const double moon221 = acc.at("moons").at("221").get<double>();
  const double circle111 = acc.at("circles").at("111").get<double>();
  const double circle221 = acc.at("circles").at("221").get<double>();
  out.check(run.config.at("repeats").get<int>() >= 5, ">= 5 seeds");
  out.check(linear100 >= 0.9, "linear |100> >= 0.9");
  out.check(moon221 >= moon100, "moon |221> >= moon |100>");
  out.check(circle221 <= circle111, "circle |221> <= circle |111>");
  out.check(elapsed <= 1800.0, "runtime <= 30 min");
  out.detail << " linear|100>=" << linear100 << " moon|100>=" << moon100
             << " moon|221>=" << moon221 << " circle|111>=" << circle111
             << " circle|221>=" << circle221 << " time=" << elapsed << "s";
  return out;
}

Outcome rks_classification() {
  Outcome out;
  const auto run = cli::run_command("rks", Json::object(), {{}, 1});
  const Json& cfg = run.config;
  const auto counts = cfg.at("features").get<std::vector<int>>();
  const int repeats = cfg.at("repeats").get<int>();
  const auto seed = cfg.at("seed").get<std::uint64_t>();
  const double gamma = cfg.at("gamma").get<double>();
  const int k = cfg.at("k").get<int>();
  const double alpha = cfg.at("alpha").get<double>();
  out.check(counts == std::vector<int>{1, 10, 100}, "R in {1, 10, 100}");
  out.check(std::abs(1.0 / (k * gamma) - 0.25) < 1e-12, "sigma = 1/4");
  out.check(repeats >= 5, ">= 5 seeds");

  // The same draws pushed through the classical oracle pipeline.
  std::vector<double> means;
  for (int count : counts) {
    double total = 0.0;
    for (int r = 0; r < repeats; ++r) {
      const LabeledDataset data = make_moons(cfg.at("n_total").get<int>(), seed + r, kMoonsNoise);
      const auto [train, test] = split(data, cfg.at("n_train").get<int>(),
                                       cfg.at("n_test").get<int>(), derive_seed(seed + r, 1));
      const RandomFeatureSet fs = sample_feature_set(count, 2, gamma, k, derive_seed(seed + r, 3));
      const Eigen::VectorXd c =
          oracle::ridge_weights(oracle::classical_rff(train.x, fs.w, fs.b, gamma, k),
                                train.y, alpha);
      total += oracle::sign_accuracy(
          oracle::classical_rff(test.x, fs.w, fs.b, gamma, k) * c, test.y);
    }
    const double quantum =
        run.metrics.at("mean_test_accuracy").at(std::to_string(count)).get<double>();
    out.check(quantum == total / repeats,
              "R=" + std::to_string(count) + " matches the classical oracle");
    means.push_back(quantum);
    out.detail << " R=" << count << ":" << quantum;
  }
  out.check(std::is_sorted(means.begin(), means.end()), "non-decreasing in R");
  out.check(means.back() >= 0.9, "R=100 accuracy >= 0.9");
  return out;
}

// Small but complete configurations for every command.
std::vector<std::pair<std::string, Json>> determinism_cases() {
  const Json grid = {{"points", 12}, {"margin", 0.5}};
  return {
      {"gen-data", Json::object()},
      {"fit-fourier",
       {{"states", {"110"}}, {"train", {{"restarts", 2}, {"max_evals", 300}}}}},
      {"dof-table", Json::object()},
      {"classify-variational",
       {{"datasets", {"moons"}},
        {"states", {"100", "110"}},
        {"repeats", 2},
        {"train", {{"restarts", 2}, {"max_evals", 150}}},
        {"grid", grid}}},
      {"fit-kernel", {{"photons", {2, 6}}}},
      {"classify-kernel", {{"repeats", 2}, {"grid", grid}}},
      {"rks", {{"repeats", 2}, {"features", {1, 20}}, {"grid", grid}}},
  };
}

Outcome determinism() {
  Outcome out;
  const std::filesystem::path root = std::filesystem::temp_directory_path() /
                                     ("fockml-acceptance-" + std::to_string(::getpid()));
  std::size_t compared = 0;
  for (const auto& [command, overrides] : determinism_cases()) {
    const auto a = cli::run_command(command, overrides, {root / command / "a", 1});
    const auto b = cli::run_command(command, overrides, {root / command / "b", 3});
    out.check(a.metrics.dump() == b.metrics.dump(), command + " metrics");
    out.check(a.files == b.files, command + " file list");
    for (const std::string& file : a.files) {
      if (file == "report.json") continue;
      const std::string left = read_text_file(root / command / "a" / file);
      const std::string right = read_text_file(root / command / "b" / file);
      out.check(left == right, command + "/" + file);
      ++compared;
    }
  }
  std::filesystem::remove_all(root);
  out.detail << " " << compared << " output files identical across reruns";
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "Fourier-series fit", fourier_fit},
      {2, "band limit", band_limit_property},
      {3, "series/parallel spectrum law", spectrum_law},
      {4, "unitarity and oracle suite", unitarity_and_oracles},
      {5, "degrees-of-freedom table", dof_table},
      {6, "Gaussian kernel fits", kernel_fits},
      {7, "RKS feature equivalence", rks_equivalence},
      {8, "variational classification trends", variational_trends},
      {9, "RKS classification", rks_classification},
      {10, "determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << " exception: " << e.what();
    }
    all_pass &= outcome.pass;
    std::printf("%s criterion %d (%s):%s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                c.title, outcome.detail.str().c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
