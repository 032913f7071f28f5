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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "fockml/circuit.hpp"
#include "fockml/data.hpp"
#include "fockml/kernel.hpp"
#include "fockml/model.hpp"
#include "fockml/parallel.hpp"
#include "fockml/rks.hpp"
#include "fockml/rng.hpp"
#include "fockml/serialize.hpp"
#include "fockml/variational.hpp"

namespace fockml::cli {

namespace {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i > 0) text_ += ',';
      text_ += header[i];
    }
    text_ += '\n';
  }

  template <typename... T>
  void row(const T&... values) {
    bool first = true;
    (append(values, first), ...);
    text_ += '\n';
  }

  const std::string& str() const { return text_; }

 private:
  template <typename T>
  void append(const T& value, bool& first) {
    if (!first) text_ += ',';
    first = false;
    if constexpr (std::is_floating_point_v<T>) {
      text_ += format_double(value);
    } else if constexpr (std::is_integral_v<T>) {
      text_ += std::to_string(value);
    } else {
      text_ += std::string_view(value);
    }
  }

  std::string text_;
};

class RunDir {
 public:
  explicit RunDir(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
      throw ConfigError("cannot create output directory " + dir_.string() +
                        ": " + ec.message());
    }
  }

  bool enabled() const { return !dir_.empty(); }

  void write(const std::string& name, const std::string& text) {
    if (!enabled()) return;
    write_text_file(dir_ / name, text);
    files_.push_back(name);
  }

  void write_dataset(const std::string& stem, const LabeledDataset& data) {
    if (!enabled()) return;
    write_csv(data, dir_ / (stem + ".csv"));
    files_.push_back(stem + ".csv");
    write(stem + ".json", dataset_metadata_to_json(data));
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

// ---------------------------------------------------------------------------
// Defaults

Json grid_defaults() { return {{"points", 100}, {"margin", 0.5}}; }

Json train_defaults(int max_evals, int restarts, double weight_bound,
                    double alpha, double rel_tol) {
  return {{"alpha", alpha},         {"max_evals", max_evals},
          {"restarts", restarts},   {"mesh_bound", kPi},
          {"weight_bound", weight_bound}, {"rel_tol", rel_tol}};
}

Json defaults_for(std::string_view command) {
  if (command == "gen-data") {
    return {{"name", "moons"}, {"n", 100},       {"seed", 0},
            {"noise", nullptr}, {"factor", 0.5}};
  }
  if (command == "fit-fourier") {
    return {{"modes", 3},
            {"states", {"100", "110", "111"}},
            {"detector", "pnr"},
            {"target",
             {{"c0", 0.2},
              {"coefficients", {{0.69, 0.52}, {0.81, 0.41}, {0.68, 0.82}}}}},
            {"x_min", -3.0 * kPi},
            {"x_max", 3.0 * kPi},
            {"points", 60},
            {"curve_points", 301},
            {"seed", 0},
            {"train", train_defaults(6000, 10, 10.0, 0.0, 1e-12)}};
  }
  if (command == "dof-table") {
    return {{"m_max", 4}, {"n_max", 15}};
  }
  if (command == "classify-variational") {
    return {{"datasets", {"linear", "circles", "moons"}},
            {"states", {"100", "111", "221"}},
            {"modes", 3},
            {"detector", "pnr"},
            {"layout", "per_feature"},
            {"feature_scale", nullptr},
            {"n_total", 100},
            {"n_train", 60},
            {"n_test", 40},
            {"noise", {{"linear", kLinearNoise},
                       {"circles", kCirclesNoise},
                       {"moons", kMoonsNoise}}},
            {"factor", 0.5},
            {"seed", 0},
            {"repeats", 5},
            {"train", train_defaults(1500, 3, 5.0, 0.2, 1e-10)},
            {"grid", grid_defaults()}};
  }
  if (command == "fit-kernel") {
    return {{"photons", {2, 4, 6, 8, 10}},
            {"sigmas", {0.25, 0.33, 0.5, 1.0}},
            {"grid_points", 200},
            {"alpha", 0.0},
            {"curve_points", 201}};
  }
  if (command == "classify-kernel") {
    return {{"dataset", "circles"}, {"photons", 10},      {"sigma", 0.5},
            {"alpha", 0.2},         {"grid_points", 200}, {"n_total", 100},
            {"n_train", 60},        {"n_test", 40},       {"noise", nullptr},
            {"factor", 0.5},        {"seed", 0},          {"repeats", 5},
            {"grid", grid_defaults()}};
  }
  if (command == "rks") {
    return {{"dataset", "moons"},   {"photons", 10},     {"gamma", 1.0},
            {"k", 4},               {"features", {1, 10, 100}},
            {"alpha", 0.2},         {"n_total", 100},    {"n_train", 60},
            {"n_test", 40},         {"noise", nullptr},  {"factor", 0.5},
            {"standardize", false}, {"seed", 0},         {"repeats", 5},
            {"isolation_grid", 101}, {"grid", grid_defaults()}};
  }
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

// ---------------------------------------------------------------------------
// Shared pieces

std::string json_type(const Json& j) {
  if (j.is_number_integer()) return "integer";
  if (j.is_number()) return "number";
  return j.type_name();
}

bool compatible(const Json& base, const Json& value) {
  if (base.is_null()) return value.is_null() || value.is_number();
  if (base.is_number_integer()) return value.is_number_integer();
  if (base.is_number()) return value.is_number();
  return base.type() == value.type();
}

Json merge_at(const Json& base, const Json& overrides, const std::string& path) {
  if (!overrides.is_object()) {
    throw ConfigError("config" + (path.empty() ? "" : " '" + path + "'") +
                      " must be an object");
  }
  Json out = base;
  for (const auto& [key, value] : overrides.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown config key '" + where + "'");
    const Json& current = base.at(key);
    if (current.is_object()) {
      out[key] = merge_at(current, value, where);
    } else if (!compatible(current, value)) {
      throw ConfigError("config key '" + where + "' expects " + json_type(current) +
                        ", got " + json_type(value));
    } else {
      out[key] = value;
    }
  }
  return out;
}

template <typename T>
T at(const Json& j, const char* key) {
  return j.at(key).get<T>();
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

LabeledDataset generate(const std::string& name, int n, std::uint64_t seed,
                        const Json& noise, double factor) {
  double level = -1.0;
  if (!noise.is_null()) {
    level = noise.get<double>();
    require(level >= 0.0, "noise must be >= 0");
  }
  if (name == "circles" || name == "circle") {
    return make_circles(n, seed, level < 0.0 ? kCirclesNoise : level, factor);
  }
  return make_dataset(name, n, seed, level);
}

TrainConfig train_config(const Json& j, std::uint64_t seed) {
  TrainConfig c;
  c.alpha = at<double>(j, "alpha");
  c.max_evals = at<int>(j, "max_evals");
  c.restarts = at<int>(j, "restarts");
  c.mesh_bound = at<double>(j, "mesh_bound");
  c.weight_bound = at<double>(j, "weight_bound");
  c.rel_tol = at<double>(j, "rel_tol");
  c.seed = seed;
  c.validate();
  return c;
}

// Every restart, including the first, starts from a seeded uniform draw.
TrainedModel train_random_start(CircuitSpec spec, Observable obs,
                                const DataMatrix& x, const Eigen::VectorXd& y,
                                const TrainConfig& config) {
  randomize_parameters(spec, obs, config, 0);
  return train(spec, obs, x, y, config);
}

std::string history_csv(const TrainedModel& model) {
  Csv csv({"evaluation", "cost"});
  for (const HistoryPoint& p : model.history) csv.row(p.evaluation, p.cost);
  return csv.str();
}

double mean(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  return values.empty() ? 0.0 : total / static_cast<double>(values.size());
}

double sign_accuracy(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels) {
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    correct += classify_value(predictions[i]) == (labels[i] >= 0.0 ? 1 : -1);
  }
  return labels.size() == 0 ? 0.0
                            : static_cast<double>(correct) /
                                  static_cast<double>(labels.size());
}

struct Lattice {
  double lo[2];
  double hi[2];
  int points;

  double coord(int axis, int i) const {
    return lo[axis] + (hi[axis] - lo[axis]) * i / (points - 1);
  }
};

Lattice lattice_for(const DataMatrix& x, const Json& grid) {
  require(x.cols() == 2, "decision grids need two features");
  Lattice lattice{};
  lattice.points = at<int>(grid, "points");
  require(lattice.points >= 2, "grid.points must be >= 2");
  const double margin = at<double>(grid, "margin");
  for (int axis = 0; axis < 2; ++axis) {
    lattice.lo[axis] = x.col(axis).minCoeff() - margin;
    lattice.hi[axis] = x.col(axis).maxCoeff() + margin;
  }
  return lattice;
}

DataMatrix lattice_points(const Lattice& lattice) {
  const int n = lattice.points;
  DataMatrix points(static_cast<Eigen::Index>(n) * n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      points(i * n + j, 0) = lattice.coord(0, i);
      points(i * n + j, 1) = lattice.coord(1, j);
    }
  }
  return points;
}

std::string lattice_csv(const DataMatrix& points, const Eigen::VectorXd& values) {
  Csv csv({"x1", "x2", "value", "label"});
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    csv.row(points(i, 0), points(i, 1), values[i], classify_value(values[i]));
  }
  return csv.str();
}

template <typename F>
Eigen::VectorXd evaluate_rows(const DataMatrix& points, int threads, F f) {
  Eigen::VectorXd values(points.rows());
  parallel_for(static_cast<std::size_t>(points.rows()), threads, [&](std::size_t i) {
    values[static_cast<Eigen::Index>(i)] =
        f(row_of(points, static_cast<Eigen::Index>(i)));
  });
  return values;
}

// Least-squares residual of the best trigonometric polynomial of `degree`.
double trig_floor_mse(const DataMatrix& x, const Eigen::VectorXd& y, int degree) {
  Eigen::MatrixXd design(x.rows(), 2 * degree + 1);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    design(i, 0) = 1.0;
    for (int k = 1; k <= degree; ++k) {
      design(i, 2 * k - 1) = std::cos(k * x(i, 0));
      design(i, 2 * k) = std::sin(k * x(i, 0));
    }
  }
  const Eigen::VectorXd c = design.colPivHouseholderQr().solve(y);
  return (design * c - y).squaredNorm() / static_cast<double>(x.rows());
}

// ---------------------------------------------------------------------------
// Commands

Json gen_data(const Json& cfg, RunDir& dir) {
  const std::string name = at<std::string>(cfg, "name");
  const LabeledDataset data = generate(name, at<int>(cfg, "n"),
                                       at<std::uint64_t>(cfg, "seed"),
                                       cfg.at("noise"), at<double>(cfg, "factor"));
  dir.write_dataset(data.name, data);
  Eigen::Index positive = 0;
  for (Eigen::Index i = 0; i < data.size(); ++i) positive += data.y[i] > 0.0;
  return {{"dataset", data.name},
          {"n", data.size()},
          {"dims", data.x.cols()},
          {"noise", data.noise},
          {"positive", positive},
          {"negative", data.size() - positive},
          {"mean", {data.x.col(0).mean(), data.x.col(1).mean()}}};
}

Json fit_fourier(const Json& cfg, RunDir& dir, int threads) {
  const int modes = at<int>(cfg, "modes");
  const Detector detector = parse_detector(at<std::string>(cfg, "detector"));
  const int points = at<int>(cfg, "points");
  const int curve_points = at<int>(cfg, "curve_points");
  require(points >= 2 && curve_points >= 2, "points and curve_points must be >= 2");
  const double x_min = at<double>(cfg, "x_min");
  const double x_max = at<double>(cfg, "x_max");
  require(x_max > x_min, "x_max must exceed x_min");

  const Json& target_cfg = cfg.at("target");
  std::vector<Complex> coefficients{Complex(at<double>(target_cfg, "c0"), 0.0)};
  for (const auto& pair : target_cfg.at("coefficients")) {
    require(pair.is_array() && pair.size() == 2,
            "target.coefficients entries must be [re, im]");
    coefficients.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  auto target = [&](double x) {
    double g = coefficients[0].real();
    for (std::size_t k = 1; k < coefficients.size(); ++k) {
      g += 2.0 * (coefficients[k] * std::polar(1.0, static_cast<double>(k) * x)).real();
    }
    return g;
  };

  DataMatrix x(points, 1);
  Eigen::VectorXd y(points);
  Csv data_csv({"x", "y"});
  for (int i = 0; i < points; ++i) {
    x(i, 0) = x_min + (x_max - x_min) * i / (points - 1);
    y[i] = target(x(i, 0));
    data_csv.row(x(i, 0), y[i]);
  }
  dir.write("training_data.csv", data_csv.str());

  const TrainConfig config = [&] {
    TrainConfig c = train_config(cfg.at("train"), at<std::uint64_t>(cfg, "seed"));
    c.threads = threads;
    return c;
  }();

  const auto states = at<std::vector<std::string>>(cfg, "states");
  require(!states.empty(), "states must not be empty");
  Json per_state = Json::object();
  std::vector<TrainedModel> models;
  for (const std::string& label : states) {
    const FockState input = parse_fock_state(label);
    require(input.modes() == modes, "state " + label + " does not have " +
                                        std::to_string(modes) + " modes");
    const CircuitSpec spec =
        CircuitSpec::with_zero_meshes(modes, input, EncodingLayout::single());
    const Observable obs = Observable::constant(detector, modes, input.photons(), 0.0);
    TrainedModel model = train_random_start(spec, obs, x, y, config);

    double sse = 0.0;
    for (int i = 0; i < points; ++i) {
      const double r = y[i] - predict(model, row_of(x, i));
      sse += r * r;
    }
    const double mse = sse / points;
    const int degree = band_limit(model.spec);
    const double floor = trig_floor_mse(x, y, degree);
    const FourierCoefficients fitted =
        extract_fourier_coefficients(model.spec, model.obs, degree);
    Json coeffs = Json::array();
    Csv coeff_csv({"omega", "re", "im"});
    for (int w = -degree; w <= degree; ++w) {
      coeffs.push_back({fitted.at(w).real(), fitted.at(w).imag()});
      coeff_csv.row(w, fitted.at(w).real(), fitted.at(w).imag());
    }
    per_state[label] = {{"photons", input.photons()},
                        {"band_limit", degree},
                        {"final_cost", model.final_cost},
                        {"training_mse", mse},
                        {"oracle_floor_mse", floor},
                        {"evaluations", model.evaluations},
                        {"best_restart", model.best_restart},
                        {"converged", model.converged},
                        {"fourier_coefficients", coeffs}};
    dir.write("model_" + label + ".json", trained_model_to_json(model));
    dir.write("history_" + label + ".csv", history_csv(model));
    dir.write("coefficients_" + label + ".csv", coeff_csv.str());
    models.push_back(std::move(model));
  }

  std::vector<std::string> header{"x", "target"};
  for (const std::string& label : states) header.push_back("f_" + label);
  std::ostringstream curves;
  curves << Csv(header).str();
  for (int i = 0; i < curve_points; ++i) {
    const double xi = x_min + (x_max - x_min) * i / (curve_points - 1);
    curves << format_double(xi) << ',' << format_double(target(xi));
    for (const TrainedModel& model : models) {
      curves << ',' << format_double(predict(model, Features(&xi, 1)));
    }
    curves << '\n';
  }
  dir.write("fit_curves.csv", curves.str());
  return {{"points", points}, {"states", per_state}};
}

Json dof_table(const Json& cfg, RunDir& dir) {
  const int m_max = at<int>(cfg, "m_max");
  const int n_max = at<int>(cfg, "n_max");
  require(m_max >= 1 && n_max >= 0, "need m_max >= 1 and n_max >= 0");
  Csv csv({"modes", "photons", "dof_pnr", "dof_threshold", "m_min",
           "pnr_enhanced", "threshold_enhanced"});
  Json per_mode = Json::array();
  for (int m = 1; m <= m_max; ++m) {
    Json pnr = Json::array(), thr = Json::array(), minimum = Json::array();
    Json pnr_crossing = nullptr, thr_crossing = nullptr;
    for (int n = 0; n <= n_max; ++n) {
      const std::uint64_t p = dof_pnr(m, n);
      const std::uint64_t t = dof_threshold(m, n);
      const std::uint64_t need = m_min(n);
      pnr.push_back(p);
      thr.push_back(t);
      minimum.push_back(need);
      if (pnr_crossing.is_null() && p < need) pnr_crossing = n;
      if (thr_crossing.is_null() && t < need) thr_crossing = n;
      csv.row(m, n, p, t, need, static_cast<int>(p >= need), static_cast<int>(t >= need));
    }
    per_mode.push_back(
        {{"modes", m},
         {"threshold_saturation", dof_threshold(m, m)},
         {"first_pnr_crossing", pnr_crossing},
         {"first_threshold_crossing", thr_crossing},
         {"threshold_enhanced_up_to",
          thr_crossing.is_null() ? Json(n_max) : Json(thr_crossing.get<int>() - 1)},
         {"dof_pnr", pnr},
         {"dof_threshold", thr},
         {"m_min", minimum}});
  }
  dir.write("dof_table.csv", csv.str());
  return {{"n_max", n_max}, {"modes", per_mode}};
}

struct SplitData {
  LabeledDataset train;
  LabeledDataset test;
};

SplitData make_split(const Json& cfg, const std::string& name, const Json& noise,
                     std::uint64_t seed) {
  const LabeledDataset data = generate(name, at<int>(cfg, "n_total"), seed, noise,
                                       at<double>(cfg, "factor"));
  auto [train, test] =
      split(data, at<int>(cfg, "n_train"), at<int>(cfg, "n_test"), derive_seed(seed, 1));
  return {std::move(train), std::move(test)};
}

Json classify_variational(const Json& cfg, RunDir& dir, int threads) {
  const auto datasets = at<std::vector<std::string>>(cfg, "datasets");
  const auto states = at<std::vector<std::string>>(cfg, "states");
  const int modes = at<int>(cfg, "modes");
  const int repeats = at<int>(cfg, "repeats");
  const std::uint64_t seed = at<std::uint64_t>(cfg, "seed");
  require(!datasets.empty() && !states.empty(), "datasets and states must not be empty");
  require(repeats >= 1, "repeats must be >= 1");
  const Detector detector = parse_detector(at<std::string>(cfg, "detector"));
  const EncodingLayout layout = EncodingLayout::make(
      parse_encoding_variant(at<std::string>(cfg, "layout")), modes, 2);
  std::vector<double> scale;
  if (!cfg.at("feature_scale").is_null()) {
    scale = at<std::vector<double>>(cfg, "feature_scale");
  }
  const Json& noise = cfg.at("noise");
  for (const std::string& name : datasets) {
    require(noise.contains(name), "noise has no entry for dataset '" + name + "'");
  }
  const TrainConfig base = train_config(cfg.at("train"), seed);

  // One job per (dataset, repeat, state); data are shared across states.
  std::vector<SplitData> splits;
  for (const std::string& name : datasets) {
    for (int r = 0; r < repeats; ++r) {
      splits.push_back(make_split(cfg, name, noise.at(name), seed + r));
    }
  }
  struct Job {
    std::size_t d, s;
    int r;
  };
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (int r = 0; r < repeats; ++r) {
      for (std::size_t s = 0; s < states.size(); ++s) jobs.push_back({d, s, r});
    }
  }
  std::vector<CircuitSpec> specs;
  for (const std::string& label : states) {
    CircuitSpec spec = CircuitSpec::with_zero_meshes(modes, parse_fock_state(label), layout);
    spec.feature_scale = scale;
    spec.validate();
    specs.push_back(std::move(spec));
  }

  std::vector<TrainedModel> models(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const SplitData& data = splits[job.d * repeats + job.r];
    TrainConfig config = base;
    config.seed = derive_seed(seed + job.r, 2);
    const CircuitSpec& spec = specs[job.s];
    models[j] = train_random_start(
        spec, Observable::constant(detector, modes, spec.photons(), 0.0),
        data.train.x, data.train.y, config);
  });

  Json runs = Json::array();
  Json mean_test = Json::object(), mean_train = Json::object();
  Csv summary({"dataset", "state", "repeat", "seed", "train_accuracy",
               "test_accuracy", "final_cost"});
  std::vector<std::vector<double>> test_acc(datasets.size() * states.size());
  std::vector<std::vector<double>> train_acc(datasets.size() * states.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    const SplitData& data = splits[job.d * repeats + job.r];
    const double tr = accuracy(models[j], data.train.x, data.train.y);
    const double te = accuracy(models[j], data.test.x, data.test.y);
    test_acc[job.d * states.size() + job.s].push_back(te);
    train_acc[job.d * states.size() + job.s].push_back(tr);
    runs.push_back({{"dataset", datasets[job.d]},
                    {"state", states[job.s]},
                    {"repeat", job.r},
                    {"seed", seed + job.r},
                    {"train_accuracy", tr},
                    {"test_accuracy", te},
                    {"final_cost", models[j].final_cost},
                    {"evaluations", models[j].evaluations}});
    summary.row(datasets[job.d], states[job.s], job.r, seed + job.r, tr, te,
                models[j].final_cost);

    if (job.r == 0 && dir.enabled()) {
      const std::string tag = datasets[job.d] + "_" + states[job.s];
      const DataMatrix points = lattice_points(lattice_for(data.train.x, cfg.at("grid")));
      const TrainedModel& model = models[j];
      const Eigen::VectorXd values = evaluate_rows(
          points, threads, [&](Features p) { return predict(model, p); });
      dir.write("decision_" + tag + ".csv", lattice_csv(points, values));
      dir.write("model_" + tag + ".json", trained_model_to_json(model));
      if (job.s == 0) {
        dir.write_dataset("data_" + datasets[job.d] + "_train", data.train);
        dir.write_dataset("data_" + datasets[job.d] + "_test", data.test);
      }
    }
  }
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      mean_test[datasets[d]][states[s]] = mean(test_acc[d * states.size() + s]);
      mean_train[datasets[d]][states[s]] = mean(train_acc[d * states.size() + s]);
    }
  }
  dir.write("accuracy.csv", summary.str());
  return {{"repeats", repeats},
          {"mean_test_accuracy", mean_test},
          {"mean_train_accuracy", mean_train},
          {"runs", runs}};
}

Json fit_kernel(const Json& cfg, RunDir& dir, int threads) {
  const auto photons = at<std::vector<int>>(cfg, "photons");
  const auto sigmas = at<std::vector<double>>(cfg, "sigmas");
  const int grid_points = at<int>(cfg, "grid_points");
  const int curve_points = at<int>(cfg, "curve_points");
  const double alpha = at<double>(cfg, "alpha");
  require(!photons.empty() && !sigmas.empty(), "photons and sigmas must not be empty");
  require(curve_points >= 2, "curve_points must be >= 2");
  for (double s : sigmas) require(s > 0.0, "sigmas must be positive");

  std::vector<KernelObservable> fits(photons.size() * sigmas.size());
  parallel_for(photons.size(), threads, [&](std::size_t p) {
    const HshCircuit circuit(photons[p]);
    const Eigen::MatrixXd table = kernel_probability_table(circuit, grid_points);
    const std::vector<double> phases = kernel_phase_grid(grid_points);
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
      fits[p * sigmas.size() + s] =
          fit_kernel_observable(table, phases, sigmas[s], alpha);
    }
  });

  Json rows = Json::array();
  Csv errors({"photons", "sigma", "max_abs_error", "rms_error"});
  Csv weights({"photons", "sigma", "outcome", "weight"});
  Csv curves({"photons", "sigma", "phase", "target", "response"});
  for (const KernelObservable& fit : fits) {
    rows.push_back({{"photons", fit.photons},
                    {"sigma", fit.sigma},
                    {"max_abs_error", fit.max_abs_error},
                    {"rms_error", fit.rms_error},
                    {"weights", fit.weights}});
    errors.row(fit.photons, fit.sigma, fit.max_abs_error, fit.rms_error);
    for (std::size_t j = 0; j < fit.weights.size(); ++j) {
      weights.row(fit.photons, fit.sigma, j, fit.weights[j]);
    }
    if (dir.enabled()) {
      const HshCircuit circuit(fit.photons);
      for (int i = 0; i < curve_points; ++i) {
        const double phase = kTwoPi * i / (curve_points - 1);
        curves.row(fit.photons, fit.sigma, phase, periodic_gaussian(phase, fit.sigma),
                   circuit.response(phase, fit.weights));
      }
    }
  }
  dir.write("kernel_fit_errors.csv", errors.str());
  dir.write("kernel_weights.csv", weights.str());
  dir.write("kernel_curves.csv", curves.str());
  return {{"grid_points", grid_points}, {"alpha", alpha}, {"fits", rows}};
}

Json classify_kernel(const Json& cfg, RunDir& dir, int threads) {
  const std::string name = at<std::string>(cfg, "dataset");
  const int photons = at<int>(cfg, "photons");
  const double sigma = at<double>(cfg, "sigma");
  const double alpha = at<double>(cfg, "alpha");
  const int repeats = at<int>(cfg, "repeats");
  const std::uint64_t seed = at<std::uint64_t>(cfg, "seed");
  require(sigma > 0.0, "sigma must be positive");
  require(repeats >= 1, "repeats must be >= 1");

  const KernelObservable observable =
      fit_kernel_observable(photons, sigma, at<int>(cfg, "grid_points"));
  dir.write("kernel_observable.json", kernel_observable_to_json(observable));
  const DistanceKernel quantum = circuit_kernel(observable);
  const DistanceKernel gaussian = gaussian_kernel(sigma);

  auto predict_all = [&](const KernelModel& model, const DataMatrix& x,
                         const DistanceKernel& kernel) {
    return evaluate_rows(x, threads,
                         [&](Features p) { return kernel_predict(model, p, kernel); });
  };

  Json runs = Json::array();
  std::vector<double> quantum_acc, gaussian_acc;
  Csv summary({"repeat", "seed", "train_accuracy", "test_accuracy",
               "gaussian_test_accuracy"});
  for (int r = 0; r < repeats; ++r) {
    const SplitData data = make_split(cfg, name, cfg.at("noise"), seed + r);
    const KernelModel model =
        fit_kernel_model(data.train.x, data.train.y, quantum, sigma, alpha, threads);
    const KernelModel reference =
        fit_kernel_model(data.train.x, data.train.y, gaussian, sigma, alpha, threads);
    const double tr = sign_accuracy(predict_all(model, data.train.x, quantum), data.train.y);
    const double te = sign_accuracy(predict_all(model, data.test.x, quantum), data.test.y);
    const double ref =
        sign_accuracy(predict_all(reference, data.test.x, gaussian), data.test.y);
    quantum_acc.push_back(te);
    gaussian_acc.push_back(ref);
    runs.push_back({{"repeat", r},
                    {"seed", seed + r},
                    {"input_scale", model.input_scale},
                    {"train_accuracy", tr},
                    {"test_accuracy", te},
                    {"gaussian_test_accuracy", ref}});
    summary.row(r, seed + r, tr, te, ref);
    if (r == 0 && dir.enabled()) {
      const DataMatrix points = lattice_points(lattice_for(data.train.x, cfg.at("grid")));
      dir.write("decision.csv", lattice_csv(points, predict_all(model, points, quantum)));
      Eigen::MatrixXd gram = kernel_matrix(data.train.x, data.train.x,
                                           model.input_scale, quantum, threads);
      std::ostringstream text;
      for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = 0; j < gram.cols(); ++j) {
          text << (j ? "," : "") << format_double(gram(i, j));
        }
        text << '\n';
      }
      dir.write("kernel_matrix.csv", text.str());
      dir.write_dataset("data_train", data.train);
      dir.write_dataset("data_test", data.test);
    }
  }
  dir.write("accuracy.csv", summary.str());
  return {{"kernel_fit",
           {{"max_abs_error", observable.max_abs_error},
            {"rms_error", observable.rms_error}}},
          {"mean_test_accuracy", mean(quantum_acc)},
          {"mean_gaussian_test_accuracy", mean(gaussian_acc)},
          {"runs", runs}};
}

void standardize(DataMatrix& train, std::vector<DataMatrix*> others) {
  for (Eigen::Index c = 0; c < train.cols(); ++c) {
    const double mu = train.col(c).mean();
    const double sd =
        std::sqrt((train.col(c).array() - mu).square().mean());
    const double inv = sd > 0.0 ? 1.0 / sd : 1.0;
    train.col(c) = (train.col(c).array() - mu) * inv;
    for (DataMatrix* other : others) {
      other->col(c) = (other->col(c).array() - mu) * inv;
    }
  }
}

// sqrt(2) cos(k gamma (w . x + b)) / sqrt(R), computed directly.
Eigen::MatrixXd classical_features(const DataMatrix& x, const RandomFeatureSet& fs) {
  Eigen::MatrixXd z(x.rows(), fs.features);
  const double norm = std::sqrt(2.0 / fs.features);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (int r = 0; r < fs.features; ++r) {
      const double u = fs.gamma * (fs.w.row(r).dot(x.row(i)) + fs.b[r]);
      z(i, r) = norm * std::cos(fs.k * u);
    }
  }
  return z;
}

Json rks(const Json& cfg, RunDir& dir, int threads) {
  const std::string name = at<std::string>(cfg, "dataset");
  const int photons = at<int>(cfg, "photons");
  const double gamma = at<double>(cfg, "gamma");
  const int k = at<int>(cfg, "k");
  const auto feature_counts = at<std::vector<int>>(cfg, "features");
  const double alpha = at<double>(cfg, "alpha");
  const int repeats = at<int>(cfg, "repeats");
  const int iso_grid = at<int>(cfg, "isolation_grid");
  const bool standardized = at<bool>(cfg, "standardize");
  const std::uint64_t seed = at<std::uint64_t>(cfg, "seed");
  require(!feature_counts.empty(), "features must not be empty");
  require(repeats >= 1, "repeats must be >= 1");
  require(gamma > 0.0, "gamma must be positive");

  const HshCircuit circuit(photons);
  std::vector<std::vector<double>> isolation;
  Csv iso_csv({"k", "outcome", "weight"});
  double iso_deviation = 0.0;
  for (int q = 1; q <= photons; ++q) {
    isolation.push_back(isolation_weights(circuit, q, iso_grid));
    for (std::size_t j = 0; j < isolation.back().size(); ++j) {
      iso_csv.row(q, j, isolation.back()[j]);
    }
    for (int i = 0; i < 1000; ++i) {
      const double u = kTwoPi * i / 1000.0;
      iso_deviation = std::max(
          iso_deviation, std::abs(isolated_cosine(circuit, q, u, isolation.back()) -
                                  std::sqrt(2.0) * std::cos(q * u)));
    }
  }
  require(k >= 1 && k <= photons, "k must lie in [1, photons]");
  const std::vector<double>& weights = isolation[static_cast<std::size_t>(k - 1)];
  dir.write("isolation_weights.csv", iso_csv.str());

  Json runs = Json::array();
  std::vector<std::vector<double>> quantum_acc(feature_counts.size());
  std::vector<std::vector<double>> classical_acc(feature_counts.size());
  double feature_deviation = 0.0;
  Csv summary({"repeat", "seed", "features", "train_accuracy", "test_accuracy",
               "classical_test_accuracy"});
  for (int r = 0; r < repeats; ++r) {
    SplitData data = make_split(cfg, name, cfg.at("noise"), seed + r);
    DataMatrix points;
    if (dir.enabled() && r == 0) {
      points = lattice_points(lattice_for(data.train.x, cfg.at("grid")));
    }
    if (standardized) {
      std::vector<DataMatrix*> others{&data.test.x};
      if (points.size() > 0) others.push_back(&points);
      standardize(data.train.x, others);
    }
    for (std::size_t f = 0; f < feature_counts.size(); ++f) {
      const RandomFeatureSet fs = sample_feature_set(
          feature_counts[f], static_cast<int>(data.train.x.cols()), gamma, k,
          derive_seed(seed + r, 3));
      const Eigen::MatrixXd z_train = feature_matrix(
          sample_feature_probabilities(data.train.x, fs, circuit, threads), weights);
      const Eigen::MatrixXd z_test = feature_matrix(
          sample_feature_probabilities(data.test.x, fs, circuit, threads), weights);
      const RksModel model = rks_train_from_features(z_train, data.train.y, fs, alpha,
                                                     photons, weights);
      const double tr = sign_accuracy(z_train * model.c_opt, data.train.y);
      const double te = sign_accuracy(z_test * model.c_opt, data.test.y);

      const Eigen::MatrixXd c_train = classical_features(data.train.x, fs);
      const Eigen::MatrixXd c_test = classical_features(data.test.x, fs);
      feature_deviation = std::max({feature_deviation,
                                    (z_train - c_train).cwiseAbs().maxCoeff(),
                                    (z_test - c_test).cwiseAbs().maxCoeff()});
      const Eigen::MatrixXd normal =
          c_train.transpose() * c_train +
          alpha * Eigen::MatrixXd::Identity(fs.features, fs.features);
      const Eigen::VectorXd c_opt =
          normal.ldlt().solve(c_train.transpose() * data.train.y);
      const double classical = sign_accuracy(c_test * c_opt, data.test.y);

      quantum_acc[f].push_back(te);
      classical_acc[f].push_back(classical);
      runs.push_back({{"repeat", r},
                      {"seed", seed + r},
                      {"features", fs.features},
                      {"train_accuracy", tr},
                      {"test_accuracy", te},
                      {"classical_test_accuracy", classical}});
      summary.row(r, seed + r, fs.features, tr, te, classical);

      if (r == 0 && dir.enabled()) {
        const std::string tag = "R" + std::to_string(fs.features);
        const Eigen::MatrixXd z_grid = feature_matrix(
            sample_feature_probabilities(points, fs, circuit, threads), weights);
        dir.write("decision_" + tag + ".csv", lattice_csv(points, z_grid * model.c_opt));
        dir.write("features_" + tag + ".json", feature_set_to_json(fs));
        if (f == 0) {
          dir.write_dataset("data_train", data.train);
          dir.write_dataset("data_test", data.test);
        }
      }
    }
  }
  dir.write("accuracy.csv", summary.str());
  Json mean_q = Json::object(), mean_c = Json::object();
  for (std::size_t f = 0; f < feature_counts.size(); ++f) {
    mean_q[std::to_string(feature_counts[f])] = mean(quantum_acc[f]);
    mean_c[std::to_string(feature_counts[f])] = mean(classical_acc[f]);
  }
  return {{"sigma", 1.0 / (k * gamma)},
          {"isolation_max_deviation", iso_deviation},
          {"feature_max_deviation", feature_deviation},
          {"mean_test_accuracy", mean_q},
          {"mean_classical_test_accuracy", mean_c},
          {"runs", runs}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "gen-data",   "fit-fourier",     "dof-table", "classify-variational",
      "fit-kernel", "classify-kernel", "rks"};
  return names;
}

bool is_command(std::string_view name) {
  const auto& names = command_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Json default_config(std::string_view command) { return defaults_for(command); }

Json merge_config(const Json& base, const Json& overrides) {
  return merge_at(base, overrides, "");
}

Json load_config_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ConfigError("config file " + path.string() + " is empty");
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  return j;
}

RunResult run_command(std::string_view command, const Json& config,
                      const RunOptions& options) {
  require(options.threads >= 1, "threads must be >= 1");
  const Json cfg = merge_config(default_config(command), config);
  const auto start = std::chrono::steady_clock::now();
  RunDir dir(options.out);
  RunResult result;
  result.command = std::string(command);
  result.config = cfg;
  try {
    if (command == "gen-data") {
      result.metrics = gen_data(cfg, dir);
    } else if (command == "fit-fourier") {
      result.metrics = fit_fourier(cfg, dir, options.threads);
    } else if (command == "dof-table") {
      result.metrics = dof_table(cfg, dir);
    } else if (command == "classify-variational") {
      result.metrics = classify_variational(cfg, dir, options.threads);
    } else if (command == "fit-kernel") {
      result.metrics = fit_kernel(cfg, dir, options.threads);
    } else if (command == "classify-kernel") {
      result.metrics = classify_kernel(cfg, dir, options.threads);
    } else {
      result.metrics = rks(cfg, dir, options.threads);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  dir.write("config.json", dump(cfg));
  dir.write("metrics.json", dump(result.metrics));
  result.files = dir.files();
  if (dir.enabled()) {
    const Json report = {{"command", result.command},
                         {"seed", cfg.contains("seed") ? cfg.at("seed") : Json(nullptr)},
                         {"threads", options.threads},
                         {"wall_seconds", result.wall_seconds},
                         {"files", result.files},
                         {"config", cfg},
                         {"metrics", result.metrics}};
    write_text_file(options.out / "report.json", dump(report));
    result.files.push_back("report.json");
  }
  return result;
}

}  // namespace fockml::cli
