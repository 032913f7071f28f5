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

#include "fockml/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fockml {

namespace {

using json = nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key);
}

json layout_json(const EncodingLayout& layout) {
  json layers = json::array();
  for (const EncodingLayer& layer : layout.layers) {
    json terms = json::array();
    for (const PhaseTerm& term : layer) {
      terms.push_back({{"mode", term.mode}, {"weights", term.weights}});
    }
    layers.push_back(terms);
  }
  return {{"variant", std::string(to_string(layout.variant))},
          {"features", layout.features},
          {"layers", layers}};
}

EncodingLayout layout_from(const json& j) {
  EncodingLayout layout;
  layout.variant = parse_encoding_variant(get<std::string>(j, "variant"));
  layout.features = get<int>(j, "features");
  for (const json& layer : get<json>(j, "layers")) {
    EncodingLayer out;
    for (const json& term : layer) {
      out.push_back({get<int>(term, "mode"), get<std::vector<double>>(term, "weights")});
    }
    layout.layers.push_back(std::move(out));
  }
  return layout;
}

json spec_json(const CircuitSpec& spec) {
  json meshes = json::array();
  for (const MeshParams& mesh : spec.meshes) {
    meshes.push_back(std::vector<double>(mesh.angles().begin(), mesh.angles().end()));
  }
  return {{"modes", spec.modes},
          {"input", std::vector<int>(spec.input.occupations().begin(),
                                     spec.input.occupations().end())},
          {"layout", layout_json(spec.layout)},
          {"meshes", meshes},
          {"feature_scale", spec.feature_scale},
          {"feature_offset", spec.feature_offset}};
}

CircuitSpec spec_from(const json& j) {
  CircuitSpec spec;
  spec.modes = get<int>(j, "modes");
  spec.input = FockState(get<std::vector<int>>(j, "input"));
  spec.layout = layout_from(get<json>(j, "layout"));
  for (const json& mesh : get<json>(j, "meshes")) {
    spec.meshes.emplace_back(mesh.get<std::vector<double>>());
  }
  spec.feature_scale = get_or<std::vector<double>>(j, "feature_scale", {});
  spec.feature_offset = get_or<std::vector<double>>(j, "feature_offset", {});
  spec.validate();
  return spec;
}

json observable_json(const Observable& obs) {
  return {{"detector", std::string(to_string(obs.detector))},
          {"modes", obs.modes},
          {"photons", obs.photons},
          {"weights", obs.weights}};
}

Observable observable_from(const json& j) {
  Observable obs;
  obs.detector = parse_detector(get<std::string>(j, "detector"));
  obs.modes = get<int>(j, "modes");
  obs.photons = get<int>(j, "photons");
  obs.weights = get<std::vector<double>>(j, "weights");
  obs.validate();
  return obs;
}

json config_json(const TrainConfig& c) {
  return {{"alpha", c.alpha},           {"max_evals", c.max_evals},
          {"seed", c.seed},             {"restarts", c.restarts},
          {"mesh_bound", c.mesh_bound}, {"weight_bound", c.weight_bound},
          {"rel_tol", c.rel_tol}};
}

TrainConfig config_from(const json& j) {
  TrainConfig c;
  c.alpha = get_or(j, "alpha", c.alpha);
  c.max_evals = get_or(j, "max_evals", c.max_evals);
  c.seed = get_or(j, "seed", c.seed);
  c.restarts = get_or(j, "restarts", c.restarts);
  c.mesh_bound = get_or(j, "mesh_bound", c.mesh_bound);
  c.weight_bound = get_or(j, "weight_bound", c.weight_bound);
  c.rel_tol = get_or(j, "rel_tol", c.rel_tol);
  c.threads = get_or(j, "threads", c.threads);
  c.validate();
  return c;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string circuit_spec_to_json(const CircuitSpec& spec) {
  return dump(spec_json(spec));
}

CircuitSpec circuit_spec_from_json(const std::string& text) {
  return spec_from(parse(text));
}

std::string observable_to_json(const Observable& obs) {
  return dump(observable_json(obs));
}

Observable observable_from_json(const std::string& text) {
  return observable_from(parse(text));
}

std::string train_config_to_json(const TrainConfig& config) {
  return dump(config_json(config));
}

TrainConfig train_config_from_json(const std::string& text) {
  return config_from(parse(text));
}

std::string trained_model_to_json(const TrainedModel& model) {
  json history = json::array();
  for (const HistoryPoint& point : model.history) {
    history.push_back({point.evaluation, point.cost});
  }
  return dump({{"spec", spec_json(model.spec)},
               {"observable", observable_json(model.obs)},
               {"config", config_json(model.config)},
               {"final_cost", model.final_cost},
               {"converged", model.converged},
               {"evaluations", model.evaluations},
               {"best_restart", model.best_restart},
               {"history", history}});
}

TrainedModel trained_model_from_json(const std::string& text) {
  const json j = parse(text);
  TrainedModel model;
  model.spec = spec_from(get<json>(j, "spec"));
  model.obs = observable_from(get<json>(j, "observable"));
  model.config = config_from(get<json>(j, "config"));
  model.final_cost = get<double>(j, "final_cost");
  model.converged = get<bool>(j, "converged");
  model.evaluations = get<int>(j, "evaluations");
  model.best_restart = get<int>(j, "best_restart");
  for (const json& point : get_or<json>(j, "history", json::array())) {
    if (!point.is_array() || point.size() != 2) {
      throw ConfigError("history entries must be [evaluation, cost] pairs");
    }
    model.history.push_back({point[0].get<int>(), point[1].get<double>()});
  }
  if (model.obs.modes != model.spec.modes ||
      model.obs.photons != model.spec.photons()) {
    throw ConfigError("trained model: observable does not match circuit");
  }
  return model;
}

std::string kernel_observable_to_json(const KernelObservable& obs) {
  return dump({{"photons", obs.photons},
               {"sigma", obs.sigma},
               {"weights", obs.weights},
               {"grid_points", obs.grid_points},
               {"max_abs_error", obs.max_abs_error},
               {"rms_error", obs.rms_error}});
}

KernelObservable kernel_observable_from_json(const std::string& text) {
  const json j = parse(text);
  KernelObservable obs;
  obs.photons = get<int>(j, "photons");
  obs.sigma = get<double>(j, "sigma");
  obs.weights = get<std::vector<double>>(j, "weights");
  obs.grid_points = get_or(j, "grid_points", 0);
  obs.max_abs_error = get_or(j, "max_abs_error", 0.0);
  obs.rms_error = get_or(j, "rms_error", 0.0);
  if (obs.photons < 1 ||
      obs.weights.size() != static_cast<std::size_t>(obs.photons) + 1) {
    throw ConfigError("kernel observable: need photons + 1 weights");
  }
  return obs;
}

std::string feature_set_to_json(const RandomFeatureSet& fs) {
  json w = json::array();
  for (Eigen::Index r = 0; r < fs.w.rows(); ++r) {
    w.push_back(std::vector<double>(fs.w.row(r).data(),
                                    fs.w.row(r).data() + fs.w.cols()));
  }
  return dump({{"features", fs.features},
               {"dims", fs.dims},
               {"gamma", fs.gamma},
               {"k", fs.k},
               {"seed", fs.seed},
               {"w", w},
               {"b", fs.b}});
}

RandomFeatureSet feature_set_from_json(const std::string& text) {
  const json j = parse(text);
  RandomFeatureSet fs;
  fs.features = get<int>(j, "features");
  fs.dims = get<int>(j, "dims");
  fs.gamma = get<double>(j, "gamma");
  fs.k = get<int>(j, "k");
  fs.seed = get<std::uint64_t>(j, "seed");
  fs.b = get<std::vector<double>>(j, "b");
  const auto rows = get<std::vector<std::vector<double>>>(j, "w");
  if (fs.features < 1 || fs.dims < 1 ||
      rows.size() != static_cast<std::size_t>(fs.features) ||
      fs.b.size() != static_cast<std::size_t>(fs.features)) {
    throw ConfigError("feature set: w and b must have one entry per feature");
  }
  fs.w.resize(fs.features, fs.dims);
  for (int r = 0; r < fs.features; ++r) {
    if (rows[r].size() != static_cast<std::size_t>(fs.dims)) {
      throw ConfigError("feature set: w rows must have dims entries");
    }
    for (int d = 0; d < fs.dims; ++d) fs.w(r, d) = rows[r][d];
  }
  return fs;
}

std::string dataset_metadata_to_json(const LabeledDataset& data) {
  return dump({{"generator", data.name},
               {"n", data.size()},
               {"dims", data.x.cols()},
               {"seed", data.seed},
               {"noise", data.noise},
               {"factor", data.factor}});
}

void apply_dataset_metadata(const std::string& text, LabeledDataset& data) {
  const json j = parse(text);
  data.name = get<std::string>(j, "generator");
  data.seed = get<std::uint64_t>(j, "seed");
  data.noise = get<double>(j, "noise");
  data.factor = get_or(j, "factor", 0.0);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace fockml
