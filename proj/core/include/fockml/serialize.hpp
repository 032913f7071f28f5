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

// JSON text formats for circuits, observables, trained models, kernel
// observables, random feature sets and dataset metadata. Doubles are written
// with round-trip precision, so save/load reproduces every value exactly.
// Parsers throw ConfigError on malformed or inconsistent input.

#pragma once

#include <filesystem>
#include <string>

#include "fockml/circuit.hpp"
#include "fockml/data.hpp"
#include "fockml/kernel.hpp"
#include "fockml/model.hpp"
#include "fockml/rks.hpp"
#include "fockml/variational.hpp"

namespace fockml {

std::string circuit_spec_to_json(const CircuitSpec& spec);
CircuitSpec circuit_spec_from_json(const std::string& text);

std::string observable_to_json(const Observable& obs);
Observable observable_from_json(const std::string& text);

std::string train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const std::string& text);

std::string trained_model_to_json(const TrainedModel& model);
TrainedModel trained_model_from_json(const std::string& text);

std::string kernel_observable_to_json(const KernelObservable& obs);
KernelObservable kernel_observable_from_json(const std::string& text);

std::string feature_set_to_json(const RandomFeatureSet& fs);
RandomFeatureSet feature_set_from_json(const std::string& text);

/// Sidecar for a dataset CSV: generator name, size, seed, noise, factor.
std::string dataset_metadata_to_json(const LabeledDataset& data);
/// Copies the metadata fields of `text` into `data`.
void apply_dataset_metadata(const std::string& text, LabeledDataset& data);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fockml
