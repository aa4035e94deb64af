// Copyright 2026 The fsrm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fsrm/device/device.h"
#include "fsrm/estimators/fsrm.h"
#include "fsrm/qcore/state.h"
#include "json.hpp"

namespace fsrm {

// {"builtin": "bell" | "werner" | "product" | "mixed" | "random", ...} or
// {"file": path}. A bare string names a builtin.
struct StateSource {
  std::string builtin = "bell";
  std::filesystem::path file;  // used when non-empty
  double p = 1.0;              // werner
  int n_qubits = 2;            // product, mixed, random
  std::size_t rank = 1;        // random
  std::uint64_t seed = 0;      // random
};

DensityMatrix resolve_state(const StateSource& src);

struct NoiseStudyExperiment {
  std::string scheme = "fsrm";
  int k = 1;
};

struct ExperimentConfig {
  StateSource state;
  std::string scheme = "fsrm";   // fsrm | rm | cs
  std::string quantity = "p2";   // p2 | p3 | n3
  std::string partition;         // empty: qubit 0 in A
  std::size_t n_u = 10000;
  int n_m = 0;                   // 0: 2 for p2, 3 for p3/n3
  NoiseModel noise;
  std::optional<std::filesystem::path> povm;
  std::optional<std::filesystem::path> coefficients;
  std::uint64_t seed = 1;
  std::string out;
  Pooling pooling = Pooling::all;
  unsigned threads = 0;

  // converge
  std::vector<std::size_t> n_list;
  std::vector<int> n_m_list = {2, 200};
  std::size_t repetitions = 20;

  // noise-study
  std::vector<NoiseStudyExperiment> experiments;
  std::vector<double> epsilons;
  std::size_t dimension = 2;

  // make-povm: per-port fidelities, or one value for all ports
  std::array<double, 4> fidelities = {0.7730, 0.5495, 0.7611, 0.8541};
  double rotation = 0.05;
};

// Throws ValidationError on unknown keys, wrong types, or out-of-range values.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig read_config_file(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

Partition resolve_partition(const ExperimentConfig& cfg, int n_qubits);
int resolved_shots(const ExperimentConfig& cfg);

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

}  // namespace fsrm
