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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fsrm/ensembles/seeded_stream.h"

namespace fsrm {

// s[j] = 1 sends qubit j into a Bell measurement, 0 into the computational
// basis. The 1-positions are paired consecutively in ascending order.
struct MeasurementSetting {
  std::vector<std::uint8_t> s;
  std::vector<std::pair<int, int>> pairs;

  // Builds the setting with the canonical pairing; throws ValidationError on
  // odd weight or non-binary entries.
  static MeasurementSetting from_bits(std::vector<std::uint8_t> bits);
  static MeasurementSetting computational(int n_qubits);

  int n_qubits() const { return static_cast<int>(s.size()); }
  bool is_computational() const { return pairs.empty(); }
  std::string to_string() const;
  void validate() const;
};

// Uniform over the 2^{n-1} even-weight strings.
MeasurementSetting sample_setting(int n_qubits, SeededStream& rng);

}  // namespace fsrm
