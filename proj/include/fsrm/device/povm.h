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
#include <filesystem>

#include "fsrm/ensembles/seeded_stream.h"
#include "fsrm/qcore/matrix.h"
#include "json.hpp"

namespace fsrm {

// Four-outcome measurement on a qubit pair, elements indexed by the label
// beta = 2 b_first + b_second. Basis index of the pair is 2 x_first + x_second.
struct NoisyBellPovm {
  std::array<ComplexMatrix, 4> elements;

  // Each element Hermitian and PSD (min eigenvalue >= -1e-9), sum equal to
  // the identity within 1e-8. Throws ValidationError.
  void validate() const;
};

// Bell vectors in label order: Phi+, Psi+, Phi-, Psi-.
std::array<std::array<Complex, 4>, 4> bell_vectors();

NoisyBellPovm bell_projectors();

// (H x I) CNOT, control on the first qubit. Maps the Bell vector with label
// beta onto the basis vector |beta>.
ComplexMatrix bell_rotation();

// Confusion-matrix model: M_c = F_c P_c + sum_{d != c} (1 - F_d)/3 P_d, with P_c
// the Bell projectors, so <Bell_c|M_c|Bell_c> = F_c and the elements sum to I.
// A nonzero rotation then conjugates every element by e^{i rotation G}, G a
// GUE(4) draw from rng, adding a coherent error that leaves the set a POVM.
NoisyBellPovm synthetic_bell_povm(const std::array<double, 4>& fidelities, double rotation,
                                  SeededStream& rng);

// Diagonal fidelities <Bell_c|M_c|Bell_c>.
std::array<double, 4> port_fidelities(const NoisyBellPovm& povm);

// {"labels": ["00","01","10","11"], "elements": [4 matrices]}
nlohmann::json povm_to_json(const NoisyBellPovm& povm);
NoisyBellPovm povm_from_json(const nlohmann::json& j);
NoisyBellPovm read_povm_file(const std::filesystem::path& path);

}  // namespace fsrm
