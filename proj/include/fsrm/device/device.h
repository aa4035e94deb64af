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
#include <vector>

#include "fsrm/device/povm.h"
#include "fsrm/device/setting.h"
#include "fsrm/ensembles/ensembles.h"
#include "fsrm/ensembles/seeded_stream.h"
#include "fsrm/qcore/state.h"

namespace fsrm {

// Gaussian unitary noise: each applied single-qubit unitary u_j becomes
// e^{i eps H_j} u_j with H_j drawn from GUE(2). With per_round_fixed the same
// H_j hold for every shot of a round; otherwise they are redrawn per shot.
// Noise draws come from a child stream, so eps = 0 leaves the outcome stream
// unchanged.
struct NoiseModel {
  enum class Kind { none, gaussian };
  Kind kind = Kind::none;
  double epsilon = 0.0;
  bool per_round_fixed = true;

  bool active() const { return kind == Kind::gaussian && epsilon != 0.0; }
};

struct ShotRecord {
  std::uint64_t round_id = 0;
  LocalUnitary unitary;  // the nominal unitary, as known to post-processing
  MeasurementSetting setting;
  // Outcome strings as integers, qubit 0 in the most significant bit. A Bell
  // pair (j, j') writes beta = 2 b_j + b_j' into its two positions.
  std::vector<std::uint32_t> outcomes;
};

inline int outcome_bit(std::uint32_t outcome, int n_qubits, int qubit) {
  return static_cast<int>((outcome >> (n_qubits - 1 - qubit)) & 1u);
}

// U rho U^dagger with U applied one qubit at a time.
ComplexMatrix apply_local_unitary(const LocalUnitary& u, const ComplexMatrix& rho);

// Pr(b) = Tr[E_b U rho U^dagger] with E_b the product of |b_j><b_j| on
// computational sites and the POVM element for each pair's label.
std::vector<double> born_probabilities(const DensityMatrix& rho, const LocalUnitary& u,
                                       const MeasurementSetting& setting,
                                       const NoisyBellPovm& povm = bell_projectors());

ShotRecord sample_shots(const DensityMatrix& rho, const LocalUnitary& u,
                        const MeasurementSetting& setting, int shots, SeededStream& rng,
                        const NoiseModel& noise = {}, const NoisyBellPovm& povm = bell_projectors());

struct RoundPlan {
  std::size_t rounds = 0;  // N_U
  int shots = 0;           // N_M
  bool random_settings = false;  // false: every round is computational basis only
  unsigned threads = 0;          // 0 = hardware concurrency
};

// Round r draws U, then the setting, then the shots from SeededStream(seed, r).
// The output is ordered by round id and independent of the worker count.
std::vector<ShotRecord> run_rounds(const DensityMatrix& rho, const RoundPlan& plan,
                                   std::uint64_t seed, const NoiseModel& noise = {},
                                   const NoisyBellPovm& povm = bell_projectors());

}  // namespace fsrm
