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
#include <span>
#include <vector>

#include "fsrm/device/device.h"
#include "fsrm/estimators/moment.h"
#include "fsrm/qcore/state.h"

namespace fsrm {

// tensor_j (3 u_j^dagger |b_j><b_j| u_j - I)
struct ShadowSnapshot {
  ComplexMatrix mat;
};

ShadowSnapshot shadow_snapshot(const LocalUnitary& u, std::uint32_t outcome);

// One snapshot per computational-basis round, from its first shot and the
// nominal unitary.
std::vector<ShadowSnapshot> snapshots_from_records(std::span<const ShotRecord> records);

// U-statistics over distinct snapshot pairs / triples. rounds_used is the
// snapshot count; std_error follows the first-order (Hoeffding) variance
// m^2 Var(h1) / N of an order-m U-statistic, h1 estimated per snapshot.
MomentEstimate estimate_p2_cs(std::span<const ShadowSnapshot> snapshots);

struct TripleSampling {
  std::size_t max_triples = 200000;  // all C(N,3) triples when fewer
  std::uint64_t seed = 0;
};

MomentEstimate estimate_p3_cs(std::span<const ShadowSnapshot> snapshots, const Partition& part,
                              const TripleSampling& sampling = {});

}  // namespace fsrm
