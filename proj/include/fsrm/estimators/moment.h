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

#include <cstddef>
#include <vector>

namespace fsrm {

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t rounds_used = 0;
  std::vector<double> per_round_values;
};

// Mean and sample-std / sqrt(N) of i.i.d. per-round values. Needs at least
// one value; a single value has std_error 0.
MomentEstimate summarize(std::vector<double> values);

// N3 = p2^2 - p3 from independent estimates, first-order error propagation.
MomentEstimate combine_n3(const MomentEstimate& p2, const MomentEstimate& p3);

}  // namespace fsrm
