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

#include "fsrm/estimators/moment.h"

#include <cmath>

#include "fsrm/errors.h"

namespace fsrm {

MomentEstimate summarize(std::vector<double> values) {
  if (values.empty()) throw ValidationError("estimate: no usable rounds");
  MomentEstimate e;
  e.rounds_used = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
  }
  e.per_round_values = std::move(values);
  return e;
}

MomentEstimate combine_n3(const MomentEstimate& p2, const MomentEstimate& p3) {
  MomentEstimate e;
  e.mean = p2.mean * p2.mean - p3.mean;
  e.std_error = std::hypot(2.0 * p2.mean * p2.std_error, p3.std_error);
  e.rounds_used = p2.rounds_used + p3.rounds_used;
  return e;
}

}  // namespace fsrm
