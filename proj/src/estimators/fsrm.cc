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

#include "fsrm/estimators/fsrm.h"

#include <bit>
#include <cmath>

#include "fsrm/errors.h"

namespace fsrm {

namespace {

double signed_power_of_two(int e) { return std::ldexp(e % 2 == 0 ? 1.0 : -1.0, e); }  // (-2)^e

int max_multiplicity(int a, int b, int c) {
  if (a == b && b == c) return 3;
  if (a == b || b == c || a == c) return 2;
  return 1;
}

void check_shape(const ShotRecord& rec, const Partition& part) {
  if (part.size() != rec.setting.n_qubits())
    throw ValidationError("o3: partition length does not match the record");
}

}  // namespace

int hamming(std::uint32_t b1, std::uint32_t b2) { return std::popcount(b1 ^ b2); }

int hamming(std::string_view b1, std::string_view b2) {
  if (b1.size() != b2.size()) throw ValidationError("hamming: length mismatch");
  int h = 0;
  for (std::size_t i = 0; i < b1.size(); ++i) h += b1[i] != b2[i];
  return h;
}

double o2(std::uint32_t b1, std::uint32_t b2, int n_qubits) {
  const std::uint32_t mask = n_qubits >= 32 ? ~0u : ((1u << n_qubits) - 1u);
  if ((b1 | b2) & ~mask) throw ValidationError("o2: outcome wider than n_qubits");
  return std::ldexp(signed_power_of_two(-hamming(b1, b2)), n_qubits);
}

double g_val(int b1, int b2, int b3) { return 1.0 + signed_power_of_two(max_multiplicity(b1, b2, b3) - 1); }

double f_val(int beta1, int beta2, int beta3) {
  for (int b : {beta1, beta2, beta3})
    if (b < 0 || b > 3) throw ValidationError("f_val: Bell labels must be in 0..3");
  return 1.0 - signed_power_of_two(max_multiplicity(beta1, beta2, beta3));
}

double o3(const ShotRecord& rec, std::size_t i, std::size_t j, std::size_t l, const Partition& part,
          const CoefficientTable* coeffs) {
  check_shape(rec, part);
  const int n = rec.setting.n_qubits();
  const std::uint32_t x = rec.outcomes.at(i), y = rec.outcomes.at(j), z = rec.outcomes.at(l);
  double value = 0.5;
  int sign = 0;
  for (int q = 0; q < n; ++q) {
    if (!rec.setting.s[static_cast<std::size_t>(q)]) {
      value *= g_val(outcome_bit(x, n, q), outcome_bit(y, n, q), outcome_bit(z, n, q));
    } else if (part.in_a(q)) {
      sign ^= 1;
    }
  }
  for (const auto& [q1, q2] : rec.setting.pairs) {
    auto label = [&](std::uint32_t b) { return 2 * outcome_bit(b, n, q1) + outcome_bit(b, n, q2); };
    const int c1 = label(x), c2 = label(y), c3 = label(z);
    value *= coeffs ? coeffs->at(c1, c2, c3) : f_val(c1, c2, c3);
  }
  return sign ? -value : value;
}

double o3(const ShotRecord& rec, const Partition& part, const CoefficientTable* coeffs) {
  if (rec.outcomes.size() != 3) throw ValidationError("o3: record must hold exactly three shots");
  return o3(rec, 0, 1, 2, part, coeffs);
}

MomentEstimate estimate_p2_fsrm(std::span<const ShotRecord> records, Pooling pooling) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& rec : records) {
    if (!rec.setting.is_computational()) continue;
    const std::size_t m = rec.outcomes.size();
    if (m < 2) throw ValidationError("p2 estimate: rounds need at least two shots");
    const int n = rec.setting.n_qubits();
    double sum = 0.0;
    std::size_t count = 0;
    if (pooling == Pooling::all) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j, ++count) sum += o2(rec.outcomes[i], rec.outcomes[j], n);
    } else {
      for (std::size_t i = 0; i + 1 < m; i += 2, ++count) sum += o2(rec.outcomes[i], rec.outcomes[i + 1], n);
    }
    values.push_back(sum / static_cast<double>(count));
  }
  return summarize(std::move(values));
}

MomentEstimate estimate_p3_fsrm(std::span<const ShotRecord> records, const Partition& part,
                                const CoefficientTable* coeffs, Pooling pooling) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& rec : records) {
    const std::size_t m = rec.outcomes.size();
    if (m < 3) throw ValidationError("p3 estimate: rounds need at least three shots");
    double sum = 0.0;
    std::size_t count = 0;
    if (pooling == Pooling::all) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          for (std::size_t l = j + 1; l < m; ++l, ++count) sum += o3(rec, i, j, l, part, coeffs);
    } else {
      for (std::size_t i = 0; i + 2 < m; i += 3, ++count) sum += o3(rec, i, i + 1, i + 2, part, coeffs);
    }
    values.push_back(sum / static_cast<double>(count));
  }
  return summarize(std::move(values));
}

MomentEstimate estimate_p2_rm(std::span<const ShotRecord> records) {
  std::vector<double> values;
  values.reserve(records.size());
  std::vector<double> freq;  // counts
  for (const auto& rec : records) {
    if (!rec.setting.is_computational()) continue;
    const std::size_t m = rec.outcomes.size();
    if (m < 2) throw ValidationError("RM estimate: N_M must be >= 2");
    const int n = rec.setting.n_qubits();
    freq.assign(std::size_t{1} << n, 0.0);
    for (auto b : rec.outcomes) freq.at(b) += 1.0;
    double v = 0.0;
    for (std::uint32_t b = 0; b < freq.size(); ++b) {
      if (freq[b] == 0.0) continue;
      for (std::uint32_t c = 0; c < freq.size(); ++c)
        if (freq[c] != 0.0) v += o2(b, c, n) * freq[b] * freq[c];
    }
    values.push_back(v / (static_cast<double>(m) * static_cast<double>(m)));
  }
  return summarize(std::move(values));
}

}  // namespace fsrm
