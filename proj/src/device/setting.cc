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

#include "fsrm/device/setting.h"

#include "fsrm/errors.h"

namespace fsrm {

MeasurementSetting MeasurementSetting::from_bits(std::vector<std::uint8_t> bits) {
  MeasurementSetting out;
  out.s = std::move(bits);
  int open = -1;
  for (int j = 0; j < out.n_qubits(); ++j) {
    if (out.s[static_cast<std::size_t>(j)] > 1) throw ValidationError("setting: entries must be 0 or 1");
    if (out.s[static_cast<std::size_t>(j)] == 0) continue;
    if (open < 0) {
      open = j;
    } else {
      out.pairs.emplace_back(open, j);
      open = -1;
    }
  }
  if (open >= 0) throw ValidationError("setting: odd number of Bell-measured qubits");
  return out;
}

MeasurementSetting MeasurementSetting::computational(int n_qubits) {
  return from_bits(std::vector<std::uint8_t>(static_cast<std::size_t>(n_qubits), 0));
}

std::string MeasurementSetting::to_string() const {
  std::string out;
  for (auto b : s) out += b ? '1' : '0';
  return out;
}

void MeasurementSetting::validate() const {
  std::vector<int> seen(s.size(), 0);
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n_qubits() || b >= n_qubits() || a == b)
      throw ValidationError("setting: pair index out of range");
    if (!s[static_cast<std::size_t>(a)] || !s[static_cast<std::size_t>(b)])
      throw ValidationError("setting: pair touches a computational-basis qubit");
    if (seen[static_cast<std::size_t>(a)]++ || seen[static_cast<std::size_t>(b)]++)
      throw ValidationError("setting: pairs overlap");
  }
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j] > 1 || (s[j] == 1) != (seen[j] == 1)) throw ValidationError("setting: pairs do not cover s");
}

MeasurementSetting sample_setting(int n_qubits, SeededStream& rng) {
  if (n_qubits < 2) throw ValidationError("sample_setting: need at least two qubits");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_qubits));
  std::uint8_t parity = 0;
  for (int j = 0; j + 1 < n_qubits; ++j) {
    bits[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(rng.bits() & 1u);
    parity ^= bits[static_cast<std::size_t>(j)];
  }
  bits.back() = parity;
  return MeasurementSetting::from_bits(std::move(bits));
}

}  // namespace fsrm
