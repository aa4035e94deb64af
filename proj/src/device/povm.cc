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

#include "fsrm/device/povm.h"

#include <cmath>
#include <string>

#include "fsrm/ensembles/ensembles.h"
#include "fsrm/errors.h"
#include "fsrm/qcore/eigen.h"
#include "fsrm/qcore/state_io.h"

namespace fsrm {

namespace {

constexpr double kPsdTol = -1e-9;
constexpr double kSumTol = 1e-8;

const char* const kLabels[4] = {"00", "01", "10", "11"};

}  // namespace

void NoisyBellPovm::validate() const {
  ComplexMatrix sum(4, 4);
  for (const auto& m : elements) {
    if (m.rows() != 4 || m.cols() != 4) throw ValidationError("POVM: elements must be 4x4");
    if (!m.all_finite()) throw ValidationError("POVM: non-finite entry");
    if (!is_hermitian(m, 1e-9)) throw ValidationError("POVM: element not Hermitian");
    if (hermitian_eigenvalues(m).front() < kPsdTol) throw ValidationError("POVM: element not PSD");
    sum += m;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(4)) > kSumTol)
    throw ValidationError("POVM: elements do not sum to the identity");
}

std::array<std::array<Complex, 4>, 4> bell_vectors() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{{r, 0, 0, r}, {0, r, r, 0}, {r, 0, 0, -r}, {0, r, -r, 0}}};
}

NoisyBellPovm bell_projectors() {
  NoisyBellPovm out;
  const auto v = bell_vectors();
  for (std::size_t c = 0; c < 4; ++c) out.elements[c] = outer(v[c], v[c]);
  return out;
}

ComplexMatrix bell_rotation() {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix h{{r, r}, {r, -r}};
  const ComplexMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  return matmul(kron(h, ComplexMatrix::identity(2)), cnot);
}

NoisyBellPovm synthetic_bell_povm(const std::array<double, 4>& fidelities, double rotation,
                                  SeededStream& rng) {
  for (double f : fidelities)
    if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("synthetic POVM: fidelities must lie in [0, 1]");
  const auto ideal = bell_projectors();
  NoisyBellPovm out;
  for (std::size_t c = 0; c < 4; ++c) {
    ComplexMatrix m = ideal.elements[c] * Complex{fidelities[c]};
    for (std::size_t d = 0; d < 4; ++d)
      if (d != c) m += ideal.elements[d] * Complex{(1.0 - fidelities[d]) / 3.0};
    out.elements[c] = std::move(m);
  }
  if (rotation != 0.0) {
    const auto v = herm_expi(sample_gue(4, rng), rotation);
    for (auto& m : out.elements) m = conjugate_by(v, m);
  }
  out.validate();
  return out;
}

std::array<double, 4> port_fidelities(const NoisyBellPovm& povm) {
  const auto v = bell_vectors();
  std::array<double, 4> out{};
  for (std::size_t c = 0; c < 4; ++c) {
    Complex acc{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) acc += std::conj(v[c][i]) * povm.elements[c](i, j) * v[c][j];
    out[c] = acc.real();
  }
  return out;
}

nlohmann::json povm_to_json(const NoisyBellPovm& povm) {
  auto elements = nlohmann::json::array();
  for (const auto& m : povm.elements) elements.push_back(matrix_to_json(m));
  return {{"labels", {kLabels[0], kLabels[1], kLabels[2], kLabels[3]}}, {"elements", elements}};
}

NoisyBellPovm povm_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("elements") || j.size() != 2)
    throw ValidationError("POVM file: expected exactly {\"labels\", \"elements\"}");
  const auto& labels = j["labels"];
  const auto& elements = j["elements"];
  if (!labels.is_array() || labels.size() != 4 || !elements.is_array() || elements.size() != 4)
    throw ValidationError("POVM file: need four labels and four elements");
  NoisyBellPovm out;
  std::array<bool, 4> filled{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!labels[i].is_string()) throw ValidationError("POVM file: labels must be strings");
    const auto label = labels[i].get<std::string>();
    std::size_t slot = 4;
    for (std::size_t c = 0; c < 4; ++c)
      if (label == kLabels[c]) slot = c;
    if (slot == 4 || filled[slot]) throw ValidationError("POVM file: bad or repeated label " + label);
    filled[slot] = true;
    out.elements[slot] = matrix_from_json(elements[i]);
  }
  out.validate();
  return out;
}

NoisyBellPovm read_povm_file(const std::filesystem::path& path) {
  return povm_from_json(read_json_file(path));
}

}  // namespace fsrm
