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

#include "fsrm/amendment/system.h"

#include <stdexcept>

#include "fsrm/qcore/permutation.h"

namespace fsrm {

namespace {

// Copy-major index (digit 2c + j) -> site-major index (digit 3j + c) for
// three copies of two qubits.
std::size_t site_major(std::size_t x) {
  std::size_t y = 0;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t c = 0; c < 3; ++c) y = 2 * y + ((x >> (5 - (2 * c + j))) & 1u);
  return y;
}

ComplexMatrix copy_major(const ComplexMatrix& site_major_op) {
  ComplexMatrix out(64, 64);
  for (std::size_t x = 0; x < 64; ++x)
    for (std::size_t y = 0; y < 64; ++y) out(x, y) = site_major_op(site_major(x), site_major(y));
  return out;
}

std::vector<std::vector<std::size_t>> row_maps() {
  std::vector<std::vector<std::size_t>> maps;
  const auto perms = Permutation::all(3);
  for (const auto& a : perms)
    for (const auto& b : perms) {
      const Permutation sites[2] = {a, b};
      maps.push_back(local_permutation_index_map(sites, 2));
    }
  return maps;
}

}  // namespace

ComplexMatrix m_plus() {
  return permutation_matrix(Permutation::cyclic_forward(), 2).mat +
         permutation_matrix(Permutation::cyclic_backward(), 2).mat;
}

ComplexMatrix m_minus() {
  return permutation_matrix(Permutation::cyclic_forward(), 2).mat -
         permutation_matrix(Permutation::cyclic_backward(), 2).mat;
}

ComplexMatrix build_m_plus_pair() { return copy_major(kron(m_plus(), m_plus())); }
ComplexMatrix build_m_minus_target() { return copy_major(kron(m_minus(), m_minus())); }

LinearSystem build_linear_system(const NoisyBellPovm& povm) {
  povm.validate();
  const auto maps = row_maps();
  const auto target = build_m_minus_target();
  LinearSystem sys;
  sys.matrix = ComplexMatrix(maps.size(), 64);
  sys.target.resize(maps.size());
  const auto& m = povm.elements;
  for (std::size_t r = 0; r < maps.size(); ++r) {
    sys.target[r] = trace_with_permutation(target, maps[r]);
    // Tr[(M1 ⊗ M2 ⊗ M3) W] = sum_x prod_c M_c[x_c, map(x)_c], x_c the 4-dim
    // index of copy c.
    for (int c1 = 0; c1 < 4; ++c1)
      for (int c2 = 0; c2 < 4; ++c2)
        for (int c3 = 0; c3 < 4; ++c3) {
          Complex t{};
          for (std::size_t x = 0; x < 64; ++x) {
            const std::size_t y = maps[r][x];
            t += m[static_cast<std::size_t>(c1)](x >> 4, y >> 4) *
                 m[static_cast<std::size_t>(c2)]((x >> 2) & 3u, (y >> 2) & 3u) *
                 m[static_cast<std::size_t>(c3)](x & 3u, y & 3u);
          }
          sys.matrix(r, static_cast<std::size_t>(coefficient_index(c1, c2, c3))) = t;
        }
  }
  return sys;
}

double l1_residual(const LinearSystem& sys, const std::vector<double>& coeffs) {
  if (coeffs.size() != sys.matrix.cols()) throw std::invalid_argument("l1_residual: coefficient count");
  double total = 0.0;
  for (std::size_t r = 0; r < sys.matrix.rows(); ++r) {
    Complex acc = -sys.target[r];
    for (std::size_t c = 0; c < coeffs.size(); ++c) acc += sys.matrix(r, c) * coeffs[c];
    total += std::abs(acc);
  }
  return total;
}

}  // namespace fsrm
