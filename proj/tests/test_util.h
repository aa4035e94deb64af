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

// Test-only helpers: seeded random fixtures and brute-force oracles that do
// not route through the library code they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "fsrm/qcore/matrix.h"
#include "fsrm/qcore/state.h"

namespace fsrm::testing {

inline ComplexMatrix random_complex(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = Complex{normal(gen), normal(gen)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  auto g = random_complex(dim, dim, seed);
  return (g + dagger(g)) * Complex{0.5};
}

// rho = G G^dagger / Tr, G a dim x rank Ginibre matrix.
inline DensityMatrix random_state(int n_qubits, std::size_t rank, std::uint64_t seed) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  auto g = random_complex(dim, rank, seed);
  auto m = matmul(g, dagger(g));
  const double tr = trace(m).real();
  m *= Complex{1.0 / tr};
  // exact Hermitian symmetrization against rounding
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = m(i, i).real();
  return DensityMatrix(n_qubits, std::move(m));
}

// Faddeev-LeVerrier: coefficients c[0..n] of det(x I - M) = sum c[i] x^{n-i}.
inline std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  ComplexMatrix mk = ComplexMatrix::zeros(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    ComplexMatrix inner = mk;
    for (std::size_t i = 0; i < n; ++i) inner(i, i) += c[k - 1];
    mk = matmul(m, inner);
    c[k] = -trace(mk) / static_cast<double>(k);
  }
  return c;
}

// Coefficients of prod (x - r_i), highest power first.
inline std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace fsrm::testing
