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

#include "fsrm/ensembles/ensembles.h"

#include <cmath>
#include <stdexcept>

#include "fsrm/errors.h"

namespace fsrm {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, SeededStream& rng) {
  ComplexMatrix g(rows, cols);
  for (auto& z : g.data()) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = Complex{re, im} * kInvSqrt2;
  }
  return g;
}

// Modified Gram-Schmidt with one re-orthogonalization pass; returns false if
// a column collapses.
bool orthonormalize_columns(ComplexMatrix& q) {
  const std::size_t n = q.rows();
  for (std::size_t j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex dot{};
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(q(r, j));
    norm = std::sqrt(norm);
    if (!(norm > 1e-10)) return false;
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
  }
  return true;
}

}  // namespace

ComplexMatrix sample_cue(std::size_t d, SeededStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_cue: dimension must be positive");
  for (int attempt = 0; attempt < 3; ++attempt) {
    ComplexMatrix q = ginibre(d, d, rng);
    if (orthonormalize_columns(q)) return q;
  }
  throw SolverError("sample_cue: degenerate Ginibre draw three times in a row");
}

LocalUnitary sample_local_unitary(int n_qubits, SeededStream& rng) {
  if (n_qubits < 1) throw std::invalid_argument("sample_local_unitary: need at least one qubit");
  LocalUnitary u;
  u.factors.reserve(static_cast<std::size_t>(n_qubits));
  for (int j = 0; j < n_qubits; ++j) u.factors.push_back(sample_cue(2, rng));
  return u;
}

ComplexMatrix sample_gue(std::size_t d, SeededStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_gue: dimension must be positive");
  ComplexMatrix h(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < d; ++j) {
      const double x = rng.normal();
      const double y = rng.normal();
      h(i, j) = Complex{x, y} * kInvSqrt2;
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

DensityMatrix sample_density_matrix(int n_qubits, std::size_t rank, SeededStream& rng) {
  if (n_qubits < 1) throw ValidationError("random state: n_qubits must be >= 1");
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (rank < 1 || rank > dim) throw ValidationError("random state: rank must lie in [1, 2^n]");
  const auto g = ginibre(dim, rank, rng);
  ComplexMatrix m = matmul(g, dagger(g));
  m *= Complex{1.0 / trace(m).real()};
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  }
  return DensityMatrix(n_qubits, std::move(m));
}

}  // namespace fsrm
