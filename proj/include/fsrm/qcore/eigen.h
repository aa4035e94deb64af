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

#include <vector>

#include "fsrm/qcore/matrix.h"

namespace fsrm {

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Input must be Hermitian within 1e-8 (max-entry norm), otherwise
/// std::invalid_argument is thrown. Sweeps run until the off-diagonal
/// Frobenius mass drops below 1e-12 relative to the matrix norm, or 100
/// sweeps; failing to converge throws SolverError.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Sum of |eigenvalues| for a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

// e^{i eps H} for Hermitian H. eps == 0 returns the identity exactly.
ComplexMatrix herm_expi(const ComplexMatrix& h, double eps);

// V f(diag) V^dagger for a Hermitian input.
template <typename F>
ComplexMatrix hermitian_function(const EigenSystem& es, F&& f) {
  const std::size_t n = es.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex fk = f(es.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = es.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.vectors(j, k));
    }
  }
  return out;
}

}  // namespace fsrm
