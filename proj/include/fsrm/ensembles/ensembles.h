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

#include "fsrm/ensembles/seeded_stream.h"
#include "fsrm/qcore/matrix.h"
#include "fsrm/qcore/state.h"

namespace fsrm {

/// U = ⊗_j u^{(j)}, one 2x2 unitary per qubit (qubit 0 leftmost).
struct LocalUnitary {
  std::vector<ComplexMatrix> factors;

  int n_qubits() const { return static_cast<int>(factors.size()); }
  ComplexMatrix full() const { return kron_all(factors); }
};

/// Haar unitary on C^d: Gram-Schmidt QR of a complex Ginibre matrix. The
/// Gram-Schmidt R has a positive real diagonal, which is the phase fix that
/// makes Q Haar distributed. A numerically degenerate draw is redrawn; after
/// three failures SolverError is thrown.
ComplexMatrix sample_cue(std::size_t d, SeededStream& rng);

LocalUnitary sample_local_unitary(int n_qubits, SeededStream& rng);

/// GUE draw: real N(0,1) diagonal, (x + iy)/sqrt(2) off-diagonal, exactly
/// Hermitian by construction.
ComplexMatrix sample_gue(std::size_t d, SeededStream& rng);

/// rho = G G^dagger / Tr with G a 2^n x rank Ginibre matrix.
DensityMatrix sample_density_matrix(int n_qubits, std::size_t rank, SeededStream& rng);

}  // namespace fsrm
