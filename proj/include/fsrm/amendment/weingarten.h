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

#include "fsrm/qcore/matrix.h"
#include "fsrm/qcore/permutation.h"

namespace fsrm {

// Gram matrix of the permutation operators on (C^d)^{⊗k} and its
// pseudo-inverse. For d < k the operators are linearly dependent and the Gram
// matrix is singular; the Moore-Penrose inverse still yields the orthogonal
// projection onto their span, which is what the twirl needs.
struct WeingartenData {
  int k = 0;
  std::size_t d = 0;
  std::vector<Permutation> perms;            // Permutation::all(k) order
  std::vector<std::vector<std::size_t>> maps;  // index map of each W_sigma on d^k
  ComplexMatrix gram;                        // Tr[W_sigma^dagger W_pi] = d^{#cycles(sigma^-1 pi)}
  ComplexMatrix wg;                          // pseudo-inverse of gram
  int rank = 0;
  double K = 0.0;                            // max_sigma sum_pi |wg(sigma, pi)|

  // Product form for a twirl acting independently on two sides.
  double two_sided_K() const { return K * K; }
};

WeingartenData weingarten(int k, std::size_t d);

// Haar k-fold twirl E_U U^{⊗k} A U^{dagger ⊗k} on d^k, computed as the
// Hilbert-Schmidt projection onto the span of permutation operators.
ComplexMatrix twirl_operator(const ComplexMatrix& a, const WeingartenData& w);

// Independent twirls on `sites` subsystems, each of dimension d, with the k
// copies laid out copy-major (site j of copy c is tensor digit c * sites + j).
ComplexMatrix twirl_local(const ComplexMatrix& a, const WeingartenData& w, int sites);

}  // namespace fsrm
