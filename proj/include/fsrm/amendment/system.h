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

#include "fsrm/device/povm.h"
#include "fsrm/qcore/matrix.h"

namespace fsrm {

// W_fwd ± W_bwd on three copies of one qubit (8 x 8).
ComplexMatrix m_plus();
ComplexMatrix m_minus();

// Two-site operators on three copies of a qubit pair, copy-major: tensor
// digit 2c + j holds qubit j of copy c, matching rho ⊗ rho ⊗ rho.
ComplexMatrix build_m_plus_pair();    // M_+^A ⊗ M_+^B
ComplexMatrix build_m_minus_target(); // M_-^A ⊗ M_-^B

// Coefficient index of the label triple (c1, c2, c3), each in 0..3.
constexpr int coefficient_index(int c1, int c2, int c3) { return 16 * c1 + 4 * c2 + c3; }

// One row per (sigma_A, sigma_B) in S3 x S3, one column per label triple:
//   A[row][c] = Tr[(M_c1 ⊗ M_c2 ⊗ M_c3) (W_sigmaA ⊗ W_sigmaB)]
//   target[row] = Tr[T (W_sigmaA ⊗ W_sigmaB)]
// so that sum_c o_c M_c1 ⊗ M_c2 ⊗ M_c3 twirls to the same operator as T
// exactly when A o = target.
struct LinearSystem {
  ComplexMatrix matrix;         // 36 x 64
  std::vector<Complex> target;  // 36
};

LinearSystem build_linear_system(const NoisyBellPovm& povm);

// sum_rows |A o - target|.
double l1_residual(const LinearSystem& sys, const std::vector<double>& coeffs);

}  // namespace fsrm
