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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fsrm/qcore/matrix.h"

namespace fsrm {

/// Validated n-qubit mixed state. Construction enforces Hermiticity
/// (1e-10), unit trace (1e-10) and PSD up to -1e-9; violations throw
/// ValidationError naming the broken invariant.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, ComplexMatrix mat);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  int n_qubits_;
  ComplexMatrix mat_;
};

/// Bipartition of the qubits: bit j = 1 puts qubit j in A, 0 in B.
/// Qubit 0 is the leftmost character and the most significant tensor factor.
class Partition {
 public:
  explicit Partition(std::vector<std::uint8_t> bits);
  static Partition parse(std::string_view text);  // e.g. "10"
  // Qubit 0 in A, everything else in B.
  static Partition first_qubit(int n_qubits);

  int size() const { return static_cast<int>(bits_.size()); }
  bool in_a(int qubit) const { return bits_[static_cast<std::size_t>(qubit)] != 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  bool both_sides_nonempty() const;
  Partition mirrored() const;
  std::string to_string() const;

 private:
  std::vector<std::uint8_t> bits_;
};

// Transpose on every qubit with a_j = 0 (subsystem B).
ComplexMatrix partial_transpose(const DensityMatrix& rho, const Partition& part);
ComplexMatrix partial_transpose(const ComplexMatrix& m, int n_qubits, const Partition& part);

double negativity(const DensityMatrix& rho, const Partition& part);

// Tr[(rho^{T_B})^k] by explicit matrix power.
double exact_pt_moment(const DensityMatrix& rho, const Partition& part, unsigned k);

double purity(const DensityMatrix& rho);

// p2^2 - p3; positive certifies NPT entanglement.
double p3_ppt_value(double p2, double p3);

/// Tr[(⊗_{j∈A} W_fwd ⊗_{j∈B} W_bwd) rho^{⊗3}] by explicit contraction on
/// the (2^n)^3-dim copy space. Independent route to the third PT moment.
double pt_moment3_by_permutation(const DensityMatrix& rho, const Partition& part);

// Builtin states.
DensityMatrix bell_state();                   // |Φ+><Φ+|
DensityMatrix werner_state(double p);         // p|Φ+><Φ+| + (1-p) I/4
DensityMatrix product_zero_state(int n_qubits);
DensityMatrix maximally_mixed_state(int n_qubits);

}  // namespace fsrm
