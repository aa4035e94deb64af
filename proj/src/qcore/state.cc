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

#include "fsrm/qcore/state.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fsrm/errors.h"
#include "fsrm/qcore/eigen.h"
#include "fsrm/qcore/permutation.h"

namespace fsrm {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = -1e-9;

std::size_t qubit_dim(int n_qubits) { return std::size_t{1} << n_qubits; }

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix mat) : n_qubits_(n_qubits), mat_(std::move(mat)) {
  if (n_qubits < 1 || n_qubits > 12) throw ValidationError("density matrix: n_qubits out of range");
  if (mat_.rows() != qubit_dim(n_qubits) || mat_.cols() != qubit_dim(n_qubits))
    throw ValidationError("density matrix: dimension is not 2^n_qubits");
  if (!mat_.all_finite()) throw ValidationError("density matrix: non-finite entry");
  if (!is_hermitian(mat_, kHermitianTol)) throw ValidationError("density matrix: not Hermitian");
  const Complex tr = trace(mat_);
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) throw ValidationError("density matrix: trace is not 1");
  if (hermitian_eigenvalues(mat_).front() < kPsdTol)
    throw ValidationError("density matrix: not positive semidefinite");
}

Partition::Partition(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw ValidationError("partition: empty");
  for (auto b : bits_)
    if (b > 1) throw ValidationError("partition: bits must be 0 or 1");
}

Partition Partition::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw ValidationError("partition: expected a string of 0/1");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return Partition(std::move(bits));
}

Partition Partition::first_qubit(int n_qubits) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_qubits), 0);
  bits[0] = 1;
  return Partition(std::move(bits));
}

bool Partition::both_sides_nonempty() const {
  const auto ones = std::count(bits_.begin(), bits_.end(), 1);
  return ones > 0 && ones < static_cast<long>(bits_.size());
}

Partition Partition::mirrored() const {
  auto bits = bits_;
  for (auto& b : bits) b = static_cast<std::uint8_t>(1 - b);
  return Partition(std::move(bits));
}

std::string Partition::to_string() const {
  std::string s;
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int n_qubits, const Partition& part) {
  if (part.size() != n_qubits) throw std::invalid_argument("partial_transpose: partition length mismatch");
  const std::size_t dim = qubit_dim(n_qubits);
  if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("partial_transpose: dimension mismatch");
  std::size_t mask = 0;
  for (int j = 0; j < n_qubits; ++j)
    if (!part.in_a(j)) mask |= std::size_t{1} << (n_qubits - 1 - j);
  ComplexMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      // swap the B-bits between row and column index
      const std::size_t r2 = (r & ~mask) | (c & mask);
      const std::size_t c2 = (c & ~mask) | (r & mask);
      out(r2, c2) = m(r, c);
    }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const Partition& part) {
  return partial_transpose(rho.mat(), rho.n_qubits(), part);
}

double negativity(const DensityMatrix& rho, const Partition& part) {
  double neg = 0.0;
  for (double lam : hermitian_eigenvalues(partial_transpose(rho, part)))
    if (lam < 0.0) neg -= lam;
  return neg;
}

double exact_pt_moment(const DensityMatrix& rho, const Partition& part, unsigned k) {
  if (k == 0) throw std::invalid_argument("exact_pt_moment: k must be >= 1");
  return trace(matrix_power(partial_transpose(rho, part), k)).real();
}

double purity(const DensityMatrix& rho) { return trace_of_product(rho.mat(), rho.mat()).real(); }

double p3_ppt_value(double p2, double p3) { return p2 * p2 - p3; }

double pt_moment3_by_permutation(const DensityMatrix& rho, const Partition& part) {
  if (part.size() != rho.n_qubits())
    throw std::invalid_argument("pt_moment3_by_permutation: partition length mismatch");
  std::vector<Permutation> perms;
  for (int j = 0; j < rho.n_qubits(); ++j)
    perms.push_back(part.in_a(j) ? Permutation::cyclic_forward() : Permutation::cyclic_backward());
  const auto map = local_permutation_index_map(perms, 2);
  const ComplexMatrix three = kron(kron(rho.mat(), rho.mat()), rho.mat());
  return trace_with_permutation(three, map).real();
}

DensityMatrix bell_state() {
  const double h = 0.5;
  ComplexMatrix m(4, 4);
  m(0, 0) = h;
  m(0, 3) = h;
  m(3, 0) = h;
  m(3, 3) = h;
  return DensityMatrix(2, std::move(m));
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner state: p must lie in [0,1]");
  ComplexMatrix m = bell_state().mat() * Complex{p};
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += (1.0 - p) / 4.0;
  return DensityMatrix(2, std::move(m));
}

DensityMatrix product_zero_state(int n_qubits) {
  ComplexMatrix m(qubit_dim(n_qubits), qubit_dim(n_qubits));
  m(0, 0) = 1.0;
  return DensityMatrix(n_qubits, std::move(m));
}

DensityMatrix maximally_mixed_state(int n_qubits) {
  const std::size_t dim = qubit_dim(n_qubits);
  return DensityMatrix(n_qubits, ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim)});
}

}  // namespace fsrm
