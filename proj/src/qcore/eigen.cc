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

#include "fsrm/qcore/eigen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fsrm/errors.h"

namespace fsrm {

namespace {

constexpr double kHermitianTol = 1e-8;
constexpr double kOffDiagonalTol = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary G = diag-phase * real rotation:
//   G_pp = c, G_pq = s, G_qp = -s e^{i psi}, G_qq = c e^{i psi},
// where e^{i psi} removes the phase of a(p,q). A <- G^dagger A G, V <- V G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = std::conj(apq) / mag;  // e^{i psi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * phase * akq;
    a(k, q) = s * akp + c * phase * akq;
  }
  const Complex phase_c = std::conj(phase);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase_c * aqk;
    a(q, k) = s * apk + c * phase_c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * phase * vkq;
    v(k, q) = s * vkp + c * phase * vkq;
  }
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigensystem: matrix not square");
  if (!is_hermitian(m, kHermitianTol))
    throw std::invalid_argument("hermitian_eigensystem: matrix not Hermitian within 1e-8");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  // Symmetrize so rounding noise below the tolerance does not bias the result.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(frobenius_norm(a), 1e-300);
  int sweep = 0;
  while (off_diagonal_norm(a) > kOffDiagonalTol * scale) {
    if (++sweep > kMaxSweeps) throw SolverError("hermitian_eigensystem: Jacobi did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 1e-300) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double x : hermitian_eigenvalues(m)) s += std::abs(x);
  return s;
}

ComplexMatrix herm_expi(const ComplexMatrix& h, double eps) {
  if (!h.is_square()) throw std::invalid_argument("herm_expi: matrix not square");
  if (eps == 0.0) return ComplexMatrix::identity(h.rows());
  return hermitian_function(hermitian_eigensystem(h),
                            [eps](double lam) { return std::polar(1.0, eps * lam); });
}

}  // namespace fsrm
