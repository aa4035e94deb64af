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

#include "fsrm/amendment/weingarten.h"

#include <cmath>
#include <stdexcept>

#include "fsrm/errors.h"
#include "fsrm/qcore/eigen.h"

namespace fsrm {

WeingartenData weingarten(int k, std::size_t d) {
  if (k < 1 || k > 3) throw ValidationError("weingarten: k must be 1, 2 or 3");
  if (d < 2) throw ValidationError("weingarten: d must be >= 2");
  WeingartenData w;
  w.k = k;
  w.d = d;
  w.perms = Permutation::all(k);
  const std::size_t m = w.perms.size();
  for (const auto& p : w.perms) w.maps.push_back(permutation_index_map(p, d));

  w.gram = ComplexMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      w.gram(i, j) = std::pow(static_cast<double>(d), w.perms[i].inverse().compose(w.perms[j]).cycle_count());

  const auto es = hermitian_eigensystem(w.gram);
  const double cutoff = 1e-10 * es.values.back();
  for (double v : es.values) w.rank += v > cutoff;
  w.wg = hermitian_function(es, [cutoff](double v) { return v > cutoff ? 1.0 / v : 0.0; });
  for (auto& z : w.wg.data()) z = z.real();

  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += std::abs(w.wg(i, j));
    w.K = std::max(w.K, row);
  }
  return w;
}

namespace {

// Sum_x A[map[x], x] = Tr[W^dagger A] for the permutation operator with this map.
Complex overlap(const ComplexMatrix& a, const std::vector<std::size_t>& map) {
  Complex t{};
  for (std::size_t x = 0; x < map.size(); ++x) t += a(map[x], x);
  return t;
}

}  // namespace

ComplexMatrix twirl_operator(const ComplexMatrix& a, const WeingartenData& w) {
  const std::size_t dim = w.maps.front().size();
  if (a.rows() != dim || a.cols() != dim) throw std::invalid_argument("twirl_operator: dimension mismatch");
  const std::size_t m = w.perms.size();
  std::vector<Complex> b(m);
  for (std::size_t s = 0; s < m; ++s) b[s] = overlap(a, w.maps[s]);
  ComplexMatrix out(dim, dim);
  for (std::size_t p = 0; p < m; ++p) {
    Complex coef{};
    for (std::size_t s = 0; s < m; ++s) coef += w.wg(p, s) * b[s];
    for (std::size_t x = 0; x < dim; ++x) out(w.maps[p][x], x) += coef;
  }
  return out;
}

ComplexMatrix twirl_local(const ComplexMatrix& a, const WeingartenData& w, int sites) {
  if (sites < 1) throw std::invalid_argument("twirl_local: need at least one site");
  const std::size_t m = w.perms.size();
  std::size_t tuples = 1;
  for (int j = 0; j < sites; ++j) tuples *= m;

  auto digits = [&](std::size_t t) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(sites));
    for (std::size_t j = idx.size(); j-- > 0;) {
      idx[j] = t % m;
      t /= m;
    }
    return idx;
  };
  std::vector<std::vector<std::size_t>> maps(tuples);
  for (std::size_t t = 0; t < tuples; ++t) {
    std::vector<Permutation> ps;
    for (auto i : digits(t)) ps.push_back(w.perms[i]);
    maps[t] = local_permutation_index_map(ps, w.d);
  }
  const std::size_t dim = maps.front().size();
  if (a.rows() != dim || a.cols() != dim) throw std::invalid_argument("twirl_local: dimension mismatch");

  std::vector<Complex> b(tuples);
  for (std::size_t t = 0; t < tuples; ++t) b[t] = overlap(a, maps[t]);
  ComplexMatrix out(dim, dim);
  for (std::size_t p = 0; p < tuples; ++p) {
    const auto pi = digits(p);
    Complex coef{};
    for (std::size_t s = 0; s < tuples; ++s) {
      const auto si = digits(s);
      Complex c{1.0};
      for (std::size_t j = 0; j < pi.size(); ++j) c *= w.wg(pi[j], si[j]);
      coef += c * b[s];
    }
    if (coef == Complex{}) continue;
    for (std::size_t x = 0; x < dim; ++x) out(maps[p][x], x) += coef;
  }
  return out;
}

}  // namespace fsrm
