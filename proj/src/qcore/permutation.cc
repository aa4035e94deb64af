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

#include "fsrm/qcore/permutation.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fsrm {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("Permutation: images do not form a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
  if (images_.empty()) throw std::invalid_argument("Permutation: empty");
}

Permutation Permutation::identity(int k) {
  std::vector<int> im(static_cast<std::size_t>(k));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::swap() { return Permutation({1, 0}); }
Permutation Permutation::cyclic_forward() { return Permutation({1, 2, 0}); }
Permutation Permutation::cyclic_backward() { return Permutation({2, 0, 1}); }

std::vector<Permutation> Permutation::all(int k) {
  std::vector<int> im(static_cast<std::size_t>(k));
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("Permutation::compose: size mismatch");
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < im.size(); ++i)
    im[i] = images_[static_cast<std::size_t>(other.images_[i])];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(im));
}

int Permutation::cycle_count() const {
  std::vector<bool> seen(images_.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) seen[j] = true;
  }
  return cycles;
}

std::vector<std::size_t> permutation_index_map(const Permutation& perm, std::size_t d) {
  return local_permutation_index_map(std::span<const Permutation>(&perm, 1), d);
}

std::vector<std::size_t> local_permutation_index_map(std::span<const Permutation> site_perms,
                                                     std::size_t d) {
  if (d == 0) throw std::invalid_argument("local_permutation_index_map: d must be positive");
  if (site_perms.empty()) throw std::invalid_argument("local_permutation_index_map: no sites");
  const std::size_t n = site_perms.size();
  const std::size_t k = static_cast<std::size_t>(site_perms[0].size());
  for (const auto& p : site_perms)
    if (static_cast<std::size_t>(p.size()) != k)
      throw std::invalid_argument("local_permutation_index_map: copy counts differ");

  // digit position of (copy c, site j) counted from the most significant end.
  const std::size_t digits = n * k;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < digits; ++i) dim *= d;

  std::vector<std::size_t> map(dim);
  std::vector<std::size_t> in(digits), out(digits);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t rest = x;
    for (std::size_t pos = digits; pos-- > 0;) {
      in[pos] = rest % d;
      rest /= d;
    }
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < n; ++j)
        out[static_cast<std::size_t>(site_perms[j][static_cast<int>(c)]) * n + j] = in[c * n + j];
    std::size_t y = 0;
    for (std::size_t pos = 0; pos < digits; ++pos) y = y * d + out[pos];
    map[x] = y;
  }
  return map;
}

ComplexMatrix matrix_from_index_map(std::span<const std::size_t> map) {
  ComplexMatrix m(map.size(), map.size());
  for (std::size_t x = 0; x < map.size(); ++x) m(map[x], x) = 1.0;
  return m;
}

PermutationOperator permutation_matrix(const Permutation& perm, std::size_t d) {
  auto map = permutation_index_map(perm, d);
  return PermutationOperator{perm.size(), d, perm, matrix_from_index_map(map)};
}

Complex trace_with_permutation(const ComplexMatrix& a, std::span<const std::size_t> map) {
  if (a.rows() != map.size() || a.cols() != map.size())
    throw std::invalid_argument("trace_with_permutation: dimension mismatch");
  Complex t{};
  for (std::size_t x = 0; x < map.size(); ++x) t += a(x, map[x]);
  return t;
}

}  // namespace fsrm
