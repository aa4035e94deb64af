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

#include "fsrm/noisestudy/choi.h"

#include <algorithm>
#include <cmath>

#include "fsrm/ensembles/ensembles.h"
#include "fsrm/ensembles/seeded_stream.h"
#include "fsrm/errors.h"
#include "fsrm/qcore/parallel.h"

namespace fsrm {

namespace {

constexpr std::size_t kBlock = 256;

std::size_t ipow(std::size_t d, int k) {
  std::size_t out = 1;
  for (int i = 0; i < k; ++i) out *= d;
  return out;
}

ComplexMatrix noisy(const ComplexMatrix& u, const ComplexMatrix& h, double eps) {
  return eps == 0.0 ? u : matmul(herm_expi(h, eps), u);
}

ComplexMatrix tensor_power(const ComplexMatrix& v, int k) {
  ComplexMatrix out = v;
  for (int i = 1; i < k; ++i) out = kron(out, v);
  return out;
}

void add_cs(ComplexMatrix& acc, const ComplexMatrix& u, const ComplexMatrix& v) {
  // d^{-1} sum_b (U^dagger|b><b|U) ⊗ (V^dagger|b><b|V)^T
  const std::size_t d = u.rows();
  const double scale = 1.0 / static_cast<double>(d);
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t a1 = 0; a1 < d; ++a1)
      for (std::size_t a2 = 0; a2 < d; ++a2) {
        const Complex p = std::conj(u(b, a1)) * u(b, a2) * scale;
        if (p == Complex{}) continue;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            acc(a1 * d + i, a2 * d + j) += p * std::conj(v(b, j)) * v(b, i);
      }
}

void add_fsrm(ComplexMatrix& acc, const ComplexMatrix& vk) {
  const std::size_t n = vk.rows();
  const double scale = 1.0 / static_cast<double>(n);
  // w[a * n + i] = V[a, i]; J = w w^dagger / n
  for (std::size_t x = 0; x < n * n; ++x) {
    const Complex wx = vk(x / n, x % n) * scale;
    for (std::size_t y = 0; y < n * n; ++y) acc(x, y) += wx * std::conj(vk(y / n, y % n));
  }
}

}  // namespace

void ChoiState::validate() const {
  if (!is_hermitian(mat, 1e-9)) throw ValidationError("Choi state: not Hermitian");
  if (std::abs(trace(mat) - 1.0) > 1e-9) throw ValidationError("Choi state: trace differs from 1");
  if (hermitian_eigenvalues(mat).front() < -1e-8) throw ValidationError("Choi state: not PSD");
}

ChoiState choi_of_map(std::size_t input_dim, const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  const std::size_t n = input_dim;
  ChoiState out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix e(n, n);
      e(i, j) = 1.0;
      const auto img = map(e);
      if (out.mat.empty()) out.mat = ComplexMatrix(img.rows() * n, img.rows() * n);
      for (std::size_t a = 0; a < img.rows(); ++a)
        for (std::size_t b = 0; b < img.cols(); ++b) out.mat(a * n + i, b * n + j) += img(a, b) / double(n);
    }
  out.dim = out.mat.rows();
  return out;
}

ChoiState choi_of_cs_round(const ComplexMatrix& u, const ComplexMatrix& h, double eps) {
  const std::size_t d = u.rows();
  ChoiState out{d * d, ComplexMatrix(d * d, d * d)};
  add_cs(out.mat, u, noisy(u, h, eps));
  return out;
}

ChoiState choi_of_fsrm_round(const ComplexMatrix& u, const ComplexMatrix& h, double eps, int k) {
  if (k < 1 || k > 3) throw ValidationError("FSRM channel: k must be 1, 2 or 3");
  const auto vk = tensor_power(noisy(u, h, eps), k);
  const std::size_t n = vk.rows();
  ChoiState out{n * n, ComplexMatrix(n * n, n * n)};
  add_fsrm(out.mat, vk);
  return out;
}

ChoiState ideal_cs_choi(std::size_t d) {
  ChoiState out{d * d, ComplexMatrix::identity(d * d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.mat(i * d + i, j * d + j) += 1.0;
  out.mat *= Complex{1.0 / static_cast<double>(d * (d + 1))};
  return out;
}

ChoiState ideal_fsrm_choi(std::size_t d, int k) {
  const auto w = weingarten(k, d);
  return choi_of_map(ipow(d, k), [&w](const ComplexMatrix& a) { return twirl_operator(a, w); });
}

std::vector<ErrPoint> err_curve(const std::string& scheme, int k, double eps, std::size_t d,
                                const std::vector<std::size_t>& sample_counts, std::uint64_t seed,
                                unsigned threads) {
  const bool cs = scheme == "cs";
  if (!cs && scheme != "fsrm") throw ValidationError("err_curve: scheme must be cs or fsrm");
  if (!cs && (k < 1 || k > 3)) throw ValidationError("err_curve: k must be 1, 2 or 3");
  if (d < 2) throw ValidationError("err_curve: d must be >= 2");
  if (eps < 0.0) throw ValidationError("err_curve: epsilon must be >= 0");
  if (sample_counts.empty() || sample_counts.front() == 0 ||
      !std::is_sorted(sample_counts.begin(), sample_counts.end()) ||
      std::adjacent_find(sample_counts.begin(), sample_counts.end()) != sample_counts.end())
    throw ValidationError("err_curve: sample counts must be positive and strictly ascending");

  const ChoiState ideal = cs ? ideal_cs_choi(d) : ideal_fsrm_choi(d, k);
  const std::size_t dim = ideal.mat.rows();

  // Block boundaries: multiples of kBlock plus every checkpoint.
  std::vector<std::size_t> bounds{0};
  for (std::size_t b = kBlock; b < sample_counts.back(); b += kBlock) bounds.push_back(b);
  bounds.insert(bounds.end(), sample_counts.begin(), sample_counts.end());
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  std::vector<ComplexMatrix> partial(bounds.size() - 1);
  parallel_for(partial.size(), threads, [&](std::size_t blk) {
    ComplexMatrix acc(dim, dim);
    for (std::size_t i = bounds[blk]; i < bounds[blk + 1]; ++i) {
      SeededStream rng(seed, i);
      const auto u = sample_cue(d, rng);
      const auto h = sample_gue(d, rng);
      const auto v = noisy(u, h, eps);
      if (cs) {
        add_cs(acc, u, v);
      } else {
        add_fsrm(acc, tensor_power(v, k));
      }
    }
    partial[blk] = std::move(acc);
  });

  std::vector<ErrPoint> out;
  ComplexMatrix running(dim, dim);
  std::size_t next = 0;
  for (std::size_t blk = 0; blk < partial.size(); ++blk) {
    running += partial[blk];
    const std::size_t n = bounds[blk + 1];
    if (next < sample_counts.size() && sample_counts[next] == n) {
      ComplexMatrix diff = running * Complex{1.0 / static_cast<double>(n)};
      diff -= ideal.mat;
      out.push_back({n, trace_norm(diff)});
      ++next;
    }
  }
  return out;
}

}  // namespace fsrm
