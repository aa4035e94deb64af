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

#include "fsrm/estimators/shadow.h"

#include <cmath>

#include "fsrm/ensembles/seeded_stream.h"
#include "fsrm/errors.h"

namespace fsrm {

namespace {

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return trace_of_product(a, b).real();
}

// Shared tail of both U-statistics: mean of per-snapshot projections h1 and
// the order-m standard error.
MomentEstimate finish(std::vector<double> h1, double mean, int order) {
  MomentEstimate e = summarize(std::move(h1));
  e.std_error *= order;
  e.mean = mean;
  return e;
}

}  // namespace

ShadowSnapshot shadow_snapshot(const LocalUnitary& u, std::uint32_t outcome) {
  const int n = u.n_qubits();
  std::vector<ComplexMatrix> factors;
  factors.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto& m = u.factors[static_cast<std::size_t>(j)];
    const std::size_t b = static_cast<std::size_t>(outcome_bit(outcome, n, j));
    // 3 u^dagger |b><b| u - I, entries 3 conj(u[b,r]) u[b,c] - delta_rc
    ComplexMatrix f(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) f(r, c) = 3.0 * std::conj(m(b, r)) * m(b, c) - (r == c ? 1.0 : 0.0);
    factors.push_back(std::move(f));
  }
  return {kron_all(factors)};
}

std::vector<ShadowSnapshot> snapshots_from_records(std::span<const ShotRecord> records) {
  std::vector<ShadowSnapshot> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    if (!rec.setting.is_computational() || rec.outcomes.empty()) continue;
    out.push_back(shadow_snapshot(rec.unitary, rec.outcomes.front()));
  }
  return out;
}

MomentEstimate estimate_p2_cs(std::span<const ShadowSnapshot> snapshots) {
  const std::size_t n = snapshots.size();
  if (n < 2) throw ValidationError("CS p2: need at least two snapshots");
  ComplexMatrix sum(snapshots[0].mat.rows(), snapshots[0].mat.cols());
  for (const auto& s : snapshots) sum += s.mat;
  // h1(i) = mean over j != i of Tr[rho_i rho_j]
  std::vector<double> h1(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = snapshots[i].mat;
    h1[i] = (real_trace_product(m, sum) - real_trace_product(m, m)) / static_cast<double>(n - 1);
    total += h1[i];
  }
  return finish(std::move(h1), total / static_cast<double>(n), 2);
}

MomentEstimate estimate_p3_cs(std::span<const ShadowSnapshot> snapshots, const Partition& part,
                              const TripleSampling& sampling) {
  const std::size_t n = snapshots.size();
  if (n < 3) throw ValidationError("CS p3: need at least three snapshots");
  std::vector<ComplexMatrix> x;
  x.reserve(n);
  int n_qubits = 0;
  for (std::size_t dim = snapshots[0].mat.rows(); dim > 1; dim >>= 1) ++n_qubits;
  for (const auto& s : snapshots) x.push_back(partial_transpose(s.mat, n_qubits, part));

  std::vector<double> h1_sum(n, 0.0);
  std::vector<std::size_t> h1_count(n, 0);
  double total = 0.0;
  std::size_t used = 0;
  auto visit = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double v = trace_of_product(matmul(x[a], x[b]), x[c]).real();
    total += v;
    ++used;
    for (std::size_t i : {a, b, c}) {
      h1_sum[i] += v;
      ++h1_count[i];
    }
  };

  const double all = static_cast<double>(n) * static_cast<double>(n - 1) * static_cast<double>(n - 2) / 6.0;
  if (all <= static_cast<double>(sampling.max_triples)) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) visit(a, b, c);
  } else {
    SeededStream rng(sampling.seed, 0x747269706c6573);  // "triples"
    for (std::size_t t = 0; t < sampling.max_triples; ++t) {
      const std::size_t a = rng.below(n);
      std::size_t b = rng.below(n - 1);
      if (b >= a) ++b;
      std::size_t c = rng.below(n - 2);
      for (std::size_t lo : {std::min(a, b), std::max(a, b)})
        if (c >= lo) ++c;
      visit(a, b, c);
    }
  }
  std::vector<double> h1;
  h1.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (h1_count[i] > 0) h1.push_back(h1_sum[i] / static_cast<double>(h1_count[i]));
  auto e = finish(std::move(h1), total / static_cast<double>(used), 3);
  e.rounds_used = n;
  return e;
}

}  // namespace fsrm
