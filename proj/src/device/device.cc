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

#include "fsrm/device/device.h"

#include <algorithm>
#include <stdexcept>

#include "fsrm/errors.h"
#include "fsrm/qcore/eigen.h"
#include "fsrm/qcore/parallel.h"

namespace fsrm {

namespace {

constexpr std::uint64_t kNoiseTag = 0x6e6f697365;  // "noise"

LocalUnitary perturb(const LocalUnitary& u, const NoiseModel& noise, SeededStream& noise_rng) {
  LocalUnitary out = u;
  for (auto& f : out.factors) {
    const auto h = sample_gue(2, noise_rng);
    f = matmul(herm_expi(h, noise.epsilon), f);
  }
  return out;
}

std::uint32_t draw(const std::vector<double>& probs, SeededStream& rng) {
  const double x = rng.uniform();
  double acc = 0.0;
  std::uint32_t last_nonzero = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_nonzero = static_cast<std::uint32_t>(i);
    if (x < acc) return last_nonzero;
  }
  return last_nonzero;  // rounding left x just above the total
}

}  // namespace

ComplexMatrix apply_local_unitary(const LocalUnitary& u, const ComplexMatrix& rho) {
  const std::size_t dim = rho.rows();
  if (!rho.is_square() || dim != (std::size_t{1} << u.n_qubits()))
    throw std::invalid_argument("apply_local_unitary: dimension mismatch");
  ComplexMatrix s = rho;
  const int n = u.n_qubits();
  for (int j = 0; j < n; ++j) {
    const auto& m = u.factors[static_cast<std::size_t>(j)];
    const std::size_t mask = std::size_t{1} << (n - 1 - j);
    const Complex u00 = m(0, 0), u01 = m(0, 1), u10 = m(1, 0), u11 = m(1, 1);
    for (std::size_t r0 = 0; r0 < dim; ++r0) {
      if (r0 & mask) continue;
      const std::size_t r1 = r0 | mask;
      for (std::size_t c = 0; c < dim; ++c) {
        const Complex a = s(r0, c), b = s(r1, c);
        s(r0, c) = u00 * a + u01 * b;
        s(r1, c) = u10 * a + u11 * b;
      }
    }
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c0 = 0; c0 < dim; ++c0) {
        if (c0 & mask) continue;
        const std::size_t c1 = c0 | mask;
        const Complex a = s(r, c0), b = s(r, c1);
        s(r, c0) = a * std::conj(u00) + b * std::conj(u01);
        s(r, c1) = a * std::conj(u10) + b * std::conj(u11);
      }
    }
  }
  return s;
}

std::vector<double> born_probabilities(const DensityMatrix& rho, const LocalUnitary& u,
                                       const MeasurementSetting& setting, const NoisyBellPovm& povm) {
  const int n = rho.n_qubits();
  if (u.n_qubits() != n || setting.n_qubits() != n)
    throw ValidationError("born_probabilities: qubit counts of state, unitary and setting differ");
  setting.validate();
  const std::size_t dim = rho.dim();
  const ComplexMatrix s = apply_local_unitary(u, rho.mat());
  std::vector<double> probs(dim);
  if (setting.is_computational()) {
    for (std::size_t b = 0; b < dim; ++b) probs[b] = std::max(0.0, s(b, b).real());
    return probs;
  }
  povm.validate();

  // Index offsets of every joint assignment of the paired qubits; pair k
  // contributes digit k (base 4) of the assignment.
  const std::size_t p = setting.pairs.size();
  const std::size_t combos = std::size_t{1} << (2 * p);
  std::size_t pair_mask = 0;
  std::vector<std::size_t> scatter(combos, 0);
  for (std::size_t a = 0; a < combos; ++a) {
    for (std::size_t k = 0; k < p; ++k) {
      const std::size_t label = (a >> (2 * (p - 1 - k))) & 3u;
      const auto [j1, j2] = setting.pairs[k];
      if (label & 2u) scatter[a] |= std::size_t{1} << (n - 1 - j1);
      if (label & 1u) scatter[a] |= std::size_t{1} << (n - 1 - j2);
    }
  }
  for (const auto& [j1, j2] : setting.pairs)
    pair_mask |= (std::size_t{1} << (n - 1 - j1)) | (std::size_t{1} << (n - 1 - j2));

  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t base = b & ~pair_mask;
    std::vector<std::size_t> beta(p);
    for (std::size_t k = 0; k < p; ++k) {
      const auto [j1, j2] = setting.pairs[k];
      beta[k] = 2 * ((b >> (n - 1 - j1)) & 1u) + ((b >> (n - 1 - j2)) & 1u);
    }
    Complex acc{};
    for (std::size_t xa = 0; xa < combos; ++xa) {
      for (std::size_t ya = 0; ya < combos; ++ya) {
        Complex factor{1.0};
        for (std::size_t k = 0; k < p && factor != Complex{}; ++k) {
          const std::size_t shift = 2 * (p - 1 - k);
          factor *= povm.elements[beta[k]]((xa >> shift) & 3u, (ya >> shift) & 3u);
        }
        if (factor == Complex{}) continue;
        acc += factor * s(base | scatter[ya], base | scatter[xa]);
      }
    }
    probs[b] = std::max(0.0, acc.real());
  }
  return probs;
}

ShotRecord sample_shots(const DensityMatrix& rho, const LocalUnitary& u,
                        const MeasurementSetting& setting, int shots, SeededStream& rng,
                        const NoiseModel& noise, const NoisyBellPovm& povm) {
  if (shots < 1) throw ValidationError("sample_shots: need at least one shot");
  ShotRecord rec;
  rec.unitary = u;
  rec.setting = setting;
  rec.outcomes.reserve(static_cast<std::size_t>(shots));
  if (!noise.active()) {
    const auto probs = born_probabilities(rho, u, setting, povm);
    for (int i = 0; i < shots; ++i) rec.outcomes.push_back(draw(probs, rng));
    return rec;
  }
  SeededStream noise_rng = rng.child(kNoiseTag);
  std::vector<double> probs;
  for (int i = 0; i < shots; ++i) {
    if (i == 0 || !noise.per_round_fixed)
      probs = born_probabilities(rho, perturb(u, noise, noise_rng), setting, povm);
    rec.outcomes.push_back(draw(probs, rng));
  }
  return rec;
}

std::vector<ShotRecord> run_rounds(const DensityMatrix& rho, const RoundPlan& plan,
                                   std::uint64_t seed, const NoiseModel& noise,
                                   const NoisyBellPovm& povm) {
  if (plan.shots < 1) throw ValidationError("run_rounds: N_M must be >= 1");
  if (plan.random_settings && rho.n_qubits() < 2)
    throw ValidationError("run_rounds: Bell settings need at least two qubits");
  if (plan.random_settings) povm.validate();
  const int n = rho.n_qubits();
  std::vector<ShotRecord> records(plan.rounds);
  parallel_for(plan.rounds, plan.threads, [&](std::size_t r) {
    SeededStream rng(seed, r);
    const auto u = sample_local_unitary(n, rng);
    const auto setting = plan.random_settings ? sample_setting(n, rng) : MeasurementSetting::computational(n);
    records[r] = sample_shots(rho, u, setting, plan.shots, rng, noise, povm);
    records[r].round_id = r;
  });
  return records;
}

}  // namespace fsrm
