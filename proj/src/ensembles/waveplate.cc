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

#include "fsrm/ensembles/waveplate.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "fsrm/errors.h"

namespace fsrm {

namespace {

constexpr double kTarget = 1e-9;

ComplexMatrix rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return ComplexMatrix{{c, -s}, {s, c}};
}

ComplexMatrix retarder(double theta, Complex second) {
  return matmul(matmul(rotation(theta), ComplexMatrix{{1.0, 0.0}, {0.0, second}}), rotation(-theta));
}

using Params = std::array<double, 4>;

std::array<double, 8> residual(const Params& p, const ComplexMatrix& u) {
  const auto w = qhq_reconstruct({p[0], p[1], p[2], p[3]});
  std::array<double, 8> r{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex diff = w.data()[i] - u.data()[i];
    r[2 * i] = diff.real();
    r[2 * i + 1] = diff.imag();
  }
  return r;
}

double max_entry(const std::array<double, 8>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

double sum_sq(const std::array<double, 8>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

// Solves the 4x4 system (A + lambda diag(A)) dx = g in place.
bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4>& b) {
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t col = 4; col-- > 0;) {
    for (std::size_t c = col + 1; c < 4; ++c) b[col] -= a[col][c] * b[c];
    b[col] /= a[col][col];
  }
  return true;
}

Params levenberg_marquardt(Params p, const ComplexMatrix& u) {
  double lambda = 1e-3;
  auto r = residual(p, u);
  for (int iter = 0; iter < 200 && max_entry(r) > 1e-14; ++iter) {
    std::array<std::array<double, 8>, 4> jac{};
    for (std::size_t k = 0; k < 4; ++k) {
      const double step = 1e-7;
      Params hi = p, lo = p;
      hi[k] += step;
      lo[k] -= step;
      const auto rh = residual(hi, u);
      const auto rl = residual(lo, u);
      for (std::size_t i = 0; i < 8; ++i) jac[k][i] = (rh[i] - rl[i]) / (2 * step);
    }
    std::array<std::array<double, 4>, 4> jtj{};
    std::array<double, 4> jtr{};
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t i = 0; i < 8; ++i) jtj[a][b] += jac[a][i] * jac[b][i];
      for (std::size_t i = 0; i < 8; ++i) jtr[a] -= jac[a][i] * r[i];
    }
    bool improved = false;
    for (int tries = 0; tries < 20 && !improved; ++tries) {
      auto damped = jtj;
      for (std::size_t a = 0; a < 4; ++a) damped[a][a] += lambda * std::max(jtj[a][a], 1e-12);
      auto step = jtr;
      if (!solve4(damped, step)) {
        lambda *= 10;
        continue;
      }
      Params trial = p;
      for (std::size_t a = 0; a < 4; ++a) trial[a] += step[a];
      const auto rt = residual(trial, u);
      if (sum_sq(rt) < sum_sq(r)) {
        p = trial;
        r = rt;
        lambda = std::max(lambda / 10, 1e-15);
        improved = true;
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  return p;
}

}  // namespace

ComplexMatrix quarter_wave_plate(double theta) { return retarder(theta, Complex{0.0, 1.0}); }
ComplexMatrix half_wave_plate(double theta) { return retarder(theta, Complex{-1.0, 0.0}); }

ComplexMatrix qhq_reconstruct(const WaveplateTriple& t) {
  auto w = matmul(matmul(quarter_wave_plate(t.q1), half_wave_plate(t.h)), quarter_wave_plate(t.q2));
  return w * std::polar(1.0, t.global_phase);
}

WaveplateTriple qhq_decompose(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw ValidationError("qhq_decompose: expected a 2x2 matrix");
  if (unitarity_defect(u) > 1e-10) throw ValidationError("qhq_decompose: input is not unitary");

  // Coarse grid over the three angles, phase fitted in closed form, then LM
  // polish from the best few seeds.
  constexpr int kGrid = 16;
  struct Seed {
    double overlap;
    Params p;
  };
  std::vector<Seed> seeds;
  for (int a = 0; a < kGrid; ++a)
    for (int b = 0; b < kGrid; ++b)
      for (int c = 0; c < kGrid; ++c) {
        const double q1 = std::numbers::pi * a / kGrid;
        const double h = std::numbers::pi * b / kGrid;
        const double q2 = std::numbers::pi * c / kGrid;
        const auto w = qhq_reconstruct({q1, h, q2, 0.0});
        const Complex ov = trace_of_product(dagger(w), u);
        seeds.push_back({std::abs(ov), {q1, h, q2, std::arg(ov)}});
      }
  std::partial_sort(seeds.begin(), seeds.begin() + 8, seeds.end(),
                    [](const Seed& x, const Seed& y) { return x.overlap > y.overlap; });

  Params best{};
  double best_err = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 8; ++s) {
    const Params p = levenberg_marquardt(seeds[static_cast<std::size_t>(s)].p, u);
    const double err = max_entry(residual(p, u));
    if (err < best_err) {
      best_err = err;
      best = p;
    }
    if (best_err <= kTarget * 1e-2) break;
  }
  if (best_err > kTarget) throw SolverError("qhq_decompose: round-trip residual above 1e-9");
  return {best[0], best[1], best[2], best[3]};
}

}  // namespace fsrm
