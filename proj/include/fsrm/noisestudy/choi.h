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
#include <functional>
#include <string>
#include <vector>

#include "fsrm/amendment/weingarten.h"
#include "fsrm/qcore/eigen.h"
#include "fsrm/qcore/matrix.h"

namespace fsrm {

// Choi state of a map on D-dim operators, output factor first:
// J = D^{-1} sum_ij Phi(|i><j|) ⊗ |i><j|, trace 1 for trace-preserving maps.
struct ChoiState {
  std::size_t dim = 0;  // D^2
  ComplexMatrix mat;

  // Hermitian within 1e-9, trace 1 within 1e-9, min eigenvalue >= -1e-8.
  // Throws ValidationError.
  void validate() const;
};

ChoiState choi_of_map(std::size_t input_dim, const std::function<ComplexMatrix(const ComplexMatrix&)>& map);

// rho -> sum_b <b|V rho V^dagger|b> U^dagger |b><b| U with V = e^{i eps H} U:
// the state is measured through the noisy unitary and re-prepared through the
// nominal one.
ChoiState choi_of_cs_round(const ComplexMatrix& u, const ComplexMatrix& h, double eps);

// A -> V^{⊗k} A V^{dagger ⊗k} with V = e^{i eps H} U.
ChoiState choi_of_fsrm_round(const ComplexMatrix& u, const ComplexMatrix& h, double eps, int k);

// Noiseless Haar averages: (rho + Tr rho I)/(d + 1), and the k-fold twirl.
ChoiState ideal_cs_choi(std::size_t d);
ChoiState ideal_fsrm_choi(std::size_t d, int k);

struct ErrPoint {
  std::size_t n = 0;
  double err = 0.0;
};

// scheme is "cs" or "fsrm". Draw i uses SeededStream(seed, i): a CUE(d)
// unitary, then a GUE(d) Hermitian. Err(N) is the trace norm of the mean Choi
// over the first N draws minus the ideal Choi. Sample counts must be
// ascending. Summation is blocked in draw order, so results do not depend
// on the thread count.
std::vector<ErrPoint> err_curve(const std::string& scheme, int k, double eps, std::size_t d,
                                const std::vector<std::size_t>& sample_counts, std::uint64_t seed,
                                unsigned threads = 0);

}  // namespace fsrm
