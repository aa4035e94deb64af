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

#include "fsrm/qcore/matrix.h"

namespace fsrm {

// Jones matrices. R(θ) is the real rotation by θ.
ComplexMatrix quarter_wave_plate(double theta);  // R(θ) diag(1, i) R(-θ)
ComplexMatrix half_wave_plate(double theta);     // R(θ) diag(1, -1) R(-θ)

/// Angles of a quarter-half-quarter waveplate stack realizing a unitary up to
/// global phase: QWP(q1) HWP(h) QWP(q2) e^{i global_phase} = u.
struct WaveplateTriple {
  double q1 = 0.0;
  double h = 0.0;
  double q2 = 0.0;
  double global_phase = 0.0;
};

ComplexMatrix qhq_reconstruct(const WaveplateTriple& t);

/// Solves for waveplate angles by nonlinear least squares (grid-seeded
/// Levenberg-Marquardt over q1, h, q2 and the phase). Angles are not unique;
/// only the round trip is contracted: max-entry residual <= 1e-9.
/// Throws ValidationError if u is not a 2x2 unitary within 1e-10 and
/// SolverError if no start reaches the residual target.
WaveplateTriple qhq_decompose(const ComplexMatrix& u);

}  // namespace fsrm
