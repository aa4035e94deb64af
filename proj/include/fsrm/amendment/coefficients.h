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

#include <array>
#include <filesystem>
#include <string>

#include "fsrm/amendment/system.h"
#include "fsrm/device/povm.h"
#include "json.hpp"

namespace fsrm {

// Replacement values for the pair function over three Bell labels, indexed by
// coefficient_index(c1, c2, c3).
struct CoefficientTable {
  std::array<double, 64> coeffs{};
  double residual = 0.0;
  std::string povm_hash;

  double at(int c1, int c2, int c3) const {
    return coeffs[static_cast<std::size_t>(coefficient_index(c1, c2, c3))];
  }
};

// Stable identifier of a POVM: FNV-1a over the 17-digit text of its entries.
std::string povm_hash(const NoisyBellPovm& povm);

struct SolveOptions {
  double ceiling = 1e-6;  // best residual above this raises SolverError
};

// Minimum-norm least squares with iterative refinement, then an iteratively
// reweighted polish of the L1 residual when the least-squares residual is not
// already negligible.
CoefficientTable solve_coefficients(const LinearSystem& sys, const SolveOptions& opts = {});

// Convenience: build the system for the POVM, solve, and stamp the hash.
CoefficientTable amend(const NoisyBellPovm& povm, const SolveOptions& opts = {});

// Operator-norm error of the amended twirl: K * residual.
double error_bound(double residual, double K);

// {"povm_hash": str, "residual": f, "coeffs": {"00|01|11": f, ...}}
nlohmann::json coefficients_to_json(const CoefficientTable& t);
CoefficientTable coefficients_from_json(const nlohmann::json& j);
CoefficientTable read_coefficients_file(const std::filesystem::path& path);

}  // namespace fsrm
