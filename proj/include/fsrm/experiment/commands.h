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

#include <string>
#include <vector>

#include "fsrm/amendment/coefficients.h"
#include "fsrm/device/povm.h"
#include "fsrm/experiment/config.h"
#include "json.hpp"

namespace fsrm {

// Shortest text that carries 17 significant digits.
std::string format_double(double x);

nlohmann::json cmd_oracle(const ExperimentConfig& cfg);

nlohmann::json cmd_estimate(const ExperimentConfig& cfg);

struct ConvergeRow {
  int n_m = 0;
  std::size_t n = 0;    // total shots N = N_U * N_M
  std::size_t n_u = 0;
  double err = 0.0;     // RMS deviation from the exact value over repetitions
  std::size_t repetitions = 0;
};

// Least squares of log10 Err on log10 N. pinned_intercept is the intercept
// with the slope held at -1/2, i.e. the mean of log10 Err + log10 N / 2.
struct FitResult {
  int n_m = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double pinned_intercept = 0.0;
  std::size_t points = 0;
};

struct ConvergeResult {
  double exact = 0.0;
  std::vector<ConvergeRow> rows;
  std::vector<FitResult> fits;
  // 10 (pinned intercept at the largest N_M - at the smallest N_M).
  double db_gain = 0.0;
};

FitResult fit_loglog(int n_m, const std::vector<ConvergeRow>& rows);

ConvergeResult cmd_converge(const ExperimentConfig& cfg);
std::string converge_csv(const ConvergeResult& r);
nlohmann::json converge_report(const ConvergeResult& r);

struct NoiseStudyRow {
  std::string scheme;
  int k = 1;
  double epsilon = 0.0;
  std::size_t n = 0;
  double err = 0.0;
  std::uint64_t seed = 0;
};

std::vector<NoiseStudyRow> cmd_noise_study(const ExperimentConfig& cfg);
std::string noise_study_csv(const std::vector<NoiseStudyRow>& rows);

struct AmendResult {
  CoefficientTable table;
  double K = 0.0;
  double bound = 0.0;
};

AmendResult cmd_amend(const ExperimentConfig& cfg);
nlohmann::json amend_report(const AmendResult& r);

DensityMatrix cmd_make_state(const ExperimentConfig& cfg);
NoisyBellPovm cmd_make_povm(const ExperimentConfig& cfg);

}  // namespace fsrm
