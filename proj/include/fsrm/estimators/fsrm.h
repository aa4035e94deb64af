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
#include <span>
#include <string_view>

#include "fsrm/amendment/coefficients.h"
#include "fsrm/device/device.h"
#include "fsrm/estimators/moment.h"
#include "fsrm/qcore/state.h"

namespace fsrm {

int hamming(std::uint32_t b1, std::uint32_t b2);
int hamming(std::string_view b1, std::string_view b2);  // '0'/'1' strings

// 2^n (-2)^{-h(b1, b2)}
double o2(std::uint32_t b1, std::uint32_t b2, int n_qubits);

// Single-site weight for three computational outcomes: 1 + (-2)^{wt-1}, where
// wt is the size of the largest group of equal bits (5 or -1).
double g_val(int b1, int b2, int b3);

// Pair weight for three Bell labels in 0..3: 1 - (-2)^{wt}, wt = 3 all equal,
// 2 exactly two equal, 1 all distinct (9, -3, 3).
double f_val(int beta1, int beta2, int beta3);

// 1/2 (-1)^{a.s} prod_pairs f prod_sites g for shots (i, j, l) of the record;
// a is the partition's A-indicator. With a table, each pair's f is replaced
// by the amended coefficient of its three labels.
double o3(const ShotRecord& rec, std::size_t i, std::size_t j, std::size_t l, const Partition& part,
          const CoefficientTable* coeffs = nullptr);
// Record with exactly three shots.
double o3(const ShotRecord& rec, const Partition& part, const CoefficientTable* coeffs = nullptr);

// How shots of one round are combined: every distinct pair/triple, or
// disjoint consecutive groups (0,1),(2,3),... with leftovers dropped.
enum class Pooling { all, consecutive };

// Computational-basis records only; others are skipped.
MomentEstimate estimate_p2_fsrm(std::span<const ShotRecord> records, Pooling pooling = Pooling::all);

MomentEstimate estimate_p3_fsrm(std::span<const ShotRecord> records, const Partition& part,
                                const CoefficientTable* coeffs = nullptr,
                                Pooling pooling = Pooling::all);

// Plug-in estimator sum_{b,b'} O2(b,b') P(b) P(b') with empirical P per round;
// biased by O(2^n / N_M).
MomentEstimate estimate_p2_rm(std::span<const ShotRecord> records);

}  // namespace fsrm
