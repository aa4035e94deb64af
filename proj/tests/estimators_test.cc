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

#include <cmath>

#include "doctest.h"
#include "fsrm/device/device.h"
#include "fsrm/errors.h"
#include "fsrm/estimators/fsrm.h"
#include "fsrm/estimators/shadow.h"
#include "test_util.h"

using namespace fsrm;

namespace {

ShotRecord manual(int n, std::vector<std::uint8_t> s, std::vector<std::uint32_t> outcomes) {
  ShotRecord r;
  r.unitary.factors.assign(static_cast<std::size_t>(n), ComplexMatrix::identity(2));
  r.setting = MeasurementSetting::from_bits(std::move(s));
  r.outcomes = std::move(outcomes);
  return r;
}

// Tr rho^3 + p3: expectation of the estimator when every round is forced to
// the computational basis (both cyclic orders on both sides contribute).
double cm_only_limit(const DensityMatrix& rho, const Partition& part) {
  return trace(matrix_power(rho.mat(), 3)).real() + exact_pt_moment(rho, part, 3);
}

bool within(const MomentEstimate& e, double target, double sigmas) {
  return std::abs(e.mean - target) <= sigmas * e.std_error;
}

}  // namespace

TEST_CASE("outcome functions") {
  CHECK(hamming("00", "00") == 0);
  CHECK(hamming("01", "10") == 2);
  CHECK(hamming("0110", "0000") == 2);
  CHECK_THROWS_AS(hamming("01", "1"), ValidationError);
  CHECK(hamming(0b0110u, 0u) == 2);

  CHECK(o2(0, 0, 1) == 2.0);
  CHECK(o2(0, 1, 1) == -1.0);
  CHECK(o2(0b00, 0b01, 2) == -2.0);
  CHECK(o2(0b10, 0b10, 2) == 4.0);
  CHECK(o2(0b00, 0b11, 2) == 1.0);
  CHECK_THROWS_AS(o2(4, 0, 2), ValidationError);

  CHECK(g_val(0, 0, 0) == 5.0);
  CHECK(g_val(0, 0, 1) == -1.0);
  CHECK(g_val(1, 1, 1) == 5.0);
  CHECK(g_val(1, 0, 1) == -1.0);

  CHECK(f_val(0, 0, 0) == 9.0);
  CHECK(f_val(0, 0, 1) == -3.0);
  CHECK(f_val(0, 1, 2) == 3.0);
  CHECK(f_val(3, 1, 3) == -3.0);
  CHECK_THROWS_AS(f_val(0, 4, 1), ValidationError);
}

TEST_CASE("o3 on hand-built records") {
  const auto part = Partition::parse("10");
  CHECK(o3(manual(2, {0, 0}, {0, 0, 0}), part) == 12.5);
  CHECK(o3(manual(2, {1, 1}, {0, 1, 2}), part) == -1.5);
  CHECK(o3(manual(2, {1, 1}, {3, 3, 3}), part) == -4.5);
  CHECK(o3(manual(2, {0, 0}, {0, 1, 3}), part) == 0.5 * (-1.0 * -1.0));
  // n = 4, s = 0110: pair (1, 2), sites 0 and 3 computational.
  const auto rec = manual(4, {0, 1, 1, 0}, {0b0000, 0b0110, 0b1010});
  // site 0 bits (0,0,1) -> -1, site 3 bits (0,0,0) -> 5, labels (0,3,1) -> 3
  CHECK(o3(rec, Partition::parse("1100"), nullptr) == -0.5 * -1.0 * 5.0 * 3.0);
  CHECK(o3(rec, Partition::parse("1010"), nullptr) == -0.5 * -1.0 * 5.0 * 3.0);
  CHECK(o3(rec, Partition::parse("1001"), nullptr) == 0.5 * -1.0 * 5.0 * 3.0);
  CHECK_THROWS_AS(o3(manual(2, {0, 0}, {0, 0}), part), ValidationError);
  CHECK_THROWS_AS(o3(rec, part), ValidationError);

  CoefficientTable t;
  t.coeffs.fill(2.0);
  t.coeffs[static_cast<std::size_t>(coefficient_index(0, 1, 2))] = 7.0;
  CHECK(o3(manual(2, {1, 1}, {0, 1, 2}), part, &t) == -3.5);
  CHECK(o3(manual(2, {0, 0}, {0, 0, 0}), part, &t) == 12.5);
}

TEST_CASE("pooling and plug-in on hand-built records") {
  const std::vector<ShotRecord> one = {manual(2, {0, 0}, {0, 0})};
  CHECK(estimate_p2_fsrm(one).mean == 4.0);
  const std::vector<ShotRecord> two = {manual(2, {0, 0}, {0b00, 0b01})};
  CHECK(estimate_p2_fsrm(two).mean == -2.0);
  CHECK(estimate_p2_rm(two).mean == 1.0);
  const std::vector<ShotRecord> det = {manual(2, {0, 0}, std::vector<std::uint32_t>(50, 0))};
  CHECK(estimate_p2_rm(det).mean == 4.0);

  // Four shots: all pairs average six values, consecutive uses (0,1),(2,3).
  const std::vector<ShotRecord> four = {manual(1, {0}, {0, 0, 1, 1})};
  CHECK(estimate_p2_fsrm(four, Pooling::all).mean == doctest::Approx((2 + 2 - 4) / 6.0));
  CHECK(estimate_p2_fsrm(four, Pooling::consecutive).mean == 2.0);

  const std::vector<ShotRecord> bell_only = {manual(2, {1, 1}, {0, 0})};
  CHECK_THROWS_AS(estimate_p2_fsrm(bell_only), ValidationError);
  CHECK_THROWS_AS(estimate_p2_fsrm(std::vector<ShotRecord>{manual(2, {0, 0}, {0})}), ValidationError);
  CHECK_THROWS_AS(estimate_p2_rm(std::vector<ShotRecord>{manual(2, {0, 0}, {0})}), ValidationError);

  const auto e = summarize({1.0, 2.0, 3.0});
  CHECK(e.mean == 2.0);
  CHECK(e.std_error == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(e.rounds_used == 3);
}

TEST_CASE("fsrm purity is unbiased") {
  SUBCASE("bell") {
    const auto recs = run_rounds(bell_state(), {10000, 2, false, 1}, 1);
    CHECK(within(estimate_p2_fsrm(recs), 1.0, 4));
  }
  SUBCASE("maximally mixed") {
    const auto recs = run_rounds(maximally_mixed_state(2), {10000, 2, false, 1}, 2);
    CHECK(within(estimate_p2_fsrm(recs), 0.25, 4));
  }
  SUBCASE("random mixed states") {
    for (int i = 0; i < 5; ++i) {
      const auto rho = fsrm::testing::random_state(2, 2 + i % 3, 4000 + i);
      const auto recs = run_rounds(rho, {20000, 2, false, 1}, 10 + i);
      CHECK(within(estimate_p2_fsrm(recs), purity(rho), 4));
    }
  }
  SUBCASE("three qubits, many shots") {
    const auto rho = fsrm::testing::random_state(3, 3, 55);
    const auto recs = run_rounds(rho, {4000, 6, false, 1}, 3);
    CHECK(within(estimate_p2_fsrm(recs, Pooling::all), purity(rho), 4));
    CHECK(within(estimate_p2_fsrm(recs, Pooling::consecutive), purity(rho), 4));
  }
}

TEST_CASE("fsrm third moment") {
  const auto part = Partition::parse("10");
  SUBCASE("bell") {
    const auto recs = run_rounds(bell_state(), {30000, 3, true, 1}, 5);
    CHECK(within(estimate_p3_fsrm(recs, part), 0.25, 4));
  }
  SUBCASE("maximally mixed") {
    const auto recs = run_rounds(maximally_mixed_state(2), {30000, 3, true, 1}, 6);
    CHECK(within(estimate_p3_fsrm(recs, part), 0.0625, 4));
  }
  SUBCASE("random state, mirrored partition gives identical values") {
    const auto rho = fsrm::testing::random_state(2, 2, 808);
    const auto recs = run_rounds(rho, {30000, 3, true, 1}, 7);
    const auto e = estimate_p3_fsrm(recs, part);
    CHECK(within(e, exact_pt_moment(rho, part, 3), 4));
    CHECK(estimate_p3_fsrm(recs, part.mirrored()).mean == e.mean);
  }
  SUBCASE("four qubits") {
    const auto rho = fsrm::testing::random_state(4, 2, 909);
    const auto p = Partition::parse("1100");
    const auto recs = run_rounds(rho, {20000, 3, true, 1}, 8);
    CHECK(within(estimate_p3_fsrm(recs, p), exact_pt_moment(rho, p, 3), 4));
  }
  SUBCASE("computational basis only misses the target") {
    const auto recs = run_rounds(bell_state(), {30000, 3, false, 1}, 9);
    const auto e = estimate_p3_fsrm(recs, part);
    const double limit = cm_only_limit(bell_state(), part);
    CHECK(limit == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(within(e, limit, 4));
    CHECK(std::abs(e.mean - 0.25) > 5 * e.std_error);
  }
}

TEST_CASE("plug-in RM approaches FSRM at many shots") {
  const auto recs = run_rounds(bell_state(), {500, 200, false, 1}, 11);
  const auto rm = estimate_p2_rm(recs);
  const auto fs = estimate_p2_fsrm(recs);
  CHECK(within(rm, 1.0, 4));
  CHECK(std::abs(rm.mean - fs.mean) <= 4 * std::hypot(rm.std_error, fs.std_error));
  // Plug-in bias (2^n - p2) / N_M is visible at two shots.
  const auto few = run_rounds(bell_state(), {20000, 2, false, 1}, 12);
  const auto rm2 = estimate_p2_rm(few);
  CHECK(within(rm2, 1.0 + 3.0 / 2.0, 4));
}

TEST_CASE("classical shadows") {
  const LocalUnitary id1{{ComplexMatrix::identity(2)}};
  const auto s = shadow_snapshot(id1, 0);
  CHECK(max_abs_diff(s.mat, ComplexMatrix{{2.0, 0.0}, {0.0, -1.0}}) == 0.0);

  const LocalUnitary id2{{ComplexMatrix::identity(2), ComplexMatrix::identity(2)}};
  const std::vector<ShadowSnapshot> same = {shadow_snapshot(id2, 0), shadow_snapshot(id2, 0)};
  CHECK(estimate_p2_cs(same).mean == doctest::Approx(25.0));

  const auto rho = fsrm::testing::random_state(2, 2, 321);
  const auto recs = run_rounds(rho, {100000, 1, false, 1}, 13);
  const auto snaps = snapshots_from_records(recs);
  REQUIRE(snaps.size() == 100000);
  ComplexMatrix mean(4, 4), sq(4, 4);
  for (const auto& sn : snaps) {
    CHECK(std::abs(trace(sn.mat) - 1.0) < 1e-9);
    mean += sn.mat;
    for (std::size_t e = 0; e < 16; ++e) {
      const Complex z = sn.mat.data()[e];
      sq.data()[e] += Complex{z.real() * z.real(), z.imag() * z.imag()};
    }
  }
  const double n = static_cast<double>(snaps.size());
  for (std::size_t e = 0; e < 16; ++e) {
    const Complex m = mean.data()[e] / n;
    const double sr = std::sqrt((sq.data()[e].real() / n - m.real() * m.real()) / n);
    const double si = std::sqrt((sq.data()[e].imag() / n - m.imag() * m.imag()) / n);
    CHECK(std::abs(m.real() - rho.mat().data()[e].real()) <= 5 * sr + 1e-12);
    CHECK(std::abs(m.imag() - rho.mat().data()[e].imag()) <= 5 * si + 1e-12);
  }

  const std::span<const ShadowSnapshot> first(snaps.data(), 10000);
  CHECK(within(estimate_p2_cs(first), purity(rho), 5));
  const auto part = Partition::parse("10");
  const std::span<const ShadowSnapshot> few(snaps.data(), 3000);
  const auto p3 = estimate_p3_cs(few, part, {200000, 1});
  CHECK(within(p3, exact_pt_moment(rho, part, 3), 5));
  const std::span<const ShadowSnapshot> tiny(snaps.data(), 40);
  const auto all3 = estimate_p3_cs(tiny, part);
  CHECK(all3.rounds_used == 40);
  CHECK_THROWS_AS(estimate_p3_cs(std::span<const ShadowSnapshot>(snaps.data(), 2), part), ValidationError);
}

TEST_CASE("shadows are biased by unitary noise, few-shot purity is not") {
  NoiseModel noise{NoiseModel::Kind::gaussian, 0.5, true};
  const auto recs = run_rounds(bell_state(), {10000, 2, false, 1}, 14, noise);
  const auto cs = estimate_p2_cs(snapshots_from_records(recs));
  CHECK(1.0 - cs.mean > 5 * cs.std_error);
  CHECK(within(estimate_p2_fsrm(recs), 1.0, 4));
}

TEST_CASE("negativity witness sign on Werner states") {
  const auto part = Partition::parse("10");
  for (double p : {0.2, 0.5, 0.9}) {
    const auto rho = werner_state(p);
    const auto p2 = estimate_p2_fsrm(run_rounds(rho, {20000, 2, false, 1}, 100));
    const auto p3 = estimate_p3_fsrm(run_rounds(rho, {50000, 3, true, 1}, 200), part);
    const auto n3 = combine_n3(p2, p3);
    const double exact = p3_ppt_value(purity(rho), exact_pt_moment(rho, part, 3));
    // A 5-sigma estimate never carries the wrong sign; the strongly entangled
    // state must be resolved.
    if (std::abs(n3.mean) > 5 * n3.std_error) CHECK((n3.mean > 0) == (exact > 0));
    if (p == 0.9) CHECK(n3.mean > 5 * n3.std_error);
  }
}
