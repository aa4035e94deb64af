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
#include <map>
#include <set>

#include "doctest.h"
#include "fsrm/device/device.h"
#include "fsrm/device/povm.h"
#include "fsrm/device/setting.h"
#include "fsrm/errors.h"
#include "test_util.h"

using namespace fsrm;

namespace {

const std::array<double, 4> kPortFidelities = {0.7730, 0.5495, 0.7611, 0.8541};

ComplexMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  ComplexMatrix m(d, d);
  m(i, j) = 1.0;
  return m;
}

// Qubit-order permutation matrix sending qubit q of the input to position
// order[q] of the output, built by enumerating basis states.
ComplexMatrix reorder(int n, const std::vector<int>& order) {
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix p(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = 0;
    for (int q = 0; q < n; ++q)
      if ((x >> (n - 1 - q)) & 1u) y |= std::size_t{1} << (n - 1 - order[static_cast<std::size_t>(q)]);
    p(y, x) = 1.0;
  }
  return p;
}

}  // namespace

TEST_CASE("bell projectors and the decoding circuit") {
  const auto ideal = bell_projectors();
  ComplexMatrix sum(4, 4);
  for (const auto& m : ideal.elements) sum += m;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(4)) < 1e-15);
  CHECK_NOTHROW(ideal.validate());

  const auto r = bell_rotation();
  const auto v = bell_vectors();
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<Complex, 4> out{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out[i] += r(i, j) * v[c][j];
    CHECK(std::abs(std::abs(out[c]) - 1.0) < 1e-15);
  }
  // Phi+ = (|00> + |11>)/sqrt2 carries label 00.
  CHECK(std::abs(ideal.elements[0](0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(ideal.elements[0](3, 3) - 0.5) < 1e-15);
  CHECK(std::abs(ideal.elements[0](0, 3) - 0.5) < 1e-15);
}

TEST_CASE("measurement settings") {
  const auto s = MeasurementSetting::from_bits({1, 0, 1, 1, 0, 1});
  REQUIRE(s.pairs.size() == 2);
  CHECK(s.pairs[0] == std::pair{0, 2});
  CHECK(s.pairs[1] == std::pair{3, 5});
  CHECK(s.to_string() == "101101");
  CHECK_THROWS_AS(MeasurementSetting::from_bits({1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(MeasurementSetting::from_bits({2, 0}), ValidationError);
  MeasurementSetting bad = s;
  bad.pairs[1] = {3, 4};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  const int draws = 100000;
  SeededStream rng(3, 0);
  int bell = 0;
  for (int i = 0; i < draws; ++i) {
    const auto t = sample_setting(2, rng);
    CHECK_NOTHROW(t.validate());
    bell += t.s[0];
    CHECK(t.s[0] == t.s[1]);
  }
  CHECK(std::abs(bell - draws / 2.0) < 5 * std::sqrt(draws * 0.25));

  std::map<std::string, int> counts;
  for (int i = 0; i < draws; ++i) counts[sample_setting(4, rng).to_string()]++;
  CHECK(counts.size() == 8);
  for (const auto& [k, c] : counts) {
    CHECK(std::abs(c - draws / 8.0) < 5 * std::sqrt(draws * (1.0 / 8) * (7.0 / 8)));
  }
  CHECK_THROWS_AS(sample_setting(1, rng), ValidationError);
}

TEST_CASE("born probabilities on simple cases") {
  SeededStream rng(1, 1);
  const auto u = sample_local_unitary(2, rng);
  for (const char* bits : {"00", "11"}) {
    const auto setting = MeasurementSetting::from_bits({std::uint8_t(bits[0] - '0'), std::uint8_t(bits[1] - '0')});
    const auto p = born_probabilities(maximally_mixed_state(2), u, setting);
    for (double x : p) CHECK(std::abs(x - 0.25) < 1e-12);
  }
  const auto id = LocalUnitary{{ComplexMatrix::identity(2), ComplexMatrix::identity(2)}};
  const auto bm = MeasurementSetting::from_bits({1, 1});
  auto p = born_probabilities(bell_state(), id, bm);
  CHECK(std::abs(p[0] - 1.0) < 1e-12);

  SeededStream prng(0, 0);
  const auto noisy = synthetic_bell_povm(kPortFidelities, 0.0, prng);
  p = born_probabilities(bell_state(), id, bm, noisy);
  CHECK(std::abs(p[0] - kPortFidelities[0]) < 1e-12);
  const auto fid = port_fidelities(noisy);
  for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(fid[c] - kPortFidelities[c]) < 1e-12);
}

TEST_CASE("ideal Bell measurement equals rotated computational measurement") {
  for (int c = 0; c < 50; ++c) {
    const int n = 2 + c % 2;
    const auto rho = fsrm::testing::random_state(n, 1 + c % 3, 100 + c);
    SeededStream rng(7, c);
    const auto u = sample_local_unitary(n, rng);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    bits[0] = bits[1] = 1;
    const auto bm = born_probabilities(rho, u, MeasurementSetting::from_bits(bits));
    auto r = bell_rotation();
    if (n == 3) r = kron(r, ComplexMatrix::identity(2));
    const auto rotated = conjugate_by(matmul(r, u.full()), rho.mat());
    double total = 0.0;
    for (std::size_t b = 0; b < bm.size(); ++b) {
      CHECK(std::abs(bm[b] - rotated(b, b).real()) < 1e-10);
      total += bm[b];
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_CASE("noisy POVM on separated pair matches an explicit operator") {
  // n = 3, s = 101: the pair is (0, 2), qubit 1 computational.
  SeededStream prng(5, 5);
  const auto povm = synthetic_bell_povm(kPortFidelities, 0.08, prng);
  const auto setting = MeasurementSetting::from_bits({1, 0, 1});
  const auto to_natural = reorder(3, {0, 2, 1});  // (q0, q2, q1) -> (q0, q1, q2)
  for (int c = 0; c < 10; ++c) {
    const auto rho = fsrm::testing::random_state(3, 2, 300 + c);
    SeededStream rng(8, c);
    const auto u = sample_local_unitary(3, rng);
    const auto sigma = conjugate_by(u.full(), rho.mat());
    const auto p = born_probabilities(rho, u, setting, povm);
    double total = 0.0;
    for (std::size_t b = 0; b < 8; ++b) {
      const std::size_t beta = 2 * ((b >> 2) & 1u) + (b & 1u);
      const std::size_t mid = (b >> 1) & 1u;
      const auto op = conjugate_by(to_natural, kron(povm.elements[beta], ket_bra(2, mid, mid)));
      CHECK(std::abs(p[b] - trace_of_product(op, sigma).real()) < 1e-12);
      CHECK(p[b] >= 0.0);
      total += p[b];
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_CASE("shot sampling") {
  const auto id = LocalUnitary{{ComplexMatrix::identity(2), ComplexMatrix::identity(2)}};
  SeededStream rng(1, 2);
  const auto rec = sample_shots(product_zero_state(2), id, MeasurementSetting::computational(2), 50, rng);
  for (auto o : rec.outcomes) CHECK(o == 0u);

  const auto rho = fsrm::testing::random_state(2, 2, 77);
  SeededStream urng(2, 2);
  const auto u = sample_local_unitary(2, urng);
  const auto setting = MeasurementSetting::from_bits({1, 1});
  SeededStream prng(4, 4);
  const auto povm = synthetic_bell_povm(kPortFidelities, 0.05, prng);
  const auto probs = born_probabilities(rho, u, setting, povm);
  const int shots = 100000;
  SeededStream srng(9, 9);
  const auto many = sample_shots(rho, u, setting, shots, srng, {}, povm);
  std::array<int, 4> counts{};
  for (auto o : many.outcomes) counts[o]++;
  for (std::size_t b = 0; b < 4; ++b)
    CHECK(std::abs(counts[b] - shots * probs[b]) < 5 * std::sqrt(shots * probs[b] * (1 - probs[b])) + 1);

  // eps = 0 is bit-exact with the noiseless sampler.
  NoiseModel zero{NoiseModel::Kind::gaussian, 0.0, false};
  SeededStream a(11, 3), b(11, 3);
  const auto plain = sample_shots(rho, u, setting, 200, a, {}, povm);
  const auto noisy0 = sample_shots(rho, u, setting, 200, b, zero, povm);
  CHECK(plain.outcomes == noisy0.outcomes);

  NoiseModel strong{NoiseModel::Kind::gaussian, 1.0, false};
  SeededStream c2(11, 3);
  CHECK(sample_shots(rho, u, setting, 200, c2, strong, povm).outcomes != plain.outcomes);
  CHECK_THROWS_AS(sample_shots(rho, u, setting, 0, c2), ValidationError);
}

TEST_CASE("rounds are structured and worker-count invariant") {
  const auto rho = fsrm::testing::random_state(2, 3, 5);
  RoundPlan plan{3, 2, false, 1};
  const auto recs = run_rounds(rho, plan, 42);
  REQUIRE(recs.size() == 3);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(recs[r].round_id == r);
    CHECK(recs[r].outcomes.size() == 2);
    CHECK(recs[r].setting.is_computational());
  }

  RoundPlan big{200, 3, true, 1};
  NoiseModel noise{NoiseModel::Kind::gaussian, 0.3, true};
  const auto one = run_rounds(rho, big, 9, noise);
  big.threads = 4;
  const auto four = run_rounds(rho, big, 9, noise);
  std::set<std::string> settings;
  for (std::size_t r = 0; r < one.size(); ++r) {
    CHECK(one[r].outcomes == four[r].outcomes);
    CHECK(one[r].setting.s == four[r].setting.s);
    CHECK(max_abs_diff(one[r].unitary.full(), four[r].unitary.full()) == 0.0);
    settings.insert(one[r].setting.to_string());
  }
  CHECK(settings.size() == 2);
  CHECK_THROWS_AS(run_rounds(fsrm::testing::random_state(1, 1, 1), big, 1), ValidationError);
}

TEST_CASE("POVM validation and serialization") {
  SeededStream prng(6, 6);
  const auto povm = synthetic_bell_povm(kPortFidelities, 0.05, prng);
  const auto back = povm_from_json(povm_to_json(povm));
  for (std::size_t c = 0; c < 4; ++c) CHECK(max_abs_diff(back.elements[c], povm.elements[c]) == 0.0);

  auto j = povm_to_json(povm);
  std::swap(j["labels"][0], j["labels"][3]);
  const auto swapped = povm_from_json(j);
  CHECK(max_abs_diff(swapped.elements[0], povm.elements[3]) == 0.0);

  NoisyBellPovm bad = bell_projectors();
  bad.elements[0] *= Complex{0.9};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  NoisyBellPovm neg = bell_projectors();
  neg.elements[0] = neg.elements[0] * Complex{1.5};
  neg.elements[1] = neg.elements[1] - bell_projectors().elements[0] * Complex{0.5};
  CHECK_THROWS_AS(neg.validate(), ValidationError);
  j["labels"][1] = "00";
  CHECK_THROWS_AS(povm_from_json(j), ValidationError);
  CHECK_THROWS_AS(synthetic_bell_povm({1.2, 0.5, 0.5, 0.5}, 0.0, prng), ValidationError);
}
