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

#include "fsrm/amendment/coefficients.h"

#include <Eigen/Dense>
#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "fsrm/errors.h"
#include "fsrm/qcore/state_io.h"

namespace fsrm {

namespace {

const char* const kLabels[4] = {"00", "01", "10", "11"};

std::string key(int c1, int c2, int c3) {
  return std::string(kLabels[c1]) + "|" + kLabels[c2] + "|" + kLabels[c3];
}

// Real form of the complex system: real parts on top, imaginary below.
void stack(const LinearSystem& sys, const std::vector<double>& row_weight, Eigen::MatrixXd& a,
           Eigen::VectorXd& b) {
  const auto rows = static_cast<Eigen::Index>(sys.matrix.rows());
  const auto cols = static_cast<Eigen::Index>(sys.matrix.cols());
  a.resize(2 * rows, cols);
  b.resize(2 * rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double w = row_weight[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Complex z = sys.matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      a(r, c) = w * z.real();
      a(rows + r, c) = w * z.imag();
    }
    b(r) = w * sys.target[static_cast<std::size_t>(r)].real();
    b(rows + r) = w * sys.target[static_cast<std::size_t>(r)].imag();
  }
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-12);
  Eigen::VectorXd x = cod.solve(b);
  for (int it = 0; it < 3; ++it) x += cod.solve(b - a * x);
  return x;
}

std::vector<double> to_vector(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace

std::string povm_hash(const NoisyBellPovm& povm) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[64];
  for (const auto& m : povm.elements)
    for (const auto& z : m.data()) {
      const int len = std::snprintf(buf, sizeof buf, "%.17g,%.17g;", z.real(), z.imag());
      for (int i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(buf[i]);
        h *= 0x100000001b3ULL;
      }
    }
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

CoefficientTable solve_coefficients(const LinearSystem& sys, const SolveOptions& opts) {
  if (sys.matrix.cols() != 64 || sys.target.size() != sys.matrix.rows())
    throw ValidationError("solve_coefficients: malformed system");
  const std::size_t rows = sys.matrix.rows();
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  stack(sys, std::vector<double>(rows, 1.0), a, b);
  std::vector<double> best = to_vector(min_norm_solve(a, b));
  double best_res = l1_residual(sys, best);

  // IRLS on the per-row moduli: weight each complex row by 1/sqrt(|r|) so the
  // weighted squares approximate the L1 objective.
  std::vector<double> x = best;
  for (int it = 0; it < 50 && best_res > 1e-10; ++it) {
    std::vector<double> w(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      Complex acc = -sys.target[r];
      for (std::size_t c = 0; c < 64; ++c) acc += sys.matrix(r, c) * x[c];
      w[r] = 1.0 / std::sqrt(std::max(std::abs(acc), 1e-12));
    }
    stack(sys, w, a, b);
    x = to_vector(min_norm_solve(a, b));
    const double res = l1_residual(sys, x);
    if (res < best_res) {
      best_res = res;
      best = x;
    }
  }
  if (!(best_res <= opts.ceiling))
    throw SolverError("solve_coefficients: best L1 residual " + std::to_string(best_res) +
                      " exceeds ceiling " + std::to_string(opts.ceiling));
  CoefficientTable t;
  std::copy(best.begin(), best.end(), t.coeffs.begin());
  t.residual = best_res;
  return t;
}

CoefficientTable amend(const NoisyBellPovm& povm, const SolveOptions& opts) {
  auto t = solve_coefficients(build_linear_system(povm), opts);
  t.povm_hash = povm_hash(povm);
  return t;
}

double error_bound(double residual, double K) {
  if (residual < 0.0 || K < 0.0) throw ValidationError("error_bound: arguments must be non-negative");
  return K * residual;
}

nlohmann::json coefficients_to_json(const CoefficientTable& t) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (int c1 = 0; c1 < 4; ++c1)
    for (int c2 = 0; c2 < 4; ++c2)
      for (int c3 = 0; c3 < 4; ++c3) coeffs[key(c1, c2, c3)] = t.at(c1, c2, c3);
  return {{"povm_hash", t.povm_hash}, {"residual", t.residual}, {"coeffs", coeffs}};
}

CoefficientTable coefficients_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 3 || !j.contains("povm_hash") || !j.contains("residual") ||
      !j.contains("coeffs"))
    throw ValidationError("coefficient file: expected exactly {\"povm_hash\", \"residual\", \"coeffs\"}");
  if (!j["povm_hash"].is_string() || !j["residual"].is_number() || !j["coeffs"].is_object())
    throw ValidationError("coefficient file: wrong field types");
  CoefficientTable t;
  t.povm_hash = j["povm_hash"].get<std::string>();
  t.residual = j["residual"].get<double>();
  if (!(t.residual >= 0.0)) throw ValidationError("coefficient file: residual must be >= 0");
  const auto& c = j["coeffs"];
  if (c.size() != 64) throw ValidationError("coefficient file: need 64 coefficients");
  for (int c1 = 0; c1 < 4; ++c1)
    for (int c2 = 0; c2 < 4; ++c2)
      for (int c3 = 0; c3 < 4; ++c3) {
        const auto k = key(c1, c2, c3);
        if (!c.contains(k) || !c[k].is_number()) throw ValidationError("coefficient file: missing " + k);
        t.coeffs[static_cast<std::size_t>(coefficient_index(c1, c2, c3))] = c[k].get<double>();
      }
  return t;
}

CoefficientTable read_coefficients_file(const std::filesystem::path& path) {
  return coefficients_from_json(read_json_file(path));
}

}  // namespace fsrm
