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

#include "fsrm/qcore/state_io.h"

#include <fstream>

#include "fsrm/errors.h"

namespace fsrm {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({{"re", m(i, j).real()}, {"im", m(i, j).imag()}});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix: expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ValidationError("matrix: rows must be non-empty arrays");
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols) throw ValidationError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = row[c];
      if (!e.is_object() || !e.contains("re") || !e.contains("im") || !e["re"].is_number() ||
          !e["im"].is_number() || e.size() != 2)
        throw ValidationError("matrix: entries must be {\"re\": number, \"im\": number}");
      m(r, c) = Complex{e["re"].get<double>(), e["im"].get<double>()};
    }
  }
  if (!m.all_finite()) throw ValidationError("matrix: non-finite entry");
  return m;
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  return {{"n_qubits", rho.n_qubits()}, {"matrix", matrix_to_json(rho.mat())}};
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("matrix") || j.size() != 2)
    throw ValidationError("state file: expected exactly {\"n_qubits\", \"matrix\"}");
  if (!j["n_qubits"].is_number_integer()) throw ValidationError("state file: n_qubits must be an integer");
  return DensityMatrix(j["n_qubits"].get<int>(), matrix_from_json(j["matrix"]));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

DensityMatrix read_state_file(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
  write_json_file(path, state_to_json(rho));
}

}  // namespace fsrm
