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

#include "fsrm/experiment/config.h"

#include <set>

#include "fsrm/ensembles/ensembles.h"
#include "fsrm/errors.h"
#include "fsrm/qcore/state_io.h"

namespace fsrm {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ValidationError(where + ": unknown key '" + k + "'");
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": bad value for '" + key + "'");
  }
}

std::size_t get_count(const json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
    throw ValidationError(where + ": '" + key + "' must be a non-negative integer");
  return j.at(key).get<std::size_t>();
}

StateSource source_from_json(const json& j) {
  StateSource s;
  if (j.is_string()) {
    s.builtin = j.get<std::string>();
  } else {
    check_keys(j, {"builtin", "file", "p", "n_qubits", "rank", "seed"}, "state");
    if (j.contains("file") == j.contains("builtin"))
      throw ValidationError("state: give exactly one of 'builtin' or 'file'");
    if (j.contains("file")) s.file = get<std::string>(j, "file", "state");
    if (j.contains("builtin")) s.builtin = get<std::string>(j, "builtin", "state");
    if (j.contains("p")) s.p = get<double>(j, "p", "state");
    if (j.contains("n_qubits")) s.n_qubits = static_cast<int>(get_count(j, "n_qubits", "state"));
    if (j.contains("rank")) s.rank = get_count(j, "rank", "state");
    if (j.contains("seed")) s.seed = get<std::uint64_t>(j, "seed", "state");
  }
  static const std::set<std::string> known = {"bell", "werner", "product", "mixed", "random"};
  if (s.file.empty() && !known.count(s.builtin))
    throw ValidationError("state: unknown builtin '" + s.builtin + "'");
  return s;
}

json state_to_config_json(const StateSource& s) {
  if (!s.file.empty()) return {{"file", s.file.string()}};
  json j = {{"builtin", s.builtin}};
  if (s.builtin == "werner") j["p"] = s.p;
  if (s.builtin == "product" || s.builtin == "mixed" || s.builtin == "random") j["n_qubits"] = s.n_qubits;
  if (s.builtin == "random") {
    j["rank"] = s.rank;
    j["seed"] = s.seed;
  }
  return j;
}

}  // namespace

DensityMatrix resolve_state(const StateSource& src) {
  if (!src.file.empty()) return read_state_file(src.file);
  if (src.builtin == "bell") return bell_state();
  if (src.builtin == "werner") return werner_state(src.p);
  if (src.n_qubits < 1 || src.n_qubits > 12) throw ValidationError("state: n_qubits must lie in 1..12");
  if (src.builtin == "product") return product_zero_state(src.n_qubits);
  if (src.builtin == "mixed") return maximally_mixed_state(src.n_qubits);
  if (src.builtin == "random") {
    SeededStream rng(src.seed, 0);
    return sample_density_matrix(src.n_qubits, src.rank, rng);
  }
  throw ValidationError("state: unknown builtin '" + src.builtin + "'");
}

ExperimentConfig config_from_json(const json& j) {
  check_keys(j, {"state", "scheme", "quantity", "partition", "n_u", "n_m", "noise", "povm", "coefficients",
                 "seed", "out", "pooling", "threads", "converge", "noise_study", "make_povm"},
             "config");
  ExperimentConfig c;
  if (j.contains("state")) c.state = source_from_json(j["state"]);
  if (j.contains("scheme")) c.scheme = get<std::string>(j, "scheme", "config");
  if (j.contains("quantity")) c.quantity = get<std::string>(j, "quantity", "config");
  if (j.contains("partition")) c.partition = get<std::string>(j, "partition", "config");
  if (j.contains("n_u")) c.n_u = get_count(j, "n_u", "config");
  if (j.contains("n_m")) c.n_m = static_cast<int>(get_count(j, "n_m", "config"));
  if (j.contains("noise")) {
    const auto& n = j["noise"];
    check_keys(n, {"kind", "epsilon", "per_round_fixed"}, "noise");
    const auto kind = n.contains("kind") ? get<std::string>(n, "kind", "noise") : std::string("gaussian");
    if (kind == "none") {
      c.noise.kind = NoiseModel::Kind::none;
    } else if (kind == "gaussian") {
      c.noise.kind = NoiseModel::Kind::gaussian;
    } else {
      throw ValidationError("noise: kind must be 'none' or 'gaussian'");
    }
    if (n.contains("epsilon")) c.noise.epsilon = get<double>(n, "epsilon", "noise");
    if (n.contains("per_round_fixed")) c.noise.per_round_fixed = get<bool>(n, "per_round_fixed", "noise");
    if (!(c.noise.epsilon >= 0.0)) throw ValidationError("noise: epsilon must be >= 0");
  }
  if (j.contains("povm")) c.povm = get<std::string>(j, "povm", "config");
  if (j.contains("coefficients")) c.coefficients = get<std::string>(j, "coefficients", "config");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
  if (j.contains("out")) c.out = get<std::string>(j, "out", "config");
  if (j.contains("threads")) c.threads = static_cast<unsigned>(get_count(j, "threads", "config"));
  if (j.contains("pooling")) {
    const auto p = get<std::string>(j, "pooling", "config");
    if (p == "all") {
      c.pooling = Pooling::all;
    } else if (p == "consecutive") {
      c.pooling = Pooling::consecutive;
    } else {
      throw ValidationError("config: pooling must be 'all' or 'consecutive'");
    }
  }
  if (j.contains("converge")) {
    const auto& v = j["converge"];
    check_keys(v, {"n_list", "n_m_list", "repetitions"}, "converge");
    if (v.contains("n_list")) c.n_list = get<std::vector<std::size_t>>(v, "n_list", "converge");
    if (v.contains("n_m_list")) c.n_m_list = get<std::vector<int>>(v, "n_m_list", "converge");
    if (v.contains("repetitions")) c.repetitions = get_count(v, "repetitions", "converge");
  }
  if (j.contains("noise_study")) {
    const auto& v = j["noise_study"];
    check_keys(v, {"experiments", "epsilons", "n_list", "d"}, "noise_study");
    if (v.contains("experiments")) {
      if (!v["experiments"].is_array()) throw ValidationError("noise_study: experiments must be a list");
      for (const auto& e : v["experiments"]) {
        check_keys(e, {"scheme", "k"}, "noise_study experiment");
        NoiseStudyExperiment x;
        if (e.contains("scheme")) x.scheme = get<std::string>(e, "scheme", "noise_study experiment");
        if (e.contains("k")) x.k = static_cast<int>(get_count(e, "k", "noise_study experiment"));
        c.experiments.push_back(x);
      }
    }
    if (v.contains("epsilons")) c.epsilons = get<std::vector<double>>(v, "epsilons", "noise_study");
    if (v.contains("n_list")) c.n_list = get<std::vector<std::size_t>>(v, "n_list", "noise_study");
    if (v.contains("d")) c.dimension = get_count(v, "d", "noise_study");
  }
  if (j.contains("make_povm")) {
    const auto& v = j["make_povm"];
    check_keys(v, {"fidelities", "fidelity", "rotation"}, "make_povm");
    if (v.contains("fidelities") && v.contains("fidelity"))
      throw ValidationError("make_povm: give 'fidelities' or 'fidelity', not both");
    if (v.contains("fidelities")) c.fidelities = get<std::array<double, 4>>(v, "fidelities", "make_povm");
    if (v.contains("fidelity")) c.fidelities.fill(get<double>(v, "fidelity", "make_povm"));
    if (v.contains("rotation")) c.rotation = get<double>(v, "rotation", "make_povm");
  }

  static const std::set<std::string> schemes = {"fsrm", "rm", "cs"};
  static const std::set<std::string> quantities = {"p2", "p3", "n3"};
  if (!schemes.count(c.scheme)) throw ValidationError("config: scheme must be fsrm, rm or cs");
  if (!quantities.count(c.quantity)) throw ValidationError("config: quantity must be p2, p3 or n3");
  return c;
}

ExperimentConfig read_config_file(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"state", state_to_config_json(c.state)},
            {"scheme", c.scheme},
            {"quantity", c.quantity},
            {"partition", c.partition},
            {"n_u", c.n_u},
            {"n_m", c.n_m},
            {"noise",
             {{"kind", c.noise.kind == NoiseModel::Kind::none ? "none" : "gaussian"},
              {"epsilon", c.noise.epsilon},
              {"per_round_fixed", c.noise.per_round_fixed}}},
            {"seed", c.seed},
            {"out", c.out},
            {"pooling", c.pooling == Pooling::all ? "all" : "consecutive"},
            {"threads", c.threads}};
  if (c.povm) j["povm"] = c.povm->string();
  if (c.coefficients) j["coefficients"] = c.coefficients->string();
  return j;
}

Partition resolve_partition(const ExperimentConfig& cfg, int n_qubits) {
  const Partition p = cfg.partition.empty() ? Partition::first_qubit(n_qubits) : Partition::parse(cfg.partition);
  if (p.size() != n_qubits) throw ValidationError("config: partition length differs from the qubit count");
  return p;
}

int resolved_shots(const ExperimentConfig& cfg) {
  if (cfg.n_m > 0) return cfg.n_m;
  return cfg.quantity == "p2" ? 2 : 3;
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed);
  for (auto x : path) h = splitmix64(h ^ splitmix64(x + 0x9e3779b97f4a7c15ULL));
  return h;
}

}  // namespace fsrm
