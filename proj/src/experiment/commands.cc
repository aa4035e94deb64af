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

#include "fsrm/experiment/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fsrm/amendment/weingarten.h"
#include "fsrm/errors.h"
#include "fsrm/estimators/shadow.h"
#include "fsrm/noisestudy/choi.h"
#include "fsrm/qcore/parallel.h"

namespace fsrm {

namespace {

using nlohmann::json;

json estimate_json(const std::string& quantity, const std::string& scheme, const MomentEstimate& e) {
  return {{"quantity", quantity}, {"scheme", scheme}, {"mean", e.mean}, {"std_error", e.std_error},
          {"rounds", e.rounds_used}};
}

double exact_value(const DensityMatrix& rho, const Partition& part, const std::string& quantity) {
  if (quantity == "p2") return purity(rho);
  const double p3 = exact_pt_moment(rho, part, 3);
  if (quantity == "p3") return p3;
  return p3_ppt_value(purity(rho), p3);
}

json partition_report(const DensityMatrix& rho, const Partition& part) {
  const double p3 = exact_pt_moment(rho, part, 3);
  return {{"partition", part.to_string()},
          {"p3", p3},
          {"negativity", negativity(rho, part)},
          {"n3", p3_ppt_value(purity(rho), p3)}};
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json cmd_oracle(const ExperimentConfig& cfg) {
  const auto rho = resolve_state(cfg.state);
  const int n = rho.n_qubits();
  json out = {{"n_qubits", n}, {"p2", purity(rho)}};
  if (n < 2) return out;
  const auto part = resolve_partition(cfg, n);
  if (!part.both_sides_nonempty()) throw ValidationError("oracle: partition must split the qubits");
  out.update(partition_report(rho, part));
  json all = json::array();
  // Every bipartition once: qubit 0 always on side A.
  for (std::uint32_t mask = 0; mask + 1 < (1u << (n - 1)); ++mask) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 1);
    for (int q = 1; q < n; ++q) bits[static_cast<std::size_t>(q)] = (mask >> (q - 1)) & 1u;
    all.push_back(partition_report(rho, Partition(bits)));
  }
  out["partitions"] = all;
  return out;
}

json cmd_estimate(const ExperimentConfig& cfg) {
  const auto rho = resolve_state(cfg.state);
  const int n = rho.n_qubits();
  const int shots = cfg.scheme == "cs" && cfg.n_m == 0 ? 1 : resolved_shots(cfg);
  const bool need_p2 = cfg.quantity != "p3";
  const bool need_p3 = cfg.quantity != "p2";
  if (cfg.n_u < 2) throw ValidationError("estimate: n_u must be >= 2");
  if (shots < 1) throw ValidationError("estimate: n_m must be >= 1");
  if (cfg.scheme != "cs") {
    if (need_p2 && shots < 2) throw ValidationError("estimate: p2 needs n_m >= 2");
    if (need_p3 && shots < 3) throw ValidationError("estimate: p3 needs n_m >= 3");
  }
  if (need_p3 && cfg.scheme == "rm")
    throw ValidationError("estimate: the plug-in RM path has no Bell settings; use fsrm or cs for p3");
  const Partition part = need_p3 ? resolve_partition(cfg, n) : Partition::first_qubit(std::max(n, 1));
  if (need_p3 && !part.both_sides_nonempty()) throw ValidationError("estimate: partition must split the qubits");

  const NoisyBellPovm povm = cfg.povm ? read_povm_file(*cfg.povm) : bell_projectors();
  std::optional<CoefficientTable> table;
  if (cfg.coefficients) {
    table = read_coefficients_file(*cfg.coefficients);
    if (table->povm_hash != povm_hash(povm))
      throw ValidationError("estimate: coefficient table was solved for a different POVM");
  }
  const bool bell_path = need_p3 && cfg.scheme == "fsrm";
  const bool biased = bell_path && cfg.povm.has_value() && !table;

  ExperimentConfig resolved = cfg;
  resolved.n_m = shots;
  if (need_p3) resolved.partition = part.to_string();
  json out;
  out["config"] = config_to_json(resolved);
  out["seed"] = cfg.seed;
  out["biased"] = biased;
  if (biased) out["warning"] = "noisy Bell POVM without amendment coefficients: p3 is biased";

  std::optional<MomentEstimate> p2, p3;
  if (cfg.scheme == "cs") {
    const auto recs = run_rounds(rho, {cfg.n_u, shots, false, cfg.threads}, derive_seed(cfg.seed, {2}), cfg.noise);
    const auto snaps = snapshots_from_records(recs);
    if (need_p2) p2 = estimate_p2_cs(snaps);
    if (need_p3) p3 = estimate_p3_cs(snaps, part, {200000, derive_seed(cfg.seed, {4})});
  } else {
    if (need_p2) {
      const auto recs =
          run_rounds(rho, {cfg.n_u, std::max(shots, 2), false, cfg.threads}, derive_seed(cfg.seed, {2}), cfg.noise);
      p2 = cfg.scheme == "rm" ? estimate_p2_rm(recs) : estimate_p2_fsrm(recs, cfg.pooling);
    }
    if (need_p3) {
      const auto recs =
          run_rounds(rho, {cfg.n_u, shots, true, cfg.threads}, derive_seed(cfg.seed, {3}), cfg.noise, povm);
      p3 = estimate_p3_fsrm(recs, part, table ? &*table : nullptr, cfg.pooling);
    }
  }

  MomentEstimate result;
  if (cfg.quantity == "p2") {
    result = *p2;
  } else if (cfg.quantity == "p3") {
    result = *p3;
  } else {
    result = combine_n3(*p2, *p3);
    out["components"] = {estimate_json("p2", cfg.scheme, *p2), estimate_json("p3", cfg.scheme, *p3)};
  }
  out.update(estimate_json(cfg.quantity, cfg.scheme, result));
  out["exact"] = exact_value(rho, part, cfg.quantity);
  return out;
}

FitResult fit_loglog(int n_m, const std::vector<ConvergeRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows)
    if (r.n_m == n_m) {
      if (!(r.err > 0.0)) throw SolverError("fit: zero or non-finite error at N = " + std::to_string(r.n));
      x.push_back(std::log10(static_cast<double>(r.n)));
      y.push_back(std::log10(r.err));
    }
  if (x.size() < 4) throw ValidationError("fit: need at least four sweep points");
  const double m = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / m;
    my += y[i] / m;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  FitResult f;
  f.n_m = n_m;
  f.points = x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.pinned_intercept = my + 0.5 * mx;
  return f;
}

ConvergeResult cmd_converge(const ExperimentConfig& cfg) {
  const auto rho = resolve_state(cfg.state);
  const int n = rho.n_qubits();
  const bool third = cfg.quantity == "p3";
  if (cfg.quantity == "n3") throw ValidationError("converge: quantity must be p2 or p3");
  if (third && cfg.scheme != "fsrm") throw ValidationError("converge: p3 sweeps use the fsrm scheme");
  std::vector<std::size_t> n_list = cfg.n_list;
  if (n_list.empty()) n_list = {2000, 4000, 8000, 16000, 32000};
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  if (n_list.size() < 4) throw ValidationError("converge: need at least four distinct N values");
  if (cfg.repetitions < 20) throw ValidationError("converge: need at least 20 repetitions");
  std::vector<int> n_ms = cfg.n_m_list;
  std::sort(n_ms.begin(), n_ms.end());
  n_ms.erase(std::unique(n_ms.begin(), n_ms.end()), n_ms.end());
  if (n_ms.empty()) throw ValidationError("converge: n_m_list is empty");
  for (int m : n_ms) {
    if (m < (third ? 3 : 2)) throw ValidationError("converge: N_M too small for the quantity");
    for (auto total : n_list)
      if (total / static_cast<std::size_t>(m) < 2) throw ValidationError("converge: some N gives fewer than two rounds");
  }
  const Partition part = third ? resolve_partition(cfg, n) : Partition::first_qubit(n);

  ConvergeResult res;
  res.exact = exact_value(rho, part, third ? "p3" : "p2");

  struct Job {
    std::size_t m_idx, n_idx, rep;
  };
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < n_ms.size(); ++a)
    for (std::size_t b = 0; b < n_list.size(); ++b)
      for (std::size_t r = 0; r < cfg.repetitions; ++r) jobs.push_back({a, b, r});
  std::vector<double> sq(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    const auto& job = jobs[i];
    const int m = n_ms[job.m_idx];
    const std::size_t total = n_list[job.n_idx];
    const std::size_t n_u = total / static_cast<std::size_t>(m);
    const auto seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(m), total, job.rep});
    const auto recs = run_rounds(rho, {n_u, m, third, 1}, seed, cfg.noise);
    double est;
    if (third) {
      est = estimate_p3_fsrm(recs, part, nullptr, cfg.pooling).mean;
    } else if (m == 2 || cfg.scheme == "fsrm") {
      est = estimate_p2_fsrm(recs, cfg.pooling).mean;
    } else {
      est = estimate_p2_rm(recs).mean;
    }
    sq[i] = (est - res.exact) * (est - res.exact);
  });

  for (std::size_t a = 0; a < n_ms.size(); ++a)
    for (std::size_t b = 0; b < n_list.size(); ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < jobs.size(); ++i)
        if (jobs[i].m_idx == a && jobs[i].n_idx == b) s += sq[i];
      res.rows.push_back({n_ms[a], n_list[b], n_list[b] / static_cast<std::size_t>(n_ms[a]),
                          std::sqrt(s / static_cast<double>(cfg.repetitions)), cfg.repetitions});
    }
  for (int m : n_ms) res.fits.push_back(fit_loglog(m, res.rows));
  res.db_gain = 10.0 * (res.fits.back().pinned_intercept - res.fits.front().pinned_intercept);
  return res;
}

std::string converge_csv(const ConvergeResult& r) {
  std::ostringstream os;
  os << "n_m,n,n_u,err,repetitions\n";
  for (const auto& row : r.rows)
    os << row.n_m << ',' << row.n << ',' << row.n_u << ',' << format_double(row.err) << ',' << row.repetitions
       << '\n';
  return os.str();
}

json converge_report(const ConvergeResult& r) {
  json fits = json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"n_m", f.n_m},
                    {"slope", f.slope},
                    {"intercept", f.intercept},
                    {"pinned_intercept", f.pinned_intercept},
                    {"points", f.points}});
  return {{"exact", r.exact}, {"fits", fits}, {"db_gain", r.db_gain}};
}

std::vector<NoiseStudyRow> cmd_noise_study(const ExperimentConfig& cfg) {
  auto experiments = cfg.experiments;
  if (experiments.empty()) experiments = {{"cs", 1}, {"fsrm", 1}, {"fsrm", 2}, {"fsrm", 3}};
  auto eps = cfg.epsilons;
  if (eps.empty()) eps = {0.1, 0.5, 1.0};
  auto counts = cfg.n_list;
  if (counts.empty()) counts = {100, 1000, 10000};
  std::vector<NoiseStudyRow> rows;
  for (const auto& e : experiments)
    for (double epsilon : eps) {
      const int k = e.scheme == "cs" ? 1 : e.k;
      for (const auto& pt : err_curve(e.scheme, k, epsilon, cfg.dimension, counts, cfg.seed, cfg.threads))
        rows.push_back({e.scheme, k, epsilon, pt.n, pt.err, cfg.seed});
    }
  return rows;
}

std::string noise_study_csv(const std::vector<NoiseStudyRow>& rows) {
  std::ostringstream os;
  os << "scheme,k,epsilon,N,err,seed\n";
  for (const auto& r : rows)
    os << r.scheme << ',' << r.k << ',' << format_double(r.epsilon) << ',' << r.n << ',' << format_double(r.err)
       << ',' << r.seed << '\n';
  return os.str();
}

AmendResult cmd_amend(const ExperimentConfig& cfg) {
  if (!cfg.povm) throw ValidationError("amend: a POVM file is required (config key 'povm')");
  const auto povm = read_povm_file(*cfg.povm);
  AmendResult r;
  r.table = amend(povm);
  r.K = weingarten(3, 2).two_sided_K();
  r.bound = error_bound(r.table.residual, r.K);
  return r;
}

json amend_report(const AmendResult& r) {
  return {{"povm_hash", r.table.povm_hash}, {"residual", r.table.residual}, {"K", r.K}, {"bound", r.bound}};
}

DensityMatrix cmd_make_state(const ExperimentConfig& cfg) { return resolve_state(cfg.state); }

NoisyBellPovm cmd_make_povm(const ExperimentConfig& cfg) {
  SeededStream rng(cfg.seed, 0);
  return synthetic_bell_povm(cfg.fidelities, cfg.rotation, rng);
}

}  // namespace fsrm
