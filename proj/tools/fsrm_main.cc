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

// Command-line driver. Every subcommand reads an optional JSON config; flags
// override the config. Exit codes: 0 ok, 2 invalid input, 3 solver failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fsrm/amendment/coefficients.h"
#include "fsrm/errors.h"
#include "fsrm/experiment/commands.h"
#include "fsrm/experiment/config.h"
#include "fsrm/qcore/state_io.h"

namespace {

using fsrm::ExperimentConfig;

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw fsrm::ValidationError("cannot open output file " + path);
  f << text;
  if (!f) throw fsrm::ValidationError("failed writing " + path);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int run(const std::string& command, const ExperimentConfig& cfg) {
  if (command == "oracle") {
    emit(cfg.out, dump(fsrm::cmd_oracle(cfg)));
  } else if (command == "estimate") {
    emit(cfg.out, dump(fsrm::cmd_estimate(cfg)));
  } else if (command == "converge") {
    const auto res = fsrm::cmd_converge(cfg);
    emit(cfg.out.empty() ? "converge.csv" : cfg.out, fsrm::converge_csv(res));
    std::cout << dump(fsrm::converge_report(res));
  } else if (command == "amend") {
    const auto res = fsrm::cmd_amend(cfg);
    emit(cfg.out.empty() ? "coefficients.json" : cfg.out, dump(fsrm::coefficients_to_json(res.table)));
    std::cout << dump(fsrm::amend_report(res));
  } else if (command == "noise-study") {
    emit(cfg.out, fsrm::noise_study_csv(fsrm::cmd_noise_study(cfg)));
  } else if (command == "make-state") {
    emit(cfg.out, dump(fsrm::state_to_json(fsrm::cmd_make_state(cfg))));
  } else if (command == "make-povm") {
    const auto povm = fsrm::cmd_make_povm(cfg);
    emit(cfg.out, dump(fsrm::povm_to_json(povm)));
    if (!cfg.out.empty()) {
      const auto f = fsrm::port_fidelities(povm);
      std::cout << dump({{"port_fidelities", f}, {"overall_fidelity", (f[0] + f[1] + f[2] + f[3]) / 4}});
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Few-shot randomized measurement toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool single_thread = false;
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  auto* out_opt = app.add_option("--out", out, "output path");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_flag("--single-thread", single_thread, "run on one thread");

  const char* commands[][2] = {
      {"oracle", "exact moments and negativity of a state"},
      {"estimate", "simulate a scheme and estimate p2, p3 or n3"},
      {"converge", "error-versus-N sweep with log-log fits"},
      {"amend", "solve amendment coefficients for a Bell POVM"},
      {"noise-study", "channel error curves under unitary noise"},
      {"make-state", "write a state file"},
      {"make-povm", "write a synthetic noisy Bell POVM"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : fsrm::read_config_file(config_path);
    if (*seed_opt) cfg.seed = seed;
    if (*out_opt) cfg.out = out;
    if (*threads_opt) cfg.threads = threads;
    if (single_thread) cfg.threads = 1;
    return run(app.get_subcommands().front()->get_name(), cfg);
  } catch (const fsrm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fsrm::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
