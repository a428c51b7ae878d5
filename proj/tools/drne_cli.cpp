// Copyright 2026 The drne Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "drne/drne.h"

namespace {

// 0 ok, 1 failure (numeric, contract, failed check), 2 bad input, 3 I/O.
int ExitCode(drne_status status) {
  switch (status) {
    case DRNE_OK: return 0;
    case DRNE_ERR_PARAMETER:
    case DRNE_ERR_CONFIG:
    case DRNE_ERR_SHAPE:
    case DRNE_ERR_NULL: return 2;
    case DRNE_ERR_IO: return 3;
    default: return 1;
  }
}

int Report(drne_status status) {
  if (status != DRNE_OK) {
    std::fprintf(stderr, "drne: %s: %s\n", drne_status_string(status), drne_last_error());
  }
  return ExitCode(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributionally robust Nash equilibrium solver"};
  app.set_version_flag("--version", std::string(drne_version()));
  app.require_subcommand(1);

  int workers = 1;
  std::string out_dir;
  bool quiet = false;
  double perturbation = 0.0;
  app.add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  std::string config_path;
  std::string checkpoint_path;
  auto* run = app.add_subcommand("run", "Run every (batch size, seed) pair of a config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  auto* selftest = app.add_subcommand("selftest", "Check the solver against built-in oracles");
  selftest->add_option("--simplex-perturbation", perturbation,
                       "Shift added to simplex projections (testing hook)");
  auto* gap = app.add_subcommand("gap", "Restricted gap and residual of a checkpoint");
  gap->add_option("checkpoint", checkpoint_path, "Binary checkpoint")->required();
  gap->add_option("config", config_path, "Experiment config (JSON)")->required();
  for (auto* sub : {run, selftest, gap}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  drne_cmd_options options;
  drne_cmd_options_init(&options);
  options.workers = workers;
  options.quiet = quiet ? 1 : 0;
  options.out_dir = out_dir.empty() ? nullptr : out_dir.c_str();
  options.selftest_simplex_perturbation = perturbation;

  if (*run) return Report(drne_cmd_run(config_path.c_str(), &options));
  if (*selftest) return Report(drne_cmd_selftest(&options));
  return Report(drne_cmd_gap(checkpoint_path.c_str(), config_path.c_str(), &options));
}
