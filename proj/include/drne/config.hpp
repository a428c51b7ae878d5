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

#ifndef DRNE_CONFIG_HPP_
#define DRNE_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "drne/game.hpp"
#include "drne/solver.hpp"

namespace drne {

// Experiment configuration. The JSON form is
//
//   {
//     "instance": {"family": "cvar", "n": 5, "n_i": 10, "m": 100,
//                  "alpha": 0.95, "bounds": 10, "seed": 1,
//                  "xi1_range": [0.5, 1.5], "xi2_range": [-1, 1]},
//     "solver": {"T": 20000, "batch_sizes": [5, 20, 100],
//                "schedule": "theorem1", "dual_schedule": "theorem1",
//                "seeds": [1, 2, 3, 4, 5], "log_cadence": "geometric"},
//     "diagnostics": {"probe_samples": 512, "vertex_probes": 64,
//                     "probe_seed": 0, "residual_step": 1.0},
//     "output": {"directory": "drne_out", "emit_svg": true, "emit_csv": true}
//   }
//
// Every key is optional and defaults to the values shown. A schedule is
// "theorem1", {"kind": "constant", "value": v} or
// {"kind": "power", "scale": a, "exponent": k}. A cadence is "geometric",
// "full", {"every": k} or {"checkpoints": [T1, T2, ...]}. Each run uses
// b1 = b2 = the batch size. Unknown keys are rejected.

struct SolverConfig {
  std::int64_t iterations = 20000;
  std::vector<int> batch_sizes{5, 20, 100};
  StepSchedule primal_schedule;
  StepSchedule dual_schedule;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  LogCadence cadence;
};

struct DiagnosticsConfig {
  int probe_samples = 512;
  int vertex_probes = 64;
  std::uint64_t probe_seed = 0;
  double residual_step = 1.0;
};

struct OutputConfig {
  std::string directory = "drne_out";
  bool emit_svg = true;
  bool emit_csv = true;
};

struct ExperimentConfig {
  InstanceSpec instance{CostFamily::kCvar, 5, 10, 100, 0.95, 10.0, 1, {0.5, 1.5}, {-1.0, 1.0}};
  SolverConfig solver;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
};

// Throws Error(kConfig) naming the offending field path, e.g.
// "solver.batch_sizes[2]".
ExperimentConfig ParseConfig(std::string_view text);
std::string SerializeConfig(const ExperimentConfig& config);
ExperimentConfig LoadConfig(const std::string& path);

// Instance file: {family, n, n_i, m, alpha, bounds, seed, xi1_range, xi2_range}.
std::string SerializeInstance(const InstanceSpec& spec);
InstanceSpec ParseInstance(std::string_view text);

}  // namespace drne

#endif  // DRNE_CONFIG_HPP_
