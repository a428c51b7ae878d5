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

#ifndef DRNE_EXPERIMENT_HPP_
#define DRNE_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "drne/config.hpp"
#include "drne/diagnostics.hpp"
#include "drne/io.hpp"

namespace drne {

struct ExperimentOptions {
  int workers = 1;
  std::optional<std::string> out_dir;  // overrides output.directory
  std::ostream* log = nullptr;         // progress lines; null for quiet
};

struct RunRecord {
  int batch_size = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::string history_path;     // relative to the output directory
  std::string checkpoint_path;  // final ergodic average; iterate_<tag>.bin holds z^T
  std::vector<CurveRow> curve;
};

// Everything written by one `run` invocation. manifest.json lists every file
// and run, in (batch_size, seed) order.
struct ResultBundle {
  std::string directory;
  std::vector<RunRecord> runs;  // ordered by (batch_size, seed)
  std::vector<GapCurveRow> gap_curve;
  std::vector<std::string> files;  // relative paths, manifest last
  int failures = 0;
};

// Builds the instance, runs every (batch size x seed) pair on `workers`
// threads, evaluates the gap curve of each run, and writes the artifacts.
ResultBundle RunExperiment(const ExperimentConfig& config,
                           const ExperimentOptions& options);

struct GapReport {
  GapEstimate gap;
  double residual = 0.0;
  double residual_step = 1.0;
  std::size_t self_probes = 0;
  std::size_t initial_probes = 0;
  std::size_t sampled_probes = 0;
  std::size_t vertex_probes = 0;
};

// Gap and residual of a saved point. Probes: the point itself, the default
// initial point, and the configured samples and vertices.
GapReport EvaluateCheckpoint(const GameDefinition& game, const JointPoint& z,
                             const DiagnosticsConfig& diagnostics);
GapReport GapCommand(const std::string& checkpoint_path,
                     const ExperimentConfig& config);
void PrintGapReport(const GapReport& report, std::ostream& out);

struct SelfTestOptions {
  // Added to every simplex projection inside the oracle check. Test hook: any
  // value above 1e-9 must make that check fail.
  double simplex_perturbation = 0.0;
  std::optional<std::string> report_dir;
};

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfTestReport {
  std::vector<SelfTestCheck> checks;
  bool passed() const;
};

SelfTestReport RunSelfTest(const SelfTestOptions& options);
void PrintSelfTestReport(const SelfTestReport& report, std::ostream& out);

}  // namespace drne

#endif  // DRNE_EXPERIMENT_HPP_
