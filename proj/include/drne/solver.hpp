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

#ifndef DRNE_SOLVER_HPP_
#define DRNE_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "drne/game.hpp"
#include "drne/joint_point.hpp"
#include "drne/vi_operator.hpp"

namespace drne {

// Step-size sequence indexed from t = 0.
//   theorem1: 1 / (sqrt(1 + t) * ln(t + 2))
//   constant: value
//   power:    scale / (1 + t)^exponent
struct StepSchedule {
  enum class Kind { kTheorem1, kConstant, kPower };

  Kind kind = Kind::kTheorem1;
  double value = 0.0;
  double scale = 1.0;
  double exponent = 0.5;

  static StepSchedule Theorem1() { return {}; }
  static StepSchedule Constant(double v);
  static StepSchedule Power(double scale, double exponent);
};

double StepValue(const StepSchedule& schedule, std::int64_t t);

// Which iterates are recorded and where ergodic snapshots are taken.
//   geometric: t in {0, 1, 2, 4, 8, ...} plus the final iterate
//   full:      every t
//   every:     multiples of `every` plus 0 and the final iterate
//   explicit:  the listed t values plus 0 and the final iterate
struct LogCadence {
  enum class Kind { kGeometric, kFull, kEvery, kExplicit };

  Kind kind = Kind::kGeometric;
  std::int64_t every = 1;
  std::vector<std::int64_t> points;

  static LogCadence Geometric() { return {}; }
  static LogCadence Full() { return {Kind::kFull, 1, {}}; }
  static LogCadence Every(std::int64_t k);
  static LogCadence Explicit(std::vector<std::int64_t> points);

  bool Logs(std::int64_t t, std::int64_t total) const;
};

struct RunOptions {
  StepSchedule primal_schedule;  // lambda_t
  StepSchedule dual_schedule;    // gamma_t
  std::int64_t iterations = 1000;
  int b1 = 1;
  int b2 = 1;
  std::uint64_t seed = 0;
  LogCadence cadence;
  // Materialize w1 = g1_B - g1 and w2 = g2_B - g2 at logged iterations. Costs
  // one full-batch evaluation per logged step.
  bool record_noise = false;
};

struct NoiseRecord {
  Vector w1;
  Vector w2;
};

struct RunHistory {
  struct Entry {
    std::int64_t t = 0;
    JointPoint z;           // z^t, before step t
    double lambda = 0.0;    // lambda_t (zero for the final entry)
    double gamma = 0.0;
    MiniBatch batch;        // batch consumed by step t (empty for the final entry)
    std::optional<NoiseRecord> noise;
  };
  struct Checkpoint {
    std::int64_t iterations = 0;  // T: average over t = 0..T-1
    JointPoint average;
    double step_norm = 0.0;       // |z^T - z^(T-1)|
    double lambda = 0.0;          // lambda_(T-1), the last step taken
    double gamma = 0.0;
  };

  RunOptions options;
  std::vector<Entry> entries;
  std::vector<Checkpoint> checkpoints;
  JointPoint final_iterate;
  double lambda_sum = 0.0;
  double gamma_sum = 0.0;
  Vector weighted_x;  // sum_t lambda_t x^t
  Vector weighted_p;  // sum_t gamma_t p^t
  double max_norm = 0.0;

  std::int64_t iterations() const { return options.iterations; }
  JointPoint FinalAverage() const;
};

// One simultaneous projected step: both oracles are evaluated at z.
JointPoint GdaStep(const GameDefinition& game, const JointPoint& z,
                   double lambda, double gamma, const MiniBatch& batch);

// Runs `options.iterations` steps from z0 (projected first if infeasible).
RunHistory Run(const GameDefinition& game, const JointPoint& z0,
               const RunOptions& options);

// Step-weighted average of z^0..z^(T-1). Served from a snapshot when T is a
// checkpoint, otherwise rebuilt from logged iterates when every t < T is logged.
JointPoint ErgodicAverage(const RunHistory& history, std::int64_t T);

}  // namespace drne

#endif  // DRNE_SOLVER_HPP_
