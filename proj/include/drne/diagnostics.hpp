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

#ifndef DRNE_DIAGNOSTICS_HPP_
#define DRNE_DIAGNOSTICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "drne/game.hpp"
#include "drne/joint_point.hpp"
#include "drne/solver.hpp"
#include "drne/vi_operator.hpp"

namespace drne {

enum class ProbeKind { kSelf, kInitial, kHistory, kSampled, kVertex, kGrid };
enum class GapMethod { kGrid, kSampled, kHistoryAugmented };

const char* ProbeKindName(ProbeKind kind);
const char* GapMethodName(GapMethod method);

struct ProbeSet {
  GapMethod method = GapMethod::kSampled;
  std::vector<JointPoint> points;
  std::vector<ProbeKind> kinds;

  void Add(JointPoint point, ProbeKind kind);
  std::size_t size() const { return points.size(); }
  std::size_t Count(ProbeKind kind) const;
};

struct ProbeOptions {
  int samples = 512;
  int vertex_probes = 64;
  std::uint64_t seed = 0;
};

// x uniform in the boxes, each weight block uniform on its simplex.
JointPoint SampleFeasiblePoint(const GameDefinition& game, Rng& rng);
// A uniform sample with a random nonempty subset of players moved to a box
// vertex and a simplex vertex.
JointPoint SampleVertexPoint(const GameDefinition& game, Rng& rng);

// `anchors` (typically run checkpoints) plus uniform samples and vertex probes.
ProbeSet BuildProbeSet(const GameDefinition& game,
                       std::span<const JointPoint> anchors,
                       const ProbeOptions& options);

// Regular grid over the strategy boxes with uniform weights. Only for tiny
// instances; refuses grids with more than 10^6 points.
ProbeSet GridProbes(const GameDefinition& game, int per_axis);

struct GapEstimate {
  double value = 0.0;
  std::size_t argmax = 0;
  ProbeKind argmax_kind = ProbeKind::kSampled;
  JointPoint probe;
  OperatorValue selection;  // operator selection at the maximizing probe
  std::size_t probe_count = 0;
  GapMethod method = GapMethod::kSampled;
};

// max over probes y and over extreme selections g in F(y) of <g, z - y>.
// Selections differ from the default only at active kinks (|h - u| <= 1e-9);
// the sup over those is taken term by term, which is exact for the product of
// kink branches. Operator values are always full-batch.
class GapEvaluator {
 public:
  GapEvaluator(const GameDefinition& game, ProbeSet probes);

  GapEstimate Evaluate(const JointPoint& z) const;
  const ProbeSet& probes() const { return probes_; }

 private:
  struct KinkDelta {
    int player = 0;
    Vector delta;  // alternate - default selection over the player's block
  };

  const GameDefinition* game_;
  ProbeSet probes_;
  std::vector<OperatorValue> values_;
  std::vector<std::vector<KinkDelta>> kinks_;
};

GapEstimate RestrictedGap(const GameDefinition& game, const JointPoint& z,
                          const ProbeSet& probes);

// |z - P_Z(z - step * g(z))| / step with the full-batch default selection.
double ProjectedResidual(const GameDefinition& game, const JointPoint& z,
                         double step);

struct CurveRow {
  std::int64_t iterations = 0;
  double gap = 0.0;
  double residual = 0.0;
};

// Gap and residual of the ergodic average at every checkpoint of `history`.
// The probe set is shared by all checkpoints: the checkpoint averages, the
// logged iterates, and `options` samples.
std::vector<CurveRow> EvaluateGapCurve(const GameDefinition& game,
                                       const RunHistory& history,
                                       const ProbeOptions& options,
                                       double residual_step);

enum class RateMetric { kGap, kResidual };

struct RatePoint {
  std::int64_t iterations = 0;
  double value = 0.0;
};

struct RateFit {
  std::vector<RatePoint> points;  // points used by the fit
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;          // RMS of the log-log fit
  std::size_t excluded = 0;
  std::vector<std::string> warnings;
};

// Least squares of log(value) against log(T). Nonpositive values are dropped
// with a warning; the remaining points must number at least five and span at
// least two decades of T.
RateFit FitRate(std::span<const RatePoint> curve);
RateFit FitRate(std::span<const CurveRow> curve, RateMetric metric);

struct AssumptionProbeOptions {
  int samples = 1000;           // monotonicity pairs
  int variance_points = 20;     // feasible points for variance estimates
  int draws = 2000;             // batch draws per point and batch size
  std::vector<int> batch_sizes{5, 10, 20, 40};
  std::uint64_t seed = 0;
};

struct VarianceRow {
  int batch_size = 0;
  double nu1_sq = 0.0;  // mean |g1_B - g1|^2
  double nu2_sq = 0.0;  // mean |g2_B - g2|^2
  double m1_sq = 0.0;   // max over points of mean |g1_B|^2
  double m2_sq = 0.0;   // max over points of mean |g2_B|^2
};

struct AssumptionReport {
  double monotonicity_min = 0.0;
  std::vector<VarianceRow> variance;
  double nu1_sq = 0.0;  // max_b b * variance, the constant in Var <= nu^2 / b
  double nu2_sq = 0.0;
  double mx_sq = 0.0;
  double mp_sq = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;
  int variance_points = 0;
  int draws = 0;
};

AssumptionReport ProbeAssumptions(const GameDefinition& game,
                                  const AssumptionProbeOptions& options);

}  // namespace drne

#endif  // DRNE_DIAGNOSTICS_HPP_
