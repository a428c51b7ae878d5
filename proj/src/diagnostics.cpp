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

#include "drne/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "drne/errors.hpp"
#include "drne/projections.hpp"

namespace drne {
namespace {

constexpr double kKinkTol = 1e-9;

Vector SampleSimplex(int m, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vector w(m);
  for (int j = 0; j < m; ++j) w[j] = expo(rng);
  return w / w.sum();
}

}  // namespace

const char* ProbeKindName(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::kSelf: return "self";
    case ProbeKind::kInitial: return "initial";
    case ProbeKind::kHistory: return "history";
    case ProbeKind::kSampled: return "sampled";
    case ProbeKind::kVertex: return "vertex";
    case ProbeKind::kGrid: return "grid";
  }
  return "unknown";
}

const char* GapMethodName(GapMethod method) {
  switch (method) {
    case GapMethod::kGrid: return "grid";
    case GapMethod::kSampled: return "sampled";
    case GapMethod::kHistoryAugmented: return "history-augmented";
  }
  return "unknown";
}

void ProbeSet::Add(JointPoint point, ProbeKind kind) {
  points.push_back(std::move(point));
  kinds.push_back(kind);
}

std::size_t ProbeSet::Count(ProbeKind kind) const {
  return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), kind));
}

JointPoint SampleFeasiblePoint(const GameDefinition& game, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  JointPoint z;
  z.x.resize(game.x_dim());
  for (Eigen::Index k = 0; k < z.x.size(); ++k) {
    z.x[k] = game.lower()[k] + unit(rng) * (game.upper()[k] - game.lower()[k]);
  }
  z.p.resize(game.p_dim());
  for (int i = 0; i < game.players(); ++i) {
    z.p.segment(game.weight_offset(i), game.scenarios()) =
        SampleSimplex(game.scenarios(), rng);
  }
  return z;
}

JointPoint SampleVertexPoint(const GameDefinition& game, Rng& rng) {
  JointPoint z = SampleFeasiblePoint(game, rng);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> pick_player(0, game.players() - 1);
  std::uniform_int_distribution<int> pick_scenario(0, game.scenarios() - 1);
  std::vector<bool> chosen(static_cast<std::size_t>(game.players()));
  for (auto&& c : chosen) c = coin(rng);
  chosen[static_cast<std::size_t>(pick_player(rng))] = true;
  for (int i = 0; i < game.players(); ++i) {
    if (!chosen[static_cast<std::size_t>(i)]) continue;
    for (int k = 0; k < game.block_dim(); ++k) {
      const Eigen::Index idx = game.block_offset(i) + k;
      z.x[idx] = coin(rng) ? game.upper()[idx] : game.lower()[idx];
    }
    auto w = z.p.segment(game.weight_offset(i), game.scenarios());
    w.setZero();
    w[pick_scenario(rng)] = 1.0;
  }
  return z;
}

ProbeSet BuildProbeSet(const GameDefinition& game,
                       std::span<const JointPoint> anchors,
                       const ProbeOptions& options) {
  Require(options.samples >= 0 && options.vertex_probes >= 0, ErrorCode::kParameter,
          "probe counts must be nonnegative");
  ProbeSet probes;
  probes.method = anchors.empty() ? GapMethod::kSampled : GapMethod::kHistoryAugmented;
  for (const auto& a : anchors) {
    game.CheckShape(a);
    probes.Add(a, ProbeKind::kHistory);
  }
  Rng rng(options.seed);
  for (int s = 0; s < options.samples; ++s)
    probes.Add(SampleFeasiblePoint(game, rng), ProbeKind::kSampled);
  for (int s = 0; s < options.vertex_probes; ++s)
    probes.Add(SampleVertexPoint(game, rng), ProbeKind::kVertex);
  return probes;
}

ProbeSet GridProbes(const GameDefinition& game, int per_axis) {
  Require(per_axis >= 2, ErrorCode::kParameter, "grid needs at least 2 points per axis");
  const Eigen::Index dim = game.x_dim();
  double count = std::pow(static_cast<double>(per_axis), static_cast<double>(dim));
  Require(count <= 1e6, ErrorCode::kParameter, "grid would exceed 10^6 probes");
  ProbeSet probes;
  probes.method = GapMethod::kGrid;
  const JointPoint center = game.InitialPoint();
  std::vector<int> digits(static_cast<std::size_t>(dim), 0);
  const auto total = static_cast<long long>(count);
  for (long long n = 0; n < total; ++n) {
    long long rest = n;
    JointPoint y = center;
    for (Eigen::Index k = 0; k < dim; ++k) {
      const int d = static_cast<int>(rest % per_axis);
      rest /= per_axis;
      const double frac = static_cast<double>(d) / (per_axis - 1);
      y.x[k] = game.lower()[k] + frac * (game.upper()[k] - game.lower()[k]);
    }
    probes.Add(std::move(y), ProbeKind::kGrid);
  }
  return probes;
}

GapEvaluator::GapEvaluator(const GameDefinition& game, ProbeSet probes)
    : game_(&game), probes_(std::move(probes)) {
  Require(!probes_.points.empty(), ErrorCode::kParameter, "probe set is empty");
  values_.reserve(probes_.size());
  kinks_.resize(probes_.size());
  for (std::size_t k = 0; k < probes_.size(); ++k) {
    const JointPoint& y = probes_.points[k];
    game.CheckShape(y);
    values_.push_back(FullOperator(game, y));
    if (!game.has_auxiliary()) continue;
    const DecisionStats stats = game.Stats(y.x);
    for (int i = 0; i < game.players(); ++i) {
      for (int j = 0; j < game.scenarios(); ++j) {
        const double w = y.p[game.weight_offset(i) + j];
        Vector delta = Vector::Zero(game.block_dim());
        if (!game.AccumulateAlternateSubgradient(y.x, stats, i, j, w, delta, kKinkTol))
          continue;
        game.AccumulateSubgradient(y.x, stats, i, j, -w, delta);
        kinks_[k].push_back({i, std::move(delta)});
      }
    }
  }
}

GapEstimate GapEvaluator::Evaluate(const JointPoint& z) const {
  const GameDefinition& game = *game_;
  game.CheckShape(z);
  GapEstimate best;
  best.value = -std::numeric_limits<double>::infinity();
  best.probe_count = probes_.size();
  best.method = probes_.method;
  for (std::size_t k = 0; k < probes_.size(); ++k) {
    const JointPoint& y = probes_.points[k];
    const Vector dx = z.x - y.x;
    double value = values_[k].g1.dot(dx) + values_[k].g2.dot(z.p - y.p);
    for (const auto& kink : kinks_[k]) {
      value += std::max(0.0, kink.delta.dot(dx.segment(game.block_offset(kink.player),
                                                        game.block_dim())));
    }
    if (value > best.value) {
      best.value = value;
      best.argmax = k;
    }
  }
  const std::size_t k = best.argmax;
  best.argmax_kind = probes_.kinds[k];
  best.probe = probes_.points[k];
  best.selection = values_[k];
  const Vector dx = z.x - best.probe.x;
  for (const auto& kink : kinks_[k]) {
    const auto seg_offset = game.block_offset(kink.player);
    if (kink.delta.dot(dx.segment(seg_offset, game.block_dim())) > 0.0)
      best.selection.g1.segment(seg_offset, game.block_dim()) += kink.delta;
  }
  return best;
}

GapEstimate RestrictedGap(const GameDefinition& game, const JointPoint& z,
                          const ProbeSet& probes) {
  return GapEvaluator(game, probes).Evaluate(z);
}

double ProjectedResidual(const GameDefinition& game, const JointPoint& z,
                         double step) {
  Require(step > 0.0, ErrorCode::kParameter, "residual step must be positive");
  const OperatorValue g = FullOperator(game, z);
  const JointPoint moved{z.x - step * g.g1, z.p - step * g.g2};
  return Distance(z, ProjectJoint(moved, game)) / step;
}

std::vector<CurveRow> EvaluateGapCurve(const GameDefinition& game,
                                       const RunHistory& history,
                                       const ProbeOptions& options,
                                       double residual_step) {
  std::vector<JointPoint> anchors;
  for (const auto& c : history.checkpoints) anchors.push_back(c.average);
  for (const auto& e : history.entries) anchors.push_back(e.z);
  const GapEvaluator evaluator(game, BuildProbeSet(game, anchors, options));
  std::vector<CurveRow> rows;
  for (const auto& c : history.checkpoints) {
    CurveRow row;
    row.iterations = c.iterations;
    row.gap = evaluator.Evaluate(c.average).value;
    row.residual = ProjectedResidual(game, c.average, residual_step);
    rows.push_back(row);
  }
  return rows;
}

RateFit FitRate(std::span<const RatePoint> curve) {
  RateFit fit;
  for (const auto& pt : curve) {
    if (pt.iterations >= 1 && pt.value > 0.0 && std::isfinite(pt.value)) {
      fit.points.push_back(pt);
    } else {
      ++fit.excluded;
      fit.warnings.push_back("excluded checkpoint T=" + std::to_string(pt.iterations) +
                             " with nonpositive or non-finite value");
    }
  }
  Require(fit.points.size() >= 5, ErrorCode::kParameter,
          "rate fit needs at least 5 usable checkpoints, got " +
              std::to_string(fit.points.size()));
  double t_min = std::numeric_limits<double>::infinity();
  double t_max = 0.0;
  for (const auto& pt : fit.points) {
    t_min = std::min(t_min, static_cast<double>(pt.iterations));
    t_max = std::max(t_max, static_cast<double>(pt.iterations));
  }
  Require(std::log10(t_max / t_min) >= 2.0 - 1e-9, ErrorCode::kParameter,
          "rate fit checkpoints must span at least two decades of T");

  const double n = static_cast<double>(fit.points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& pt : fit.points) {
    sx += std::log(static_cast<double>(pt.iterations));
    sy += std::log(pt.value);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& pt : fit.points) {
    const double dx = std::log(static_cast<double>(pt.iterations)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(pt.value) - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& pt : fit.points) {
    const double r = std::log(pt.value) -
                     (fit.intercept + fit.slope * std::log(static_cast<double>(pt.iterations)));
    sse += r * r;
  }
  fit.residual = std::sqrt(sse / n);
  return fit;
}

RateFit FitRate(std::span<const CurveRow> curve, RateMetric metric) {
  std::vector<RatePoint> points;
  points.reserve(curve.size());
  for (const auto& row : curve) {
    points.push_back({row.iterations, metric == RateMetric::kGap ? row.gap : row.residual});
  }
  return FitRate(points);
}

AssumptionReport ProbeAssumptions(const GameDefinition& game,
                                  const AssumptionProbeOptions& options) {
  Require(options.samples >= 1 && options.variance_points >= 1 && options.draws >= 1,
          ErrorCode::kParameter, "probe sample counts must be >= 1");
  for (int b : options.batch_sizes) {
    Require(b >= 1 && b <= game.scenarios(), ErrorCode::kParameter,
            "probe batch size " + std::to_string(b) + " outside [1, m]");
  }
  AssumptionReport report;
  report.seed = options.seed;
  report.samples = options.samples;
  report.variance_points = options.variance_points;
  report.draws = options.draws;

  Rng rng(options.seed);
  report.monotonicity_min = std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.samples; ++s) {
    JointPoint a = SampleFeasiblePoint(game, rng);
    JointPoint b = SampleFeasiblePoint(game, rng);
    b.p = a.p;
    const double value = (FullG1(game, a) - FullG1(game, b)).dot(a.x - b.x);
    report.monotonicity_min = std::min(report.monotonicity_min, value);
  }

  std::vector<JointPoint> points;
  std::vector<OperatorValue> full;
  for (int k = 0; k < options.variance_points; ++k) {
    points.push_back(SampleFeasiblePoint(game, rng));
    full.push_back(FullOperator(game, points.back()));
  }
  BatchSampler sampler(game.scenarios());
  for (int b : options.batch_sizes) {
    VarianceRow row;
    row.batch_size = b;
    double dev1 = 0.0, dev2 = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      double sq1 = 0.0, sq2 = 0.0;
      for (int d = 0; d < options.draws; ++d) {
        const Batch b1 = sampler.Draw(b, rng);
        const Batch b2 = sampler.Draw(b, rng);
        const Vector g1 = BatchG1(game, points[k], b1);
        const Vector g2 = BatchG2(game, points[k], b2);
        dev1 += (g1 - full[k].g1).squaredNorm();
        dev2 += (g2 - full[k].g2).squaredNorm();
        sq1 += g1.squaredNorm();
        sq2 += g2.squaredNorm();
      }
      row.m1_sq = std::max(row.m1_sq, sq1 / options.draws);
      row.m2_sq = std::max(row.m2_sq, sq2 / options.draws);
    }
    const double count = static_cast<double>(points.size()) * options.draws;
    row.nu1_sq = dev1 / count;
    row.nu2_sq = dev2 / count;
    report.nu1_sq = std::max(report.nu1_sq, b * row.nu1_sq);
    report.nu2_sq = std::max(report.nu2_sq, b * row.nu2_sq);
    report.mx_sq = std::max(report.mx_sq, row.m1_sq);
    report.mp_sq = std::max(report.mp_sq, row.m2_sq);
    report.variance.push_back(row);
  }
  return report;
}

}  // namespace drne
