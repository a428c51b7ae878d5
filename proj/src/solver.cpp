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

#include "drne/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drne/errors.hpp"
#include "drne/projections.hpp"

namespace drne {
namespace {

constexpr double kFeasibilityTol = 1e-9;

bool IsPowerOfTwo(std::int64_t t) { return t > 0 && (t & (t - 1)) == 0; }

}  // namespace

StepSchedule StepSchedule::Constant(double v) {
  Require(v > 0.0 && std::isfinite(v), ErrorCode::kParameter,
          "constant step must be positive");
  StepSchedule s;
  s.kind = Kind::kConstant;
  s.value = v;
  return s;
}

StepSchedule StepSchedule::Power(double scale, double exponent) {
  Require(scale > 0.0 && std::isfinite(scale) && exponent >= 0.0, ErrorCode::kParameter,
          "power schedule needs scale > 0 and exponent >= 0");
  StepSchedule s;
  s.kind = Kind::kPower;
  s.scale = scale;
  s.exponent = exponent;
  return s;
}

double StepValue(const StepSchedule& schedule, std::int64_t t) {
  Require(t >= 0, ErrorCode::kParameter, "step index must be >= 0");
  const double tt = static_cast<double>(t);
  switch (schedule.kind) {
    case StepSchedule::Kind::kTheorem1:
      return 1.0 / (std::sqrt(1.0 + tt) * std::log(tt + 2.0));
    case StepSchedule::Kind::kConstant:
      return schedule.value;
    case StepSchedule::Kind::kPower:
      return schedule.scale / std::pow(1.0 + tt, schedule.exponent);
  }
  return 0.0;
}

LogCadence LogCadence::Every(std::int64_t k) {
  Require(k >= 1, ErrorCode::kParameter, "log interval must be >= 1");
  return {Kind::kEvery, k, {}};
}

LogCadence LogCadence::Explicit(std::vector<std::int64_t> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return {Kind::kExplicit, 1, std::move(points)};
}

bool LogCadence::Logs(std::int64_t t, std::int64_t total) const {
  if (t == 0 || t == total) return true;
  switch (kind) {
    case Kind::kGeometric: return IsPowerOfTwo(t);
    case Kind::kFull: return true;
    case Kind::kEvery: return t % every == 0;
    case Kind::kExplicit: return std::binary_search(points.begin(), points.end(), t);
  }
  return false;
}

JointPoint RunHistory::FinalAverage() const {
  return {weighted_x / lambda_sum, weighted_p / gamma_sum};
}

JointPoint GdaStep(const GameDefinition& game, const JointPoint& z,
                   double lambda, double gamma, const MiniBatch& batch) {
  Require(lambda > 0.0 && gamma > 0.0, ErrorCode::kParameter,
          "step sizes must be positive");
  game.CheckShape(z);
  Require(game.IsFeasible(z, kFeasibilityTol), ErrorCode::kContract,
          "GDA step called at an infeasible point");
  const OperatorValue g = BatchOperator(game, z, batch);
  if (!g.g1.allFinite() || !g.g2.allFinite())
    Fail(ErrorCode::kNumeric, "non-finite operator value");
  JointPoint next;
  next.x = z.x - lambda * g.g1;
  next.p = z.p - gamma * g.g2;
  return ProjectJoint(next, game);
}

RunHistory Run(const GameDefinition& game, const JointPoint& z0,
               const RunOptions& options) {
  Require(options.iterations >= 1, ErrorCode::kParameter,
          "iteration count must be >= 1");
  const int m = game.scenarios();
  Require(options.b1 >= 1 && options.b1 <= m && options.b2 >= 1 && options.b2 <= m,
          ErrorCode::kParameter,
          "batch sizes must lie in [1, " + std::to_string(m) + "]");
  game.CheckShape(z0);

  RunHistory h;
  h.options = options;
  h.weighted_x = Vector::Zero(game.x_dim());
  h.weighted_p = Vector::Zero(game.p_dim());

  Rng rng(options.seed);
  BatchSampler primal_sampler(m);
  BatchSampler dual_sampler(m);
  JointPoint z = game.IsFeasible(z0, kFeasibilityTol) ? z0 : ProjectJoint(z0, game);
  h.max_norm = Norm(z);

  const std::int64_t total = options.iterations;
  for (std::int64_t t = 0; t < total; ++t) {
    const double lambda = StepValue(options.primal_schedule, t);
    const double gamma = StepValue(options.dual_schedule, t);
    MiniBatch batch;
    batch.primal = primal_sampler.Draw(options.b1, rng);
    batch.dual = dual_sampler.Draw(options.b2, rng);

    h.lambda_sum += lambda;
    h.gamma_sum += gamma;
    h.weighted_x += lambda * z.x;
    h.weighted_p += gamma * z.p;

    const bool logged = options.cadence.Logs(t, total);
    if (logged) {
      RunHistory::Entry e;
      e.t = t;
      e.z = z;
      e.lambda = lambda;
      e.gamma = gamma;
      e.batch = batch;
      if (options.record_noise) {
        const OperatorValue full = FullOperator(game, z);
        const OperatorValue sampled = BatchOperator(game, z, batch);
        e.noise = NoiseRecord{sampled.g1 - full.g1, sampled.g2 - full.g2};
      }
      h.entries.push_back(std::move(e));
    }

    JointPoint next;
    try {
      next = GdaStep(game, z, lambda, gamma, batch);
    } catch (const Error& err) {
      throw Error(err.code(), std::string(err.what()) + " at iteration " + std::to_string(t));
    }
    if (!game.IsFeasible(next, kFeasibilityTol)) {
      Fail(ErrorCode::kContract,
           "iterate left the feasible set at iteration " + std::to_string(t + 1));
    }
    h.max_norm = std::max(h.max_norm, Norm(next));

    if (options.cadence.Logs(t + 1, total)) {
      RunHistory::Checkpoint c;
      c.iterations = t + 1;
      c.average = {h.weighted_x / h.lambda_sum, h.weighted_p / h.gamma_sum};
      c.step_norm = Distance(next, z);
      c.lambda = lambda;
      c.gamma = gamma;
      h.checkpoints.push_back(std::move(c));
    }
    z = std::move(next);
  }

  RunHistory::Entry last;
  last.t = total;
  last.z = z;
  h.entries.push_back(std::move(last));
  h.final_iterate = z;
  return h;
}

JointPoint ErgodicAverage(const RunHistory& history, std::int64_t T) {
  Require(T >= 1, ErrorCode::kRange, "ergodic average needs T >= 1");
  if (T > history.iterations()) {
    Fail(ErrorCode::kRange, "T = " + std::to_string(T) + " exceeds the " +
                                std::to_string(history.iterations()) + " logged iterations");
  }
  for (const auto& c : history.checkpoints) {
    if (c.iterations == T) return c.average;
  }
  // Rebuild from logged iterates; requires z^0..z^(T-1) all present.
  const auto& entries = history.entries;
  if (entries.size() < static_cast<std::size_t>(T)) {
    Fail(ErrorCode::kRange, "iterates up to T = " + std::to_string(T) + " were not logged");
  }
  Vector wx = Vector::Zero(entries.front().z.x.size());
  Vector wp = Vector::Zero(entries.front().z.p.size());
  double ls = 0.0;
  double gs = 0.0;
  for (std::int64_t t = 0; t < T; ++t) {
    const auto& e = entries[static_cast<std::size_t>(t)];
    if (e.t != t) {
      Fail(ErrorCode::kRange, "iterate " + std::to_string(t) + " was not logged");
    }
    ls += e.lambda;
    gs += e.gamma;
    wx += e.lambda * e.z.x;
    wp += e.gamma * e.z.p;
  }
  return {wx / ls, wp / gs};
}

}  // namespace drne
