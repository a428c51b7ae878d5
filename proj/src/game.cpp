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

#include "drne/game.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "drne/errors.hpp"

namespace drne {
namespace {

void ValidateScenarioShapes(int decisions, const ScenarioSet& s) {
  Require(decisions >= 1, ErrorCode::kParameter, "decisions must be >= 1");
  Require(s.xi1.rows() >= 1 && s.xi1.cols() >= 1, ErrorCode::kParameter,
          "scenario set needs at least one player and one scenario");
  Require(s.xi2.rows() == s.xi1.rows() && s.xi2.cols() == s.xi1.cols(),
          ErrorCode::kShape, "xi1 and xi2 must have identical shapes");
  Require(s.c.size() == s.xi1.rows() * decisions, ErrorCode::kShape,
          "cost vector c must have players * decisions entries, got " +
              std::to_string(s.c.size()));
  Require(s.xi1.allFinite() && s.xi2.allFinite() && s.c.allFinite(),
          ErrorCode::kDomain, "scenario data must be finite");
}

}  // namespace

double CvarPhi(double risk, double aux, double alpha) {
  return aux + std::max(risk - aux, 0.0) / (1.0 - alpha);
}

double CvarCost(const Vector& decisions, double aux, double xi1, double xi2,
                const Vector& c, double alpha) {
  const double risk = 0.5 * xi1 * decisions.squaredNorm() + xi2 * c.dot(decisions);
  return CvarPhi(risk, aux, alpha);
}

CvarSubgradientValue CvarSubgradient(const Vector& decisions, double aux,
                                     double xi1, double xi2, const Vector& c,
                                     double alpha, int player, int block_size) {
  const double risk = 0.5 * xi1 * decisions.squaredNorm() + xi2 * c.dot(decisions);
  const Eigen::Index offset = Eigen::Index{player} * block_size;
  CvarSubgradientValue g;
  g.own = Vector::Zero(block_size);
  g.aux = 1.0;
  if (risk > aux) {
    const double scale = 1.0 / (1.0 - alpha);
    g.own = scale * (xi1 * decisions.segment(offset, block_size) +
                     xi2 * c.segment(offset, block_size));
    g.aux = 1.0 - scale;
  }
  return g;
}

GameDefinition GameDefinition::Quadratic(int decisions, ScenarioSet scenarios,
                                         double bounds) {
  ValidateScenarioShapes(decisions, scenarios);
  Require(bounds > 0.0 && std::isfinite(bounds), ErrorCode::kParameter,
          "bounds must be positive and finite");
  GameDefinition g;
  g.family_ = CostFamily::kQuadratic;
  g.players_ = static_cast<int>(scenarios.xi1.rows());
  g.scenarios_ = static_cast<int>(scenarios.xi1.cols());
  g.decisions_ = decisions;
  g.block_dim_ = decisions;
  g.bounds_ = bounds;
  g.scenarios_data_ = std::move(scenarios);
  g.InitBoxes();
  return g;
}

GameDefinition GameDefinition::Cvar(int decisions, ScenarioSet scenarios,
                                    double alpha, double bounds) {
  Require(alpha > 0.0 && alpha < 1.0, ErrorCode::kParameter,
          "alpha must lie in (0, 1), got " + std::to_string(alpha));
  GameDefinition g = Quadratic(decisions, std::move(scenarios), bounds);
  g.family_ = CostFamily::kCvar;
  g.alpha_ = alpha;
  g.block_dim_ = decisions + 1;
  g.InitBoxes();
  return g;
}

void GameDefinition::InitBoxes() {
  lower_ = Vector::Constant(x_dim(), -bounds_);
  upper_ = Vector::Constant(x_dim(), bounds_);
  if (!has_auxiliary()) return;
  // |h_i| over the decision box is at most 0.5 xi1 R^2 + |xi2| |c| R with
  // R = bounds * sqrt(N); one unit of slack keeps the u-minimizer interior.
  const double radius =
      bounds_ * std::sqrt(static_cast<double>(players_) * decisions_);
  const double c_norm = scenarios_data_.c.norm();
  for (int i = 0; i < players_; ++i) {
    double bound = 0.0;
    for (int j = 0; j < scenarios_; ++j) {
      bound = std::max(bound, 0.5 * std::abs(scenarios_data_.xi1(i, j)) * radius * radius +
                                  std::abs(scenarios_data_.xi2(i, j)) * c_norm * radius);
    }
    lower_[aux_index(i)] = -(bound + 1.0);
    upper_[aux_index(i)] = bound + 1.0;
  }
}

DecisionStats GameDefinition::Stats(const Vector& x) const {
  DecisionStats s;
  for (int i = 0; i < players_; ++i) {
    const auto own = x.segment(block_offset(i), decisions_);
    s.squared_norm += own.squaredNorm();
    s.c_dot += own.dot(scenarios_data_.c.segment(Eigen::Index{i} * decisions_, decisions_));
  }
  return s;
}

double GameDefinition::Risk(const DecisionStats& stats, int player,
                            int scenario) const {
  return 0.5 * scenarios_data_.xi1(player, scenario) * stats.squared_norm +
         scenarios_data_.xi2(player, scenario) * stats.c_dot;
}

double GameDefinition::Cost(const Vector& x, const DecisionStats& stats,
                            int player, int scenario) const {
  const double risk = Risk(stats, player, scenario);
  if (!has_auxiliary()) return risk;
  return CvarPhi(risk, x[aux_index(player)], alpha_);
}

double GameDefinition::Cost(const Vector& x, int player, int scenario) const {
  return Cost(x, Stats(x), player, scenario);
}

void GameDefinition::AccumulateSubgradient(const Vector& x,
                                           const DecisionStats& stats,
                                           int player, int scenario,
                                           double weight,
                                           Eigen::Ref<Vector> block) const {
  const double xi1 = scenarios_data_.xi1(player, scenario);
  const double xi2 = scenarios_data_.xi2(player, scenario);
  const auto own = x.segment(block_offset(player), decisions_);
  const auto c_own = scenarios_data_.c.segment(Eigen::Index{player} * decisions_, decisions_);
  if (!has_auxiliary()) {
    block.head(decisions_) += weight * (xi1 * own + xi2 * c_own);
    return;
  }
  const double aux = x[aux_index(player)];
  if (Risk(stats, player, scenario) > aux) {
    const double scale = weight / (1.0 - alpha_);
    block.head(decisions_) += scale * (xi1 * own + xi2 * c_own);
    block[decisions_] += weight - scale;
  } else {
    block[decisions_] += weight;
  }
}

bool GameDefinition::AccumulateAlternateSubgradient(
    const Vector& x, const DecisionStats& stats, int player, int scenario,
    double weight, Eigen::Ref<Vector> block, double tol) const {
  if (!has_auxiliary()) return false;
  const double aux = x[aux_index(player)];
  const double risk = Risk(stats, player, scenario);
  if (std::abs(risk - aux) > tol) return false;
  if (risk > aux) {
    // Default selection has the indicator on; the other branch is u-only.
    block[decisions_] += weight;
    return true;
  }
  const double xi1 = scenarios_data_.xi1(player, scenario);
  const double xi2 = scenarios_data_.xi2(player, scenario);
  const auto own = x.segment(block_offset(player), decisions_);
  const auto c_own = scenarios_data_.c.segment(Eigen::Index{player} * decisions_, decisions_);
  const double scale = weight / (1.0 - alpha_);
  block.head(decisions_) += scale * (xi1 * own + xi2 * c_own);
  block[decisions_] += weight - scale;
  return true;
}

Vector GameDefinition::Subgradient(const Vector& x, int player,
                                   int scenario) const {
  Vector block = Vector::Zero(block_dim_);
  AccumulateSubgradient(x, Stats(x), player, scenario, 1.0, block);
  return block;
}

JointPoint GameDefinition::InitialPoint() const {
  JointPoint z;
  z.x = 0.5 * (lower_ + upper_);
  z.p = Vector::Constant(p_dim(), 1.0 / scenarios_);
  return z;
}

void GameDefinition::CheckShape(const JointPoint& z) const {
  if (z.x.size() != x_dim() || z.p.size() != p_dim()) {
    Fail(ErrorCode::kShape,
         "joint point has dimensions (x=" + std::to_string(z.x.size()) +
             ", p=" + std::to_string(z.p.size()) + "), game expects (x=" +
             std::to_string(x_dim()) + ", p=" + std::to_string(p_dim()) + ")");
  }
}

bool GameDefinition::IsFeasible(const JointPoint& z, double tol) const {
  if (z.x.size() != x_dim() || z.p.size() != p_dim()) return false;
  if (!z.x.allFinite() || !z.p.allFinite()) return false;
  if (((z.x - lower_).array() < -tol).any()) return false;
  if (((upper_ - z.x).array() < -tol).any()) return false;
  for (int i = 0; i < players_; ++i) {
    const auto w = z.p.segment(weight_offset(i), scenarios_);
    if ((w.array() < -tol).any()) return false;
    if (std::abs(w.sum() - 1.0) > tol) return false;
  }
  return true;
}

double GameDefinition::Diameter() const {
  // Each simplex has diameter sqrt(2) (for m >= 2).
  const double box = (upper_ - lower_).squaredNorm();
  const double simplex = scenarios_ >= 2 ? 2.0 * players_ : 0.0;
  return std::sqrt(box + simplex);
}

ScenarioSet SampleScenarios(const InstanceSpec& spec) {
  Require(spec.players >= 1 && spec.decisions >= 1 && spec.scenarios >= 1,
          ErrorCode::kParameter, "players, decisions and scenarios must be >= 1");
  Require(spec.xi1.lo > 0.0 && spec.xi1.lo <= spec.xi1.hi, ErrorCode::kParameter,
          "xi1 range must satisfy 0 < lo <= hi");
  Require(spec.xi2.lo <= spec.xi2.hi, ErrorCode::kParameter,
          "xi2 range must satisfy lo <= hi");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u1(spec.xi1.lo, spec.xi1.hi);
  std::uniform_real_distribution<double> u2(spec.xi2.lo, spec.xi2.hi);
  std::normal_distribution<double> normal(0.0, 1.0);
  ScenarioSet s;
  s.xi1.resize(spec.players, spec.scenarios);
  s.xi2.resize(spec.players, spec.scenarios);
  s.c.resize(Eigen::Index{spec.players} * spec.decisions);
  for (int i = 0; i < spec.players; ++i)
    for (int j = 0; j < spec.scenarios; ++j) s.xi1(i, j) = u1(rng);
  for (int i = 0; i < spec.players; ++i)
    for (int j = 0; j < spec.scenarios; ++j) s.xi2(i, j) = u2(rng);
  for (Eigen::Index k = 0; k < s.c.size(); ++k) s.c[k] = normal(rng);
  return s;
}

GameDefinition BuildGame(const InstanceSpec& spec) {
  if (spec.family == CostFamily::kCvar) {
    Require(spec.alpha > 0.0 && spec.alpha < 1.0, ErrorCode::kParameter,
            "alpha must lie in (0, 1), got " + std::to_string(spec.alpha));
  }
  Require(spec.bounds > 0.0 && std::isfinite(spec.bounds), ErrorCode::kParameter,
          "bounds must be positive and finite");
  ScenarioSet s = SampleScenarios(spec);
  if (spec.family == CostFamily::kCvar)
    return GameDefinition::Cvar(spec.decisions, std::move(s), spec.alpha, spec.bounds);
  return GameDefinition::Quadratic(spec.decisions, std::move(s), spec.bounds);
}

GameDefinition BuildCvarGame(int players, int decisions, int scenarios,
                             double alpha, std::uint64_t seed, double bounds,
                             UniformRange xi1, UniformRange xi2) {
  InstanceSpec spec;
  spec.family = CostFamily::kCvar;
  spec.players = players;
  spec.decisions = decisions;
  spec.scenarios = scenarios;
  spec.alpha = alpha;
  spec.seed = seed;
  spec.bounds = bounds;
  spec.xi1 = xi1;
  spec.xi2 = xi2;
  return BuildGame(spec);
}

}  // namespace drne
