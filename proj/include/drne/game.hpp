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

#ifndef DRNE_GAME_HPP_
#define DRNE_GAME_HPP_

#include <cstdint>

#include <Eigen/Core>

#include "drne/joint_point.hpp"

namespace drne {

// Scenario-sampled Nash game with quadratic scenario risks
//
//   h_i(x, xi_ij) = 0.5 * xi1_ij * |x|^2 + xi2_ij * c^T x,
//
// where x is the full decision vector of all players. In the plain family
// player i's cost is h_i itself. In the CVaR family each strategy block carries
// one extra auxiliary coordinate u_i and the cost is
//
//   f_i(x, u_i; xi_ij) = u_i + (h_i(x, xi_ij) - u_i)_+ / (1 - alpha).
//
// Strategy sets are boxes, ambiguity sets are probability simplices over the
// m scenarios of each player.

enum class CostFamily { kQuadratic, kCvar };

struct UniformRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Parameters of a generated instance. Everything the generator consumes lives
// here so an instance can be rebuilt from its serialized form.
struct InstanceSpec {
  CostFamily family = CostFamily::kCvar;
  int players = 5;
  int decisions = 10;  // n_i, identical for all players
  int scenarios = 100;
  double alpha = 0.95;
  double bounds = 10.0;
  std::uint64_t seed = 0;
  UniformRange xi1{0.5, 1.5};
  UniformRange xi2{-1.0, 1.0};
};

struct ScenarioSet {
  Eigen::MatrixXd xi1;  // players x scenarios
  Eigen::MatrixXd xi2;  // players x scenarios
  Vector c;             // players * decisions
};

// Quantities of x shared by every scenario risk evaluation.
struct DecisionStats {
  double squared_norm = 0.0;
  double c_dot = 0.0;
};

// phi(h, u) = u + (h - u)_+ / (1 - alpha).
double CvarPhi(double risk, double aux, double alpha);

// CVaR-wrapped cost of one scenario; `decisions` is the joint decision vector
// (no auxiliary coordinates).
double CvarCost(const Vector& decisions, double aux, double xi1, double xi2,
                const Vector& c, double alpha);

struct CvarSubgradientValue {
  Vector own;       // part over the player's decision coordinates
  double aux = 0.0; // part for u_i
};

// Selection from the partial subdifferential of CvarCost in (x_i, u_i), using
// the strict indicator 1{h > u}.
CvarSubgradientValue CvarSubgradient(const Vector& decisions, double aux,
                                     double xi1, double xi2, const Vector& c,
                                     double alpha, int player, int block_size);

class GameDefinition {
 public:
  static GameDefinition Quadratic(int decisions, ScenarioSet scenarios,
                                  double bounds);
  static GameDefinition Cvar(int decisions, ScenarioSet scenarios, double alpha,
                             double bounds);

  CostFamily family() const { return family_; }
  int players() const { return players_; }
  int decisions() const { return decisions_; }
  int scenarios() const { return scenarios_; }
  int block_dim() const { return block_dim_; }
  bool has_auxiliary() const { return family_ == CostFamily::kCvar; }
  double alpha() const { return alpha_; }
  double bounds() const { return bounds_; }
  Eigen::Index x_dim() const { return Eigen::Index{players_} * block_dim_; }
  Eigen::Index p_dim() const { return Eigen::Index{players_} * scenarios_; }
  Eigen::Index block_offset(int player) const {
    return Eigen::Index{player} * block_dim_;
  }
  Eigen::Index weight_offset(int player) const {
    return Eigen::Index{player} * scenarios_;
  }
  // Index of u_i inside x (CVaR family only).
  Eigen::Index aux_index(int player) const {
    return block_offset(player) + decisions_;
  }

  const ScenarioSet& scenario_set() const { return scenarios_data_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  DecisionStats Stats(const Vector& x) const;
  // h_i(x, xi_ij).
  double Risk(const DecisionStats& stats, int player, int scenario) const;
  double Cost(const Vector& x, const DecisionStats& stats, int player,
              int scenario) const;
  double Cost(const Vector& x, int player, int scenario) const;

  // block += weight * (selected partial subgradient of f_i in player i's block).
  void AccumulateSubgradient(const Vector& x, const DecisionStats& stats,
                             int player, int scenario, double weight,
                             Eigen::Ref<Vector> block) const;
  Vector Subgradient(const Vector& x, int player, int scenario) const;

  // At an active kink (|h - u| <= tol) accumulates the extreme branch opposite
  // to the default selection and returns true. Returns false and leaves `block` alone
  // away from kinks or for the plain family.
  bool AccumulateAlternateSubgradient(const Vector& x, const DecisionStats& stats,
                                      int player, int scenario, double weight,
                                      Eigen::Ref<Vector> block,
                                      double tol = 1e-9) const;

  // Box centers and uniform weights.
  JointPoint InitialPoint() const;
  void CheckShape(const JointPoint& z) const;
  bool IsFeasible(const JointPoint& z, double tol) const;
  // Euclidean diameter of K x P.
  double Diameter() const;

 private:
  GameDefinition() = default;
  void InitBoxes();

  CostFamily family_ = CostFamily::kQuadratic;
  int players_ = 0;
  int decisions_ = 0;
  int scenarios_ = 0;
  int block_dim_ = 0;
  double alpha_ = 0.0;
  double bounds_ = 0.0;
  ScenarioSet scenarios_data_;
  Vector lower_;
  Vector upper_;
};

ScenarioSet SampleScenarios(const InstanceSpec& spec);

GameDefinition BuildGame(const InstanceSpec& spec);

GameDefinition BuildCvarGame(int players, int decisions, int scenarios,
                             double alpha, std::uint64_t seed, double bounds,
                             UniformRange xi1 = {0.5, 1.5},
                             UniformRange xi2 = {-1.0, 1.0});

}  // namespace drne

#endif  // DRNE_GAME_HPP_
