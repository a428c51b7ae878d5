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

#ifndef DRNE_TESTS_FIXTURES_HPP_
#define DRNE_TESTS_FIXTURES_HPP_

#include <random>
#include <vector>

#include "drne/game.hpp"
#include "drne/joint_point.hpp"
#include "oracles.hpp"

namespace drne::testing {

// Uniform x in the boxes, normalized exponential weights.
inline JointPoint RandomFeasible(const GameDefinition& game, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  JointPoint z;
  z.x.resize(game.x_dim());
  for (Eigen::Index k = 0; k < z.x.size(); ++k)
    z.x[k] = game.lower()[k] + unit(rng) * (game.upper()[k] - game.lower()[k]);
  z.p.resize(game.p_dim());
  for (int i = 0; i < game.players(); ++i) {
    Vec w(game.scenarios());
    for (int j = 0; j < game.scenarios(); ++j) w[j] = -std::log(1.0 - unit(rng));
    z.p.segment(game.weight_offset(i), game.scenarios()) = w / w.sum();
  }
  return z;
}

// The joint decision vector with auxiliary coordinates removed.
inline Vec Decisions(const GameDefinition& game, const Vec& x) {
  Vec d(Eigen::Index{game.players()} * game.decisions());
  for (int i = 0; i < game.players(); ++i)
    d.segment(Eigen::Index{i} * game.decisions(), game.decisions()) =
        x.segment(game.block_offset(i), game.decisions());
  return d;
}

// h_i(x, xi_ij) straight from the formula.
inline double DirectRisk(const GameDefinition& game, const Vec& x, int i, int j) {
  const Vec d = Decisions(game, x);
  const auto& s = game.scenario_set();
  return 0.5 * s.xi1(i, j) * d.squaredNorm() + s.xi2(i, j) * s.c.dot(d);
}

inline double DirectCost(const GameDefinition& game, const Vec& x, int i, int j) {
  const double h = DirectRisk(game, x, i, j);
  if (!game.has_auxiliary()) return h;
  const double u = x[game.aux_index(i)];
  return u + std::max(h - u, 0.0) / (1.0 - game.alpha());
}

// One-player game with `decisions` coordinates and explicit scenario rows.
inline GameDefinition SinglePlayerQuadratic(std::vector<double> xi1, std::vector<double> xi2,
                                            Vec c, double bounds) {
  ScenarioSet s;
  const int m = static_cast<int>(xi1.size());
  s.xi1 = Eigen::Map<Eigen::MatrixXd>(xi1.data(), 1, m);
  s.xi2 = Eigen::Map<Eigen::MatrixXd>(xi2.data(), 1, m);
  const int n = static_cast<int>(c.size());
  s.c = std::move(c);
  return GameDefinition::Quadratic(n, std::move(s), bounds);
}

// f(x) = x^2 on [-1, 1] with one scenario.
inline GameDefinition SquareGame() {
  return SinglePlayerQuadratic({2.0}, {0.0}, Vec::Zero(1), 1.0);
}

inline InstanceSpec QuadraticSpec(int players, int decisions, int scenarios,
                                  std::uint64_t seed) {
  InstanceSpec spec;
  spec.family = CostFamily::kQuadratic;
  spec.players = players;
  spec.decisions = decisions;
  spec.scenarios = scenarios;
  spec.seed = seed;
  return spec;
}

}  // namespace drne::testing

#endif  // DRNE_TESTS_FIXTURES_HPP_
