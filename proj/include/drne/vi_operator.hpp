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

#ifndef DRNE_VI_OPERATOR_HPP_
#define DRNE_VI_OPERATOR_HPP_

#include <random>
#include <span>
#include <vector>

#include "drne/game.hpp"
#include "drne/joint_point.hpp"

namespace drne {

using Rng = std::mt19937_64;

// Sorted, 0-based, distinct scenario indices.
using Batch = std::vector<int>;

// One draw per iteration, shared by every player.
struct MiniBatch {
  Batch primal;  // B1
  Batch dual;    // B2
};

// Draws b of m indices uniformly without replacement with a partial
// Fisher-Yates shuffle. The permutation buffer persists between draws, which
// keeps each draw O(b) and leaves the subset distribution uniform.
class BatchSampler {
 public:
  explicit BatchSampler(int m);

  Batch Draw(int b, Rng& rng);
  int population() const { return static_cast<int>(perm_.size()); }

 private:
  std::vector<int> perm_;
};

Batch SampleBatch(int m, int b, Rng& rng);

// Selections of the set-valued operator F = [F1; F2]. g1 follows the x layout
// of the game, g2 the p layout.
struct OperatorValue {
  Vector g1;
  Vector g2;
};

Vector FullG1(const GameDefinition& game, const JointPoint& z);
Vector FullG2(const GameDefinition& game, const JointPoint& z);
OperatorValue FullOperator(const GameDefinition& game, const JointPoint& z);

// (m / b) * sum_{j in B} p_ij * subgradient_ij per player.
Vector BatchG1(const GameDefinition& game, const JointPoint& z,
               std::span<const int> batch);
// -(m / b) * f_ij on B, zero elsewhere, per player.
Vector BatchG2(const GameDefinition& game, const JointPoint& z,
               std::span<const int> batch);
OperatorValue BatchOperator(const GameDefinition& game, const JointPoint& z,
                            const MiniBatch& batch);

}  // namespace drne

#endif  // DRNE_VI_OPERATOR_HPP_
