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

#include "drne/vi_operator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "drne/errors.hpp"

namespace drne {
namespace {

Batch CanonicalBatch(const GameDefinition& game, std::span<const int> batch) {
  const int m = game.scenarios();
  Require(!batch.empty(), ErrorCode::kParameter, "mini-batch must not be empty");
  Batch sorted(batch.begin(), batch.end());
  std::sort(sorted.begin(), sorted.end());
  Require(sorted.front() >= 0 && sorted.back() < m, ErrorCode::kParameter,
          "mini-batch index out of range [0, " + std::to_string(m) + ")");
  Require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          ErrorCode::kParameter, "mini-batch indices must be distinct");
  return sorted;
}

Batch AllScenarios(const GameDefinition& game) {
  Batch all(static_cast<std::size_t>(game.scenarios()));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

Vector G1Over(const GameDefinition& game, const JointPoint& z,
              const Batch& batch) {
  const double scale =
      static_cast<double>(game.scenarios()) / static_cast<double>(batch.size());
  const DecisionStats stats = game.Stats(z.x);
  Vector g = Vector::Zero(game.x_dim());
  for (int i = 0; i < game.players(); ++i) {
    auto block = g.segment(game.block_offset(i), game.block_dim());
    for (int j : batch) {
      game.AccumulateSubgradient(z.x, stats, i, j, z.p[game.weight_offset(i) + j], block);
    }
    block *= scale;
  }
  return g;
}

Vector G2Over(const GameDefinition& game, const JointPoint& z,
              const Batch& batch) {
  const double scale =
      static_cast<double>(game.scenarios()) / static_cast<double>(batch.size());
  const DecisionStats stats = game.Stats(z.x);
  Vector g = Vector::Zero(game.p_dim());
  for (int i = 0; i < game.players(); ++i) {
    for (int j : batch) {
      g[game.weight_offset(i) + j] = -scale * game.Cost(z.x, stats, i, j);
    }
  }
  return g;
}

}  // namespace

BatchSampler::BatchSampler(int m) {
  Require(m >= 1, ErrorCode::kParameter, "batch population must be >= 1");
  perm_.resize(static_cast<std::size_t>(m));
  std::iota(perm_.begin(), perm_.end(), 0);
}

Batch BatchSampler::Draw(int b, Rng& rng) {
  const int m = population();
  Require(b >= 1 && b <= m, ErrorCode::kParameter,
          "batch size " + std::to_string(b) + " outside [1, " + std::to_string(m) + "]");
  for (int k = 0; k < b; ++k) {
    std::uniform_int_distribution<int> pick(k, m - 1);
    std::swap(perm_[static_cast<std::size_t>(k)],
              perm_[static_cast<std::size_t>(pick(rng))]);
  }
  Batch out(perm_.begin(), perm_.begin() + b);
  std::sort(out.begin(), out.end());
  return out;
}

Batch SampleBatch(int m, int b, Rng& rng) {
  BatchSampler sampler(m);
  return sampler.Draw(b, rng);
}

Vector FullG1(const GameDefinition& game, const JointPoint& z) {
  game.CheckShape(z);
  return G1Over(game, z, AllScenarios(game));
}

Vector FullG2(const GameDefinition& game, const JointPoint& z) {
  game.CheckShape(z);
  return G2Over(game, z, AllScenarios(game));
}

OperatorValue FullOperator(const GameDefinition& game, const JointPoint& z) {
  return {FullG1(game, z), FullG2(game, z)};
}

Vector BatchG1(const GameDefinition& game, const JointPoint& z,
               std::span<const int> batch) {
  game.CheckShape(z);
  return G1Over(game, z, CanonicalBatch(game, batch));
}

Vector BatchG2(const GameDefinition& game, const JointPoint& z,
               std::span<const int> batch) {
  game.CheckShape(z);
  return G2Over(game, z, CanonicalBatch(game, batch));
}

OperatorValue BatchOperator(const GameDefinition& game, const JointPoint& z,
                            const MiniBatch& batch) {
  return {BatchG1(game, z, batch.primal), BatchG2(game, z, batch.dual)};
}

}  // namespace drne
