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

#include "drne/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "drne/errors.hpp"

namespace drne {
namespace {

constexpr Eigen::Index kCompensatedThreshold = 10000;

// Neumaier summation state.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void Add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double Value() const { return sum + carry; }
};

}  // namespace

Vector ProjectBox(const Vector& v, const Vector& lower, const Vector& upper) {
  if (v.size() != lower.size() || v.size() != upper.size()) {
    Fail(ErrorCode::kShape, "box projection: vector has " +
                                std::to_string(v.size()) + " entries, bounds have " +
                                std::to_string(lower.size()) + "/" +
                                std::to_string(upper.size()));
  }
  return v.cwiseMax(lower).cwiseMin(upper);
}

Vector ProjectSimplex(const Vector& v) {
  const Eigen::Index m = v.size();
  Require(m >= 1, ErrorCode::kShape, "simplex projection needs dimension >= 1");
  Require(v.allFinite(), ErrorCode::kDomain, "simplex projection of non-finite input");
  if (m == 1) return Vector::Ones(1);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&v](Eigen::Index a, Eigen::Index b) { return v[a] > v[b]; });

  const bool compensated = m >= kCompensatedThreshold;
  CompensatedSum running;
  double plain = 0.0;
  double threshold = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double value = v[order[static_cast<std::size_t>(k)]];
    double prefix;
    if (compensated) {
      running.Add(value);
      prefix = running.Value();
    } else {
      plain += value;
      prefix = plain;
    }
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    // The support condition holds for a prefix of the sorted order, so the
    // last k that passes fixes the threshold.
    if (value - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).cwiseMax(0.0).matrix();
}

JointPoint ProjectJoint(const JointPoint& z, const GameDefinition& game) {
  game.CheckShape(z);
  JointPoint out;
  out.x = ProjectBox(z.x, game.lower(), game.upper());
  out.p.resize(z.p.size());
  const int m = game.scenarios();
  for (int i = 0; i < game.players(); ++i) {
    out.p.segment(game.weight_offset(i), m) =
        ProjectSimplex(z.p.segment(game.weight_offset(i), m));
  }
  return out;
}

}  // namespace drne
