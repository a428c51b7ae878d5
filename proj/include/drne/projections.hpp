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

#ifndef DRNE_PROJECTIONS_HPP_
#define DRNE_PROJECTIONS_HPP_

#include "drne/game.hpp"
#include "drne/joint_point.hpp"

namespace drne {

// Componentwise clamp of v into [lower, upper].
Vector ProjectBox(const Vector& v, const Vector& lower, const Vector& upper);

// Euclidean projection onto the probability simplex by sorting and
// thresholding. Ties in the sort keep original index order. For m >= 10^4 the
// running prefix sum is compensated.
Vector ProjectSimplex(const Vector& v);

// Applies the box projection to each strategy block and the simplex
// projection to each player's weight block.
JointPoint ProjectJoint(const JointPoint& z, const GameDefinition& game);

}  // namespace drne

#endif  // DRNE_PROJECTIONS_HPP_
