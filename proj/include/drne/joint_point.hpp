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

#ifndef DRNE_JOINT_POINT_HPP_
#define DRNE_JOINT_POINT_HPP_

#include <Eigen/Core>

namespace drne {

using Vector = Eigen::VectorXd;

// The variational-inequality variable z = (x, p). `x` concatenates every
// player's strategy block, `p` concatenates every player's ambiguity weights.
struct JointPoint {
  Vector x;
  Vector p;

  Eigen::Index size() const { return x.size() + p.size(); }
};

// Euclidean norm of (a - b) over both blocks.
double Distance(const JointPoint& a, const JointPoint& b);
double Norm(const JointPoint& z);
double Dot(const JointPoint& a, const JointPoint& b);

}  // namespace drne

#endif  // DRNE_JOINT_POINT_HPP_
