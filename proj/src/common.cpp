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

#include <cmath>

#include "drne/errors.hpp"
#include "drne/joint_point.hpp"

namespace drne {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParameter: return "parameter error";
    case ErrorCode::kShape: return "shape error";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kNumeric: return "numeric error";
    case ErrorCode::kContract: return "contract violation";
    case ErrorCode::kRange: return "range error";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kIo: return "I/O error";
  }
  return "unknown error";
}

double Distance(const JointPoint& a, const JointPoint& b) {
  return std::sqrt((a.x - b.x).squaredNorm() + (a.p - b.p).squaredNorm());
}

double Norm(const JointPoint& z) {
  return std::sqrt(z.x.squaredNorm() + z.p.squaredNorm());
}

double Dot(const JointPoint& a, const JointPoint& b) {
  return a.x.dot(b.x) + a.p.dot(b.p);
}

}  // namespace drne
