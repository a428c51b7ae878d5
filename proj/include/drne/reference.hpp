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

#ifndef DRNE_REFERENCE_HPP_
#define DRNE_REFERENCE_HPP_

#include <vector>

#include "drne/joint_point.hpp"

// Brute-force reference computations. They share no code with the production
// kernels and exist to cross-check them (self-test and test suites).
namespace drne::reference {

// Projection onto the simplex by enumerating every support set S and keeping
// the candidate that satisfies the KKT conditions. Exponential in m; refuses
// m > 20.
Vector SimplexProjectionByEnumeration(const Vector& v);

// All b-element subsets of {0, .., m-1} in lexicographic order.
std::vector<std::vector<int>> AllSubsets(int m, int b);

}  // namespace drne::reference

#endif  // DRNE_REFERENCE_HPP_
