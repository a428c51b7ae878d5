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

#include "drne/reference.hpp"

#include <cmath>
#include <limits>

#include "drne/errors.hpp"

namespace drne::reference {

Vector SimplexProjectionByEnumeration(const Vector& v) {
  const int m = static_cast<int>(v.size());
  Require(m >= 1 && m <= 20, ErrorCode::kParameter,
          "enumeration oracle supports 1 <= m <= 20");
  Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    double sum = 0.0;
    int count = 0;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        sum += v[j];
        ++count;
      }
    }
    // Stationarity on S: p_j = v_j - tau; primal feasibility needs p_S >= 0,
    // dual feasibility needs v_j - tau <= 0 off S.
    const double tau = (sum - 1.0) / count;
    bool ok = true;
    Vector p = Vector::Zero(m);
    for (int j = 0; j < m && ok; ++j) {
      if (mask & (1u << j)) {
        p[j] = v[j] - tau;
        ok = p[j] >= -1e-14;
      } else {
        ok = v[j] - tau <= 1e-14;
      }
    }
    if (!ok) continue;
    p = p.cwiseMax(0.0);
    const double dist = (p - v).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = p;
    }
  }
  return best;
}

std::vector<std::vector<int>> AllSubsets(int m, int b) {
  Require(b >= 1 && b <= m, ErrorCode::kParameter, "subset size must lie in [1, m]");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(b));
  for (int k = 0; k < b; ++k) current[static_cast<std::size_t>(k)] = k;
  while (true) {
    out.push_back(current);
    int k = b - 1;
    while (k >= 0 && current[static_cast<std::size_t>(k)] == m - b + k) --k;
    if (k < 0) break;
    ++current[static_cast<std::size_t>(k)];
    for (int l = k + 1; l < b; ++l)
      current[static_cast<std::size_t>(l)] = current[static_cast<std::size_t>(l - 1)] + 1;
  }
  return out;
}

}  // namespace drne::reference
