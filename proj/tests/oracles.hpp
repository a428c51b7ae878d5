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

// Reference computations used only by the tests. None of these call into the
// library's numeric kernels.
#ifndef DRNE_TESTS_ORACLES_HPP_
#define DRNE_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace drne::testing {

using Vec = Eigen::VectorXd;

// Simplex projection by bisection on the threshold tau in sum_j (v_j - tau)_+ = 1.
inline Vec SimplexByBisection(const Vec& v) {
  double lo = v.minCoeff() - 1.0;
  double hi = v.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s = (v.array() - mid).max(0.0).sum();
    (s > 1.0 ? lo : hi) = mid;
  }
  const double tau = 0.5 * (lo + hi);
  return (v.array() - tau).max(0.0).matrix();
}

// Simplex projection by enumerating support sets S: p_S = v_S - tau with
// tau = (sum v_S - 1) / |S|, accepted when p_S > 0 and v_j <= tau off S. The
// closest feasible candidate wins.
inline Vec SimplexByActiveSets(const Vec& v) {
  const int m = static_cast<int>(v.size());
  Vec best;
  double best_dist = INFINITY;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    double sum = 0.0;
    int k = 0;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) { sum += v[j]; ++k; }
    const double tau = (sum - 1.0) / k;
    Vec p = Vec::Zero(m);
    bool ok = true;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        p[j] = v[j] - tau;
        ok = ok && p[j] >= -1e-15;
      } else {
        ok = ok && v[j] <= tau + 1e-15;
      }
    }
    if (!ok) continue;
    const double d = (p - v).squaredNorm();
    if (d < best_dist) { best_dist = d; best = p; }
  }
  return best;
}

// Empirical CVaR of values h under weights p at level alpha: the mean of the
// upper (1 - alpha) tail, splitting the boundary atom.
inline double CvarBySorting(const std::vector<double>& h, const std::vector<double>& p,
                            double alpha) {
  std::vector<std::size_t> idx(h.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return h[a] > h[b]; });
  double mass = 1.0 - alpha;
  double total = 0.0;
  for (auto j : idx) {
    const double take = std::min(mass, p[j]);
    total += take * h[j];
    mass -= take;
    if (mass <= 0.0) break;
  }
  return total / (1.0 - alpha);
}

// All b-subsets of {0..m-1}.
inline std::vector<std::vector<int>> Subsets(int m, int b) {
  std::vector<std::vector<int>> out;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + b, true);
  do {
    std::vector<int> s;
    for (int j = 0; j < m; ++j)
      if (pick[j]) s.push_back(j);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

inline double CentralDifference(const std::function<double(const Vec&)>& f, Vec x,
                                int k, double h) {
  const double x0 = x[k];
  x[k] = x0 + h;
  const double fp = f(x);
  x[k] = x0 - h;
  const double fm = f(x);
  return (fp - fm) / (2.0 * h);
}

// Ordinary least-squares slope of y against x.
inline double LeastSquaresSlope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

inline double Theorem1Step(int t) {
  return 1.0 / (std::sqrt(1.0 + t) * std::log(t + 2.0));
}

inline Vec RandomVec(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (int k = 0; k < n; ++k) v[k] = u(rng);
  return v;
}

}  // namespace drne::testing

#endif  // DRNE_TESTS_ORACLES_HPP_
