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
#include <random>

#include "doctest.h"
#include "drne/diagnostics.hpp"
#include "drne/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace drne {
namespace {

using testing::Vec;

ProbeSet Single(const JointPoint& y) {
  ProbeSet s;
  s.Add(y, ProbeKind::kSampled);
  return s;
}

// Gap contribution of probe y with every combination of kink branches, the
// operator computed straight from the scenario formulas.
double BruteForceKinkSup(const GameDefinition& game, const JointPoint& z, const JointPoint& y,
                         double tol) {
  const auto& s = game.scenario_set();
  const double scale = 1.0 / (1.0 - game.alpha());
  const Vec d = testing::Decisions(game, y.x);
  std::vector<std::pair<int, int>> kinks;
  for (int i = 0; i < game.players(); ++i)
    for (int j = 0; j < game.scenarios(); ++j)
      if (std::abs(testing::DirectRisk(game, y.x, i, j) - y.x[game.aux_index(i)]) <= tol)
        kinks.emplace_back(i, j);
  Vec g2(game.p_dim());
  for (int i = 0; i < game.players(); ++i)
    for (int j = 0; j < game.scenarios(); ++j)
      g2[game.weight_offset(i) + j] = -testing::DirectCost(game, y.x, i, j);
  double best = -INFINITY;
  for (unsigned mask = 0; mask < (1u << kinks.size()); ++mask) {
    Vec g1 = Vec::Zero(game.x_dim());
    for (int i = 0; i < game.players(); ++i) {
      for (int j = 0; j < game.scenarios(); ++j) {
        bool on = testing::DirectRisk(game, y.x, i, j) > y.x[game.aux_index(i)];
        for (std::size_t k = 0; k < kinks.size(); ++k)
          if (kinks[k] == std::pair{i, j}) on = (mask >> k) & 1u;
        const double w = y.p[game.weight_offset(i) + j];
        const auto off = game.block_offset(i);
        if (on) {
          for (int k = 0; k < game.decisions(); ++k)
            g1[off + k] += w * scale *
                           (s.xi1(i, j) * d[i * game.decisions() + k] +
                            s.xi2(i, j) * s.c[i * game.decisions() + k]);
          g1[game.aux_index(i)] += w * (1.0 - scale);
        } else {
          g1[game.aux_index(i)] += w;
        }
      }
    }
    best = std::max(best, g1.dot(z.x - y.x) + g2.dot(z.p - y.p));
  }
  return best;
}

TEST_SUITE("diagnostics") {

TEST_CASE("gap on the one-dimensional quadratic") {
  const auto game = testing::SquareGame();
  const ProbeSet grid = GridProbes(game, 101);
  const JointPoint solution = game.InitialPoint();
  CHECK(std::abs(RestrictedGap(game, solution, grid).value) <= 1e-15);

  JointPoint one = solution;
  one.x[0] = 1.0;
  JointPoint half = solution;
  half.x[0] = 0.5;
  // <2y, 1 - y> at y = 1/2.
  CHECK(RestrictedGap(game, one, Single(half)).value == doctest::Approx(0.5).epsilon(1e-15));
  const auto est = RestrictedGap(game, one, grid);
  CHECK(est.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(est.probe.x[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(est.method == GapMethod::kGrid);
  CHECK(est.probe_count == 101);
}

TEST_CASE("self probe contributes zero") {
  const auto game = BuildCvarGame(2, 2, 5, 0.9, 3, 2.0);
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const auto z = testing::RandomFeasible(game, rng);
    CHECK(RestrictedGap(game, z, Single(z)).value == 0.0);
    ProbeSet probes = Single(z);
    for (int k = 0; k < 5; ++k) probes.Add(testing::RandomFeasible(game, rng), ProbeKind::kSampled);
    CHECK(RestrictedGap(game, z, probes).value >= 0.0);
  }
}

TEST_CASE("empty probe set") {
  const auto game = testing::SquareGame();
  try {
    RestrictedGap(game, game.InitialPoint(), ProbeSet{});
    FAIL("expected a parameter error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParameter);
  }
}

TEST_CASE("more probes never lower the gap") {
  const auto game = BuildCvarGame(2, 2, 6, 0.9, 4, 3.0);
  std::mt19937_64 rng(2);
  const auto z = testing::RandomFeasible(game, rng);
  ProbeSet probes;
  double prev = -INFINITY;
  for (int k = 0; k < 40; ++k) {
    probes.Add(testing::RandomFeasible(game, rng), ProbeKind::kSampled);
    const double g = RestrictedGap(game, z, probes).value;
    CHECK(g >= prev);
    prev = g;
  }
}

TEST_CASE("kink branches are searched exhaustively") {
  const auto game = BuildCvarGame(2, 2, 4, 0.8, 5, 2.0);
  std::mt19937_64 rng(3);
  int strictly_better = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const auto z = testing::RandomFeasible(game, rng);
    auto y = testing::RandomFeasible(game, rng);
    // Pin u_i to one scenario risk so a kink is active for every player.
    for (int i = 0; i < 2; ++i) y.x[game.aux_index(i)] = testing::DirectRisk(game, y.x, i, rep % 4);
    const double expect = BruteForceKinkSup(game, z, y, 1e-9);
    const double got = RestrictedGap(game, z, Single(y)).value;
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));
    const auto g = FullOperator(game, y);
    const double default_only = g.g1.dot(z.x - y.x) + g.g2.dot(z.p - y.p);
    CHECK(got >= default_only - 1e-12);
    if (got > default_only + 1e-9) ++strictly_better;
  }
  CHECK(strictly_better > 0);
}

TEST_CASE("probe set assembly") {
  const auto game = BuildCvarGame(2, 3, 5, 0.9, 6, 2.0);
  const std::vector<JointPoint> anchors{game.InitialPoint()};
  ProbeOptions po;
  po.samples = 30;
  po.vertex_probes = 7;
  po.seed = 4;
  const auto probes = BuildProbeSet(game, anchors, po);
  CHECK(probes.size() == 38);
  CHECK(probes.Count(ProbeKind::kHistory) == 1);
  CHECK(probes.Count(ProbeKind::kSampled) == 30);
  CHECK(probes.Count(ProbeKind::kVertex) == 7);
  CHECK(probes.method == GapMethod::kHistoryAugmented);
  for (const auto& y : probes.points) CHECK(game.IsFeasible(y, 1e-12));
  const auto again = BuildProbeSet(game, anchors, po);
  CHECK(again.points.back().x == probes.points.back().x);
  CHECK(BuildProbeSet(game, {}, po).method == GapMethod::kSampled);
  CHECK_THROWS_AS(GridProbes(BuildCvarGame(5, 10, 4, 0.9, 1, 1.0), 3), Error);
}

TEST_CASE("projected residual") {
  const auto game = testing::SquareGame();
  CHECK(ProjectedResidual(game, game.InitialPoint(), 1.0) <= 1e-10);

  // x = 1 in [-10, 10], g1 = 2: the step stays inside the box. The weight
  // block is a singleton and contributes nothing.
  const auto wide = testing::SinglePlayerQuadratic({2.0}, {0.0}, Vec::Zero(1), 10.0);
  JointPoint z{Vec::Constant(1, 1.0), Vec::Constant(1, 1.0)};
  CHECK(ProjectedResidual(wide, z, 0.1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(ProjectedResidual(wide, z, 0.0), Error);
}

TEST_CASE("residual falls along a full-batch run") {
  const auto game = testing::SinglePlayerQuadratic({1.0, 2.0}, {0.5, -0.3}, Vec::Constant(3, 1.0), 5.0);
  RunOptions ro;
  ro.iterations = 2000;
  ro.b1 = ro.b2 = 2;
  ro.cadence = LogCadence::Every(500);
  const auto h = Run(game, game.InitialPoint(), ro);
  double prev = INFINITY;
  for (const auto& e : h.entries) {
    if (e.t == 0) continue;
    const double r = ProjectedResidual(game, e.z, 1.0);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("rate fits") {
  std::vector<RatePoint> power;
  std::vector<RatePoint> logged;
  std::vector<RatePoint> flat;
  std::vector<double> lx;
  std::vector<double> ly;
  for (int k = 0; k <= 6; ++k) {
    const double T = std::pow(10.0, 2.0 + 0.5 * k);
    const auto Ti = static_cast<std::int64_t>(std::llround(T));
    power.push_back({Ti, 1.0 / std::sqrt(double(Ti))});
    logged.push_back({Ti, std::log(double(Ti)) / std::sqrt(double(Ti))});
    flat.push_back({Ti, 3.0});
    lx.push_back(std::log(double(Ti)));
    ly.push_back(std::log(std::log(double(Ti)) / std::sqrt(double(Ti))));
  }
  CHECK(FitRate(power).slope == doctest::Approx(-0.5).epsilon(1e-9));
  const double expect = testing::LeastSquaresSlope(lx, ly);
  CHECK(expect > -0.5);
  CHECK(expect < -0.35);
  CHECK(FitRate(logged).slope == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::abs(FitRate(flat).slope) <= 1e-12);

  auto with_zero = power;
  with_zero.push_back({1000000, 0.0});
  const auto fit = FitRate(with_zero);
  CHECK(fit.excluded == 1);
  CHECK(fit.warnings.size() == 1);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-9));

  CHECK_THROWS_AS(FitRate(std::span(power).first(4)), Error);
  std::vector<RatePoint> narrow{{100, 1}, {200, 0.9}, {400, 0.8}, {800, 0.7}, {1600, 0.6}};
  CHECK_THROWS_AS(FitRate(narrow), Error);

  std::vector<CurveRow> rows;
  for (const auto& p : power) rows.push_back({p.iterations, p.value, 2.0 * p.value});
  CHECK(FitRate(rows, RateMetric::kResidual).slope == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("gap curve over checkpoints") {
  const auto game = BuildCvarGame(2, 2, 10, 0.9, 7, 3.0);
  RunOptions ro;
  ro.iterations = 512;
  ro.b1 = ro.b2 = 3;
  const auto h = Run(game, game.InitialPoint(), ro);
  ProbeOptions po;
  po.samples = 50;
  po.vertex_probes = 10;
  const auto rows = EvaluateGapCurve(game, h, po, 1.0);
  REQUIRE(rows.size() == h.checkpoints.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].iterations == h.checkpoints[k].iterations);
    CHECK(rows[k].gap >= 0.0);
    CHECK(rows[k].residual >= 0.0);
  }
}

TEST_CASE("assumption probes") {
  SUBCASE("plain quadratic game is monotone") {
    const auto game = BuildGame(testing::QuadraticSpec(3, 4, 20, 2));
    AssumptionProbeOptions o;
    o.samples = 1000;
    o.variance_points = 3;
    o.draws = 50;
    o.batch_sizes = {5, 20};
    o.seed = 9;
    const auto r = ProbeAssumptions(game, o);
    CHECK(r.monotonicity_min >= -1e-10);
    CHECK(r.seed == 9);
    CHECK(r.samples == 1000);
    REQUIRE(r.variance.size() == 2);
    CHECK(r.variance[1].batch_size == 20);
    CHECK(r.variance[1].nu1_sq == 0.0);
    CHECK(r.variance[1].nu2_sq == 0.0);
    CHECK(std::isfinite(r.mx_sq));
    CHECK(std::isfinite(r.mp_sq));
    CHECK(r.mx_sq > 0.0);
  }
  SUBCASE("doubling the batch cuts the variance") {
    const auto game = BuildCvarGame(3, 4, 100, 0.9, 3, 10.0);
    AssumptionProbeOptions o;
    o.samples = 10;
    o.variance_points = 10;
    o.draws = 400;
    o.batch_sizes = {5, 10, 20, 40};
    const auto r = ProbeAssumptions(game, o);
    for (std::size_t k = 0; k + 1 < r.variance.size(); ++k) {
      CHECK(r.variance[k + 1].nu1_sq <= 0.75 * r.variance[k].nu1_sq);
      CHECK(r.variance[k + 1].nu2_sq <= 0.75 * r.variance[k].nu2_sq);
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace drne
