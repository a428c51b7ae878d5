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

// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "drne/config.hpp"
#include "drne/diagnostics.hpp"
#include "drne/experiment.hpp"
#include "drne/projections.hpp"
#include "drne/solver.hpp"
#include "drne/vi_operator.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace drne {
namespace {

using testing::Vec;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Desk-scale instance shared by the rate and agreement criteria.
constexpr int kDeskPlayers = 3;
constexpr int kDeskDecisions = 4;
constexpr int kDeskScenarios = 20;
constexpr double kDeskAlpha = 0.9;
constexpr std::uint64_t kDeskInstanceSeed = 42;
constexpr int kDeskBatch = 5;
constexpr std::int64_t kDeskIterations = 100000;

GameDefinition DeskGame() {
  return BuildCvarGame(kDeskPlayers, kDeskDecisions, kDeskScenarios, kDeskAlpha,
                       kDeskInstanceSeed, 10.0, {0.5, 1.5}, {-1.0, 1.0});
}

struct DeskRun {
  RunHistory history;
  std::vector<CurveRow> curve;
};

// Runs for seeds 1..5, computed once and shared by criteria 3 and 4.
const std::vector<DeskRun>& DeskRuns() {
  static const std::vector<DeskRun> runs = [] {
    const auto game = DeskGame();
    std::vector<std::int64_t> checkpoints;
    for (int k = 0; k <= 6; ++k)
      checkpoints.push_back(std::llround(std::pow(10.0, 2.0 + 0.5 * k)));
    std::vector<DeskRun> out;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      RunOptions ro;
      ro.iterations = kDeskIterations;
      ro.b1 = ro.b2 = kDeskBatch;
      ro.seed = seed;
      ro.cadence = LogCadence::Explicit(checkpoints);
      DeskRun r{Run(game, game.InitialPoint(), ro), {}};
      r.curve = EvaluateGapCurve(game, r.history, ProbeOptions{}, 1.0);
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

Outcome Unbiasedness() {
  const auto game = BuildCvarGame(kDeskPlayers, kDeskDecisions, 6, kDeskAlpha, 7, 10.0);
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  double scale = 0.0;
  for (int point = 0; point < 20; ++point) {
    const auto z = testing::RandomFeasible(game, rng);
    const auto full = FullOperator(game, z);
    for (int b = 1; b <= 3; ++b) {
      const auto subsets = testing::Subsets(6, b);
      using LongVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
      LongVec s1 = LongVec::Zero(game.x_dim());
      LongVec s2 = LongVec::Zero(game.p_dim());
      for (const auto& s : subsets) {
        s1 += BatchG1(game, z, s).cast<long double>();
        s2 += BatchG2(game, z, s).cast<long double>();
      }
      s1 /= static_cast<long double>(subsets.size());
      s2 /= static_cast<long double>(subsets.size());
      worst = std::max({worst, double((s1 - full.g1.cast<long double>()).lpNorm<Eigen::Infinity>()),
                        double((s2 - full.g2.cast<long double>()).lpNorm<Eigen::Infinity>())});
      scale = std::max({scale, full.g1.lpNorm<Eigen::Infinity>(), full.g2.lpNorm<Eigen::Infinity>()});
    }
  }
  return {worst <= 1e-12, Fmt("max inf-norm bias %.3e over 20 points, b in {1,2,3} (tol 1e-12); largest full entry %.3e", worst, scale)};
}

Outcome ProjectionOracle() {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  double box_worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Vec v = testing::RandomVec(rng, 5, -2.0, 2.0);
    worst = std::max(worst, (ProjectSimplex(v) - testing::SimplexByActiveSets(v)).lpNorm<Eigen::Infinity>());
    const Vec lo = Vec::Constant(5, -1.0);
    const Vec hi = Vec::Constant(5, 1.0);
    const Vec clamp = v.cwiseMax(lo).cwiseMin(hi);
    box_worst = std::max(box_worst, (ProjectBox(v, lo, hi) - clamp).lpNorm<Eigen::Infinity>());
  }
  return {worst <= 1e-9 && box_worst == 0.0,
          Fmt("simplex max error %.3e (tol 1e-9), box vs clamp %.1e, 1000 inputs", worst, box_worst)};
}

Outcome RateSlope() {
  const auto& runs = DeskRuns();
  std::vector<RatePoint> median;
  std::string curve;
  for (std::size_t k = 0; k < runs.front().curve.size(); ++k) {
    std::vector<double> gaps;
    for (const auto& r : runs) gaps.push_back(r.curve[k].gap);
    median.push_back({runs.front().curve[k].iterations, Median(gaps)});
    curve += Fmt(" %lld:%.3g", static_cast<long long>(median.back().iterations), median.back().value);
  }
  bool nonincreasing = true;
  for (std::size_t k = 1; k < median.size(); ++k)
    nonincreasing = nonincreasing && median[k].value <= median[k - 1].value;
  const auto fit = FitRate(median);
  return {fit.slope <= -0.35 && nonincreasing,
          Fmt("slope %.4f (need <= -0.35), median non-increasing: %s; median gap", fit.slope,
              nonincreasing ? "yes" : "no") +
              curve};
}

Outcome SeedAgreement() {
  const auto game = DeskGame();
  const auto& runs = DeskRuns();
  const double diameter = game.Diameter();
  double worst_pair = 0.0;
  for (std::size_t a = 0; a < runs.size(); ++a)
    for (std::size_t b = a + 1; b < runs.size(); ++b)
      worst_pair = std::max(worst_pair, Distance(runs[a].history.FinalAverage(),
                                                 runs[b].history.FinalAverage()));
  AssumptionProbeOptions po;
  po.samples = 10;
  po.variance_points = 20;
  po.draws = 200;
  po.batch_sizes = {kDeskBatch};
  po.seed = 5;
  const auto report = ProbeAssumptions(game, po);
  const double lambda_T = StepValue(StepSchedule::Theorem1(), kDeskIterations);
  const double step_bound = 10.0 * lambda_T * (std::sqrt(report.mx_sq) + std::sqrt(report.mp_sq));
  double worst_step = 0.0;
  for (const auto& r : runs) worst_step = std::max(worst_step, r.history.checkpoints.back().step_norm);
  const bool agree = worst_pair <= 1e-2 * diameter;
  const bool settle = worst_step <= step_bound;
  return {agree && settle,
          Fmt("max pairwise distance %.3f vs 1e-2 * diameter = %.3f (%s); final step %.3e vs "
              "bound %.3e (%s)",
              worst_pair, 1e-2 * diameter, agree ? "ok" : "exceeded", worst_step, step_bound,
              settle ? "ok" : "exceeded")};
}

Outcome Analytic() {
  const auto game = testing::SquareGame();
  RunOptions ro;
  ro.iterations = 10000;
  JointPoint z0 = game.InitialPoint();
  z0.x[0] = 1.0;
  const auto avg = Run(game, z0, ro).FinalAverage();
  const double residual = ProjectedResidual(game, avg, 1.0);
  return {std::abs(avg.x[0]) <= 5e-2 && residual <= 1e-1,
          Fmt("from x0 = 1: |x_bar| = %.4e (tol 5e-2), residual %.4e (tol 1e-1)", std::abs(avg.x[0]),
              residual)};
}

Outcome Assumptions() {
  InstanceSpec plain;
  plain.family = CostFamily::kQuadratic;
  plain.players = 5;
  plain.decisions = 10;
  plain.scenarios = 100;
  plain.seed = 1;
  AssumptionProbeOptions mono;
  mono.samples = 1000;
  mono.variance_points = 1;
  mono.draws = 1;
  mono.batch_sizes = {100};
  mono.seed = 11;
  const auto mono_report = ProbeAssumptions(BuildGame(plain), mono);

  const auto cvar = BuildCvarGame(5, 10, 100, 0.95, 1, 10.0);
  AssumptionProbeOptions var;
  var.samples = 1000;
  var.variance_points = 20;
  var.draws = 2000;
  var.batch_sizes = {5, 10, 20, 40};
  var.seed = 12;
  const auto r = ProbeAssumptions(cvar, var);
  double worst_ratio = 0.0;
  for (std::size_t k = 0; k + 1 < r.variance.size(); ++k) {
    worst_ratio = std::max({worst_ratio, r.variance[k + 1].nu1_sq / r.variance[k].nu1_sq,
                            r.variance[k + 1].nu2_sq / r.variance[k].nu2_sq});
  }
  const bool finite = std::isfinite(r.mx_sq) && std::isfinite(r.mp_sq);
  return {mono_report.monotonicity_min >= -1e-10 && worst_ratio <= 0.75 && finite,
          Fmt("monotonicity min %.3e (tol -1e-10); worst variance ratio %.4f (tol 0.75); "
              "Mx^2 %.4e, Mp^2 %.4e, nu1^2 %.4e, nu2^2 %.4e; cvar monotonicity min %.3e (reported only)",
              mono_report.monotonicity_min, worst_ratio, r.mx_sq, r.mp_sq, r.nu1_sq, r.nu2_sq,
              r.monotonicity_min)};
}

Outcome BatchCurves() {
  namespace fs = std::filesystem;
  ExperimentConfig config;  // full-size defaults: n=5, n_i=10, m=100, alpha=0.95
  config.solver.iterations = 20000;
  config.solver.batch_sizes = {5, 20, 100};
  config.solver.seeds = {1, 2, 3, 4, 5};
  const fs::path dir = fs::temp_directory_path() / ("drne_acceptance_" + std::to_string(::getpid()));
  config.output.directory = dir.string();
  const auto bundle = RunExperiment(config, {});
  fs::remove_all(dir);

  std::map<int, std::map<std::int64_t, std::vector<double>>> by_batch;
  for (const auto& row : bundle.gap_curve) by_batch[row.batch_size][row.iterations].push_back(row.gap);
  std::map<int, std::pair<double, double>> ends;
  bool all_decrease = bundle.failures == 0;
  std::string detail;
  for (const auto& [b, curve] : by_batch) {
    auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s / v.size();
    };
    const double first = mean(curve.begin()->second);
    const double last = mean(curve.rbegin()->second);
    ends[b] = {first, last};
    all_decrease = all_decrease && last < first;
    detail += Fmt(" b=%d: %.4g -> %.4g;", b, first, last);
  }
  const bool ordered = ends.count(5) && ends.count(100) && ends[100].second <= ends[5].second;
  return {all_decrease && ordered,
          Fmt("%zu runs, %d failed;", bundle.runs.size(), bundle.failures) + detail +
              (ordered ? " b=100 final <= b=5 final" : " b=100 final > b=5 final")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace drne

int main(int argc, char** argv) {
  using namespace drne;
  const std::vector<Criterion> criteria{
      {1, "estimator unbiasedness by enumeration", 5.0, Unbiasedness},
      {2, "simplex projection oracle equivalence", 5.0, ProjectionOracle},
      {3, "rate slope of the restricted gap", 180.0, RateSlope},
      {4, "seed agreement and step decay", 180.0, SeedAgreement},
      {5, "one-dimensional analytic solution", 1.0, Analytic},
      {6, "assumption probes", 30.0, Assumptions},
      {7, "batch-size curve shape at default size", 600.0, BatchCurves},
  };
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool passed = o.passed && in_time;
    failures += passed ? 0 : 1;
    std::printf("[%s] criterion %d: %s | %s | %.2fs (budget %.0fs%s)\n", passed ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
