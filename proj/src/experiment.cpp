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

#include "drne/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include "drne/errors.hpp"
#include "drne/projections.hpp"
#include "drne/reference.hpp"
#include "drne/solver.hpp"
#include "drne/vi_operator.hpp"
#include "json.hpp"

namespace drne {
namespace {

namespace fs = std::filesystem;

struct Job {
  int batch_size = 0;
  std::uint64_t seed = 0;
};

struct JobResult {
  RunRecord record;
  std::string history_csv;
  JointPoint final_iterate;
  JointPoint final_average;
};

std::string RunTag(std::uint64_t seed, int b) {
  return std::to_string(seed) + "_" + std::to_string(b);
}

JobResult ExecuteJob(const GameDefinition& game, const ExperimentConfig& config,
                     const Job& job) {
  JobResult out;
  out.record.batch_size = job.batch_size;
  out.record.seed = job.seed;
  try {
    RunOptions ro;
    ro.primal_schedule = config.solver.primal_schedule;
    ro.dual_schedule = config.solver.dual_schedule;
    ro.iterations = config.solver.iterations;
    ro.b1 = job.batch_size;
    ro.b2 = job.batch_size;
    ro.seed = job.seed;
    ro.cadence = config.solver.cadence;
    const RunHistory history = Run(game, game.InitialPoint(), ro);
    ProbeOptions po;
    po.samples = config.diagnostics.probe_samples;
    po.vertex_probes = config.diagnostics.vertex_probes;
    po.seed = config.diagnostics.probe_seed;
    out.record.curve = EvaluateGapCurve(game, history, po, config.diagnostics.residual_step);
    out.history_csv = HistoryCsv(game, history);
    out.final_iterate = history.final_iterate;
    out.final_average = history.FinalAverage();
    out.record.ok = true;
  } catch (const std::exception& e) {
    out.record.ok = false;
    out.record.error = e.what();
  }
  return out;
}

}  // namespace

ResultBundle RunExperiment(const ExperimentConfig& config,
                           const ExperimentOptions& options) {
  const GameDefinition game = BuildGame(config.instance);
  ResultBundle bundle;
  bundle.directory = options.out_dir.value_or(config.output.directory);
  std::error_code ec;
  fs::create_directories(bundle.directory, ec);
  if (ec || !fs::is_directory(bundle.directory))
    Fail(ErrorCode::kIo, "cannot create output directory '" + bundle.directory + "'");

  std::vector<Job> jobs;
  std::vector<int> sizes = config.solver.batch_sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<std::uint64_t> seeds = config.solver.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  for (int b : sizes)
    for (std::uint64_t s : seeds) jobs.push_back({b, s});

  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      results[k] = ExecuteJob(game, config, jobs[k]);
    }
  };
  const int workers = std::clamp(options.workers, 1, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  const auto write = [&](const std::string& name, std::string_view content) {
    WriteTextFile((fs::path(bundle.directory) / name).string(), content);
    bundle.files.push_back(name);
  };
  write("config.json", SerializeConfig(config));
  write("instance.json", SerializeInstance(config.instance));
  if (config.output.emit_csv) {
    write("scenarios.csv", ScenarioCsv(game));
    write("c_vector.csv", CostVectorCsv(game));
  }

  for (auto& r : results) {
    RunRecord& rec = r.record;
    if (!rec.ok) {
      ++bundle.failures;
      if (options.log)
        *options.log << "run b=" << rec.batch_size << " seed=" << rec.seed
                     << " FAILED: " << rec.error << "\n";
      bundle.runs.push_back(rec);
      continue;
    }
    const std::string tag = RunTag(rec.seed, rec.batch_size);
    if (config.output.emit_csv) {
      rec.history_path = "history_" + tag + ".csv";
      write(rec.history_path, r.history_csv);
    }
    rec.checkpoint_path = "checkpoint_" + tag + ".bin";
    WriteCheckpoint((fs::path(bundle.directory) / rec.checkpoint_path).string(),
                    game.players(), r.final_average);
    bundle.files.push_back(rec.checkpoint_path);
    const std::string last = "iterate_" + tag + ".bin";
    WriteCheckpoint((fs::path(bundle.directory) / last).string(), game.players(), r.final_iterate);
    bundle.files.push_back(last);
    for (const auto& row : rec.curve) {
      bundle.gap_curve.push_back(
          {rec.batch_size, rec.seed, row.iterations, row.gap, row.residual});
    }
    if (options.log && !rec.curve.empty()) {
      *options.log << "run b=" << rec.batch_size << " seed=" << rec.seed
                   << " T=" << rec.curve.back().iterations
                   << " gap=" << FormatReal(rec.curve.back().gap)
                   << " residual=" << FormatReal(rec.curve.back().residual) << "\n";
    }
    bundle.runs.push_back(rec);
  }

  if (config.output.emit_csv) {
    write("gap_curve.csv", GapCurveCsv(bundle.gap_curve));
    write("gap_summary.csv", GapSummaryCsv(bundle.gap_curve));
  }
  if (config.output.emit_svg) write("gap_curve.svg", RenderGapSvg(bundle.gap_curve));

  nlohmann::ordered_json manifest;
  manifest["directory"] = ".";
  manifest["failures"] = bundle.failures;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& rec : bundle.runs) {
    nlohmann::ordered_json r{{"batch_size", rec.batch_size}, {"seed", rec.seed},
                             {"status", rec.ok ? "ok" : "failed"}};
    if (rec.ok) {
      if (!rec.history_path.empty()) r["history"] = rec.history_path;
      r["checkpoint"] = rec.checkpoint_path;
      r["final_iterate"] = "iterate_" + RunTag(rec.seed, rec.batch_size) + ".bin";
      if (!rec.curve.empty()) r["final_gap"] = rec.curve.back().gap;
    } else {
      r["error"] = rec.error;
    }
    runs.push_back(r);
  }
  manifest["runs"] = runs;
  bundle.files.push_back("manifest.json");
  manifest["files"] = bundle.files;
  WriteTextFile((fs::path(bundle.directory) / "manifest.json").string(), manifest.dump(2) + "\n");
  return bundle;
}

GapReport EvaluateCheckpoint(const GameDefinition& game, const JointPoint& z,
                             const DiagnosticsConfig& diagnostics) {
  game.CheckShape(z);
  ProbeOptions po;
  po.samples = diagnostics.probe_samples;
  po.vertex_probes = diagnostics.vertex_probes;
  po.seed = diagnostics.probe_seed;
  const std::vector<JointPoint> anchors{z, game.InitialPoint()};
  ProbeSet probes = BuildProbeSet(game, anchors, po);
  probes.kinds[0] = ProbeKind::kSelf;
  probes.kinds[1] = ProbeKind::kInitial;

  GapReport report;
  report.self_probes = probes.Count(ProbeKind::kSelf);
  report.initial_probes = probes.Count(ProbeKind::kInitial);
  report.sampled_probes = probes.Count(ProbeKind::kSampled);
  report.vertex_probes = probes.Count(ProbeKind::kVertex);
  report.gap = RestrictedGap(game, z, probes);
  report.residual_step = diagnostics.residual_step;
  report.residual = ProjectedResidual(game, z, diagnostics.residual_step);
  return report;
}

GapReport GapCommand(const std::string& checkpoint_path,
                     const ExperimentConfig& config) {
  const GameDefinition game = BuildGame(config.instance);
  const Checkpoint cp = ReadCheckpoint(checkpoint_path);
  if (cp.players != game.players() || cp.z.x.size() != game.x_dim() ||
      cp.z.p.size() != game.p_dim()) {
    Fail(ErrorCode::kShape,
         "checkpoint has (players=" + std::to_string(cp.players) +
             ", x=" + std::to_string(cp.z.x.size()) + ", p=" + std::to_string(cp.z.p.size()) +
             ") but the configured instance has (players=" + std::to_string(game.players()) +
             ", x=" + std::to_string(game.x_dim()) + ", p=" + std::to_string(game.p_dim()) + ")");
  }
  if (!game.IsFeasible(cp.z, 1e-9))
    Fail(ErrorCode::kContract, "checkpoint point is not feasible for the configured instance");
  return EvaluateCheckpoint(game, cp.z, config.diagnostics);
}

void PrintGapReport(const GapReport& report, std::ostream& out) {
  out << "gap       " << FormatReal(report.gap.value) << "  ("
      << GapMethodName(report.gap.method) << ", " << report.gap.probe_count << " probes)\n";
  out << "probes    self=" << report.self_probes << " initial=" << report.initial_probes
      << " sampled=" << report.sampled_probes << " vertex=" << report.vertex_probes << "\n";
  out << "argmax    probe #" << report.gap.argmax << " ("
      << ProbeKindName(report.gap.argmax_kind) << ")\n";
  out << "residual  " << FormatReal(report.residual) << "  (step "
      << FormatReal(report.residual_step) << ")\n";
}

bool SelfTestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

SelfTestReport RunSelfTest(const SelfTestOptions& options) {
  SelfTestReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto fmt = [](double v) { return FormatReal(v); };

  {
    Rng rng(20260101);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      Vector v(5);
      for (int j = 0; j < 5; ++j) v[j] = u(rng);
      Vector p = ProjectSimplex(v);
      p.array() += options.simplex_perturbation;
      const Vector q = reference::SimplexProjectionByEnumeration(v);
      worst = std::max(worst, (p - q).lpNorm<Eigen::Infinity>());
    }
    add("simplex projection vs enumeration oracle", worst <= 1e-9,
        "max inf-norm error " + fmt(worst) + " (tol 1e-9, 1000 inputs)");
  }

  {
    const GameDefinition game = BuildCvarGame(2, 2, 6, 0.9, 11, 3.0);
    Rng rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int point = 0; point < 20; ++point) {
      JointPoint z = game.InitialPoint();
      for (Eigen::Index k = 0; k < z.x.size(); ++k)
        z.x[k] = game.lower()[k] + unit(rng) * (game.upper()[k] - game.lower()[k]);
      for (int i = 0; i < game.players(); ++i) {
        Vector w(game.scenarios());
        for (int j = 0; j < game.scenarios(); ++j) w[j] = -std::log(1.0 - unit(rng));
        z.p.segment(game.weight_offset(i), game.scenarios()) = w / w.sum();
      }
      const OperatorValue full = FullOperator(game, z);
      for (int b = 1; b <= 3; ++b) {
        const auto subsets = reference::AllSubsets(game.scenarios(), b);
        Vector m1 = Vector::Zero(game.x_dim());
        Vector m2 = Vector::Zero(game.p_dim());
        for (const auto& s : subsets) {
          m1 += BatchG1(game, z, s);
          m2 += BatchG2(game, z, s);
        }
        m1 /= static_cast<double>(subsets.size());
        m2 /= static_cast<double>(subsets.size());
        worst = std::max({worst, (m1 - full.g1).lpNorm<Eigen::Infinity>(),
                          (m2 - full.g2).lpNorm<Eigen::Infinity>()});
      }
    }
    add("batch estimators unbiased (exhaustive, m=6)", worst <= 1e-12,
        "max inf-norm bias " + fmt(worst) + " (tol 1e-12)");
  }

  {
    const StepSchedule s = StepSchedule::Theorem1();
    const double e0 = std::abs(StepValue(s, 0) - 1.4426950408889634);
    const double e1 = std::abs(StepValue(s, 1) - 0.6436363296498353);
    const double e99 = std::abs(StepValue(s, 99) - 0.021667906533553168);
    const double worst = std::max({e0, e1, e99});
    add("step schedule values", worst <= 1e-12,
        "t=0,1,99 max abs error " + fmt(worst));
  }

  {
    // f(x) = x^2 on [-1, 1] with a single scenario: xi1 = 2, xi2 = 0, c = 0.
    ScenarioSet s;
    s.xi1 = Eigen::MatrixXd::Constant(1, 1, 2.0);
    s.xi2 = Eigen::MatrixXd::Zero(1, 1);
    s.c = Vector::Zero(1);
    const GameDefinition game = GameDefinition::Quadratic(1, s, 1.0);
    RunOptions ro;
    ro.iterations = 10000;
    JointPoint z0 = game.InitialPoint();
    z0.x[0] = 1.0;
    const RunHistory h = Run(game, z0, ro);
    const double avg = h.FinalAverage().x[0];
    add("1-D analytic solution run", std::abs(avg) <= 5e-2,
        "|x_bar| = " + fmt(std::abs(avg)) + " after 10^4 steps from x0 = 1 (tol 5e-2)");
  }

  if (options.report_dir) {
    std::ostringstream text;
    PrintSelfTestReport(report, text);
    std::error_code ec;
    fs::create_directories(*options.report_dir, ec);
    WriteTextFile((fs::path(*options.report_dir) / "selftest_report.txt").string(), text.str());
  }
  return report;
}

void PrintSelfTestReport(const SelfTestReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  -- " << c.detail << "\n";
  }
  out << (report.passed() ? "all checks passed" : "self-test FAILED") << "\n";
}

}  // namespace drne
