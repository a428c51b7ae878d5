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

#include "drne/drne.h"

#include <iostream>
#include <memory>
#include <new>
#include <string>

#include "drne/config.hpp"
#include "drne/diagnostics.hpp"
#include "drne/errors.hpp"
#include "drne/experiment.hpp"
#include "drne/game.hpp"
#include "drne/projections.hpp"
#include "drne/solver.hpp"
#include "drne/vi_operator.hpp"

struct drne_game {
  drne::GameDefinition game;
};

struct drne_run {
  drne::RunHistory history;
};

namespace {

thread_local std::string g_last_error;

drne_status ToStatus(drne::ErrorCode code) {
  switch (code) {
    case drne::ErrorCode::kParameter: return DRNE_ERR_PARAMETER;
    case drne::ErrorCode::kShape: return DRNE_ERR_SHAPE;
    case drne::ErrorCode::kDomain: return DRNE_ERR_DOMAIN;
    case drne::ErrorCode::kNumeric: return DRNE_ERR_NUMERIC;
    case drne::ErrorCode::kContract: return DRNE_ERR_CONTRACT;
    case drne::ErrorCode::kRange: return DRNE_ERR_RANGE;
    case drne::ErrorCode::kConfig: return DRNE_ERR_CONFIG;
    case drne::ErrorCode::kIo: return DRNE_ERR_IO;
  }
  return DRNE_ERR_INTERNAL;
}

drne_status SetError(drne_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
drne_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const drne::Error& e) {
    return SetError(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(DRNE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(DRNE_ERR_INTERNAL, e.what());
  }
}

#define DRNE_NOT_NULL(ptr) \
  if ((ptr) == nullptr) return SetError(DRNE_ERR_NULL, #ptr " is null")

drne::JointPoint Wrap(const drne::GameDefinition& game, const double* x, const double* p) {
  drne::JointPoint z;
  z.x = Eigen::Map<const drne::Vector>(x, game.x_dim());
  z.p = Eigen::Map<const drne::Vector>(p, game.p_dim());
  return z;
}

void Unwrap(const drne::JointPoint& z, double* x, double* p) {
  Eigen::Map<drne::Vector>(x, z.x.size()) = z.x;
  Eigen::Map<drne::Vector>(p, z.p.size()) = z.p;
}

drne::StepSchedule Schedule(int kind, double value, double scale, double exponent) {
  switch (kind) {
    case 0: return drne::StepSchedule::Theorem1();
    case 1: return drne::StepSchedule::Constant(value);
    case 2: return drne::StepSchedule::Power(scale, exponent);
  }
  drne::Fail(drne::ErrorCode::kParameter, "unknown schedule kind " + std::to_string(kind));
}

drne_cmd_options Resolve(const drne_cmd_options* options) {
  drne_cmd_options o;
  drne_cmd_options_init(&o);
  return options ? *options : o;
}

}  // namespace

extern "C" {

const char* drne_version(void) { return "0.1.0"; }

const char* drne_status_string(drne_status status) {
  switch (status) {
    case DRNE_OK: return "ok";
    case DRNE_ERR_PARAMETER: return "parameter error";
    case DRNE_ERR_SHAPE: return "shape error";
    case DRNE_ERR_DOMAIN: return "domain error";
    case DRNE_ERR_NUMERIC: return "numeric error";
    case DRNE_ERR_CONTRACT: return "contract violation";
    case DRNE_ERR_RANGE: return "range error";
    case DRNE_ERR_CONFIG: return "config error";
    case DRNE_ERR_IO: return "I/O error";
    case DRNE_ERR_NULL: return "null argument";
    case DRNE_ERR_INTERNAL: return "internal error";
    case DRNE_ERR_CHECK_FAILED: return "check failed";
  }
  return "unknown status";
}

const char* drne_last_error(void) { return g_last_error.c_str(); }

drne_status drne_game_create_cvar(int players, int decisions, int scenarios, double alpha,
                                  uint64_t seed, double bounds, drne_game** out) {
  DRNE_NOT_NULL(out);
  *out = nullptr;
  return Guard([&] {
    auto g = drne::BuildCvarGame(players, decisions, scenarios, alpha, seed, bounds);
    *out = new drne_game{std::move(g)};
    return DRNE_OK;
  });
}

drne_status drne_game_create_from_config(const char* config_path, drne_game** out) {
  DRNE_NOT_NULL(config_path);
  DRNE_NOT_NULL(out);
  *out = nullptr;
  return Guard([&] {
    const auto config = drne::LoadConfig(config_path);
    *out = new drne_game{drne::BuildGame(config.instance)};
    return DRNE_OK;
  });
}

void drne_game_destroy(drne_game* game) { delete game; }

drne_status drne_game_dimensions(const drne_game* game, int* players, size_t* x_dim,
                                 size_t* p_dim) {
  DRNE_NOT_NULL(game);
  if (players) *players = game->game.players();
  if (x_dim) *x_dim = static_cast<size_t>(game->game.x_dim());
  if (p_dim) *p_dim = static_cast<size_t>(game->game.p_dim());
  return DRNE_OK;
}

drne_status drne_game_initial_point(const drne_game* game, double* x, double* p) {
  DRNE_NOT_NULL(game);
  DRNE_NOT_NULL(x);
  DRNE_NOT_NULL(p);
  return Guard([&] {
    Unwrap(game->game.InitialPoint(), x, p);
    return DRNE_OK;
  });
}

drne_status drne_operator_full(const drne_game* game, const double* x, const double* p,
                               double* g1, double* g2) {
  DRNE_NOT_NULL(game);
  DRNE_NOT_NULL(x);
  DRNE_NOT_NULL(p);
  DRNE_NOT_NULL(g1);
  DRNE_NOT_NULL(g2);
  return Guard([&] {
    const auto v = drne::FullOperator(game->game, Wrap(game->game, x, p));
    Eigen::Map<drne::Vector>(g1, v.g1.size()) = v.g1;
    Eigen::Map<drne::Vector>(g2, v.g2.size()) = v.g2;
    return DRNE_OK;
  });
}

drne_status drne_project_simplex(const double* v, size_t m, double* out) {
  DRNE_NOT_NULL(v);
  DRNE_NOT_NULL(out);
  return Guard([&] {
    const drne::Vector in = Eigen::Map<const drne::Vector>(v, static_cast<Eigen::Index>(m));
    Eigen::Map<drne::Vector>(out, static_cast<Eigen::Index>(m)) = drne::ProjectSimplex(in);
    return DRNE_OK;
  });
}

void drne_run_options_init(drne_run_options* options) {
  if (options == nullptr) return;
  *options = drne_run_options{};
  options->iterations = 1000;
  options->b1 = 1;
  options->b2 = 1;
  options->seed = 0;
  options->primal_kind = 0;
  options->primal_scale = 1.0;
  options->primal_exponent = 0.5;
  options->dual_kind = 0;
  options->dual_scale = 1.0;
  options->dual_exponent = 0.5;
}

drne_status drne_solve(const drne_game* game, const double* x0, const double* p0,
                       const drne_run_options* options, drne_run** out) {
  DRNE_NOT_NULL(game);
  DRNE_NOT_NULL(options);
  DRNE_NOT_NULL(out);
  *out = nullptr;
  return Guard([&] {
    if ((x0 == nullptr) != (p0 == nullptr))
      return SetError(DRNE_ERR_NULL, "x0 and p0 must both be given or both be null");
    const drne::JointPoint z0 =
        x0 ? Wrap(game->game, x0, p0) : game->game.InitialPoint();
    drne::RunOptions ro;
    ro.iterations = options->iterations;
    ro.b1 = options->b1;
    ro.b2 = options->b2;
    ro.seed = options->seed;
    ro.primal_schedule = Schedule(options->primal_kind, options->primal_value,
                                  options->primal_scale, options->primal_exponent);
    ro.dual_schedule = Schedule(options->dual_kind, options->dual_value,
                                options->dual_scale, options->dual_exponent);
    auto run = std::make_unique<drne_run>();
    run->history = drne::Run(game->game, z0, ro);
    *out = run.release();
    return DRNE_OK;
  });
}

void drne_run_destroy(drne_run* run) { delete run; }

drne_status drne_run_final_iterate(const drne_run* run, double* x, double* p) {
  DRNE_NOT_NULL(run);
  DRNE_NOT_NULL(x);
  DRNE_NOT_NULL(p);
  Unwrap(run->history.final_iterate, x, p);
  return DRNE_OK;
}

drne_status drne_run_ergodic_average(const drne_run* run, double* x, double* p) {
  DRNE_NOT_NULL(run);
  DRNE_NOT_NULL(x);
  DRNE_NOT_NULL(p);
  return Guard([&] {
    Unwrap(run->history.FinalAverage(), x, p);
    return DRNE_OK;
  });
}

drne_status drne_gap(const drne_game* game, const double* x, const double* p, int samples,
                     int vertex_probes, uint64_t probe_seed, double* gap) {
  DRNE_NOT_NULL(game);
  DRNE_NOT_NULL(x);
  DRNE_NOT_NULL(p);
  DRNE_NOT_NULL(gap);
  return Guard([&] {
    if (samples < 0 || vertex_probes < 0)
      return SetError(DRNE_ERR_PARAMETER, "probe counts must be nonnegative");
    drne::DiagnosticsConfig d;
    d.probe_samples = samples;
    d.vertex_probes = vertex_probes;
    d.probe_seed = probe_seed;
    *gap = drne::EvaluateCheckpoint(game->game, Wrap(game->game, x, p), d).gap.value;
    return DRNE_OK;
  });
}

void drne_cmd_options_init(drne_cmd_options* options) {
  if (options == nullptr) return;
  options->out_dir = nullptr;
  options->workers = 1;
  options->quiet = 0;
  options->selftest_simplex_perturbation = 0.0;
}

drne_status drne_cmd_run(const char* config_path, const drne_cmd_options* options) {
  DRNE_NOT_NULL(config_path);
  const drne_cmd_options o = Resolve(options);
  return Guard([&] {
    if (o.workers < 1) return SetError(DRNE_ERR_PARAMETER, "workers must be at least 1");
    const auto config = drne::LoadConfig(config_path);
    drne::ExperimentOptions eo;
    eo.workers = o.workers;
    if (o.out_dir) eo.out_dir = std::string(o.out_dir);
    eo.log = o.quiet ? nullptr : &std::cout;
    const auto bundle = drne::RunExperiment(config, eo);
    if (!o.quiet) {
      std::cout << "wrote " << bundle.files.size() << " files to " << bundle.directory << "\n";
    }
    if (bundle.failures > 0) {
      return SetError(DRNE_ERR_CHECK_FAILED,
                      std::to_string(bundle.failures) + " of " +
                          std::to_string(bundle.runs.size()) +
                          " runs failed; see manifest.json");
    }
    return DRNE_OK;
  });
}

drne_status drne_cmd_selftest(const drne_cmd_options* options) {
  const drne_cmd_options o = Resolve(options);
  return Guard([&] {
    drne::SelfTestOptions so;
    so.simplex_perturbation = o.selftest_simplex_perturbation;
    if (o.out_dir) so.report_dir = std::string(o.out_dir);
    const auto report = drne::RunSelfTest(so);
    if (!o.quiet) drne::PrintSelfTestReport(report, std::cout);
    if (!report.passed()) return SetError(DRNE_ERR_CHECK_FAILED, "self-test failed");
    return DRNE_OK;
  });
}

drne_status drne_cmd_gap(const char* checkpoint_path, const char* config_path,
                         const drne_cmd_options* options) {
  DRNE_NOT_NULL(checkpoint_path);
  DRNE_NOT_NULL(config_path);
  (void)options;  // the report always goes to stdout
  return Guard([&] {
    const auto config = drne::LoadConfig(config_path);
    const auto report = drne::GapCommand(checkpoint_path, config);
    drne::PrintGapReport(report, std::cout);
    return DRNE_OK;
  });
}

}  // extern "C"
