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

/* C interface to the drne solver. All handles are opaque; every call that
 * can fail returns a drne_status and leaves a message readable through
 * drne_last_error() on the calling thread. */
#ifndef DRNE_DRNE_H_
#define DRNE_DRNE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DRNE_BUILDING_LIBRARY)
#define DRNE_API __attribute__((visibility("default")))
#else
#define DRNE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drne_status {
  DRNE_OK = 0,
  DRNE_ERR_PARAMETER = 1,
  DRNE_ERR_SHAPE = 2,
  DRNE_ERR_DOMAIN = 3,
  DRNE_ERR_NUMERIC = 4,
  DRNE_ERR_CONTRACT = 5,
  DRNE_ERR_RANGE = 6,
  DRNE_ERR_CONFIG = 7,
  DRNE_ERR_IO = 8,
  DRNE_ERR_NULL = 9,
  DRNE_ERR_INTERNAL = 10,
  DRNE_ERR_CHECK_FAILED = 11
} drne_status;

typedef struct drne_game drne_game;
typedef struct drne_run drne_run;

DRNE_API const char* drne_version(void);
DRNE_API const char* drne_status_string(drne_status status);
DRNE_API const char* drne_last_error(void);

/* Games. */
DRNE_API drne_status drne_game_create_cvar(int players, int decisions, int scenarios,
                                           double alpha, uint64_t seed, double bounds,
                                           drne_game** out);
DRNE_API drne_status drne_game_create_from_config(const char* config_path,
                                                  drne_game** out);
DRNE_API void drne_game_destroy(drne_game* game);
DRNE_API drne_status drne_game_dimensions(const drne_game* game, int* players,
                                          size_t* x_dim, size_t* p_dim);
DRNE_API drne_status drne_game_initial_point(const drne_game* game, double* x,
                                             double* p);

/* Full-batch operator g = (F1, F2) at (x, p). */
DRNE_API drne_status drne_operator_full(const drne_game* game, const double* x,
                                        const double* p, double* g1, double* g2);

/* Euclidean projection of v (length m) onto the probability simplex. */
DRNE_API drne_status drne_project_simplex(const double* v, size_t m, double* out);

/* Solver. Schedules: 0 = 1/(sqrt(1+t) ln(t+2)), 1 = constant `value`,
 * 2 = scale / (1+t)^exponent. */
typedef struct drne_run_options {
  int64_t iterations;
  int b1;
  int b2;
  uint64_t seed;
  int primal_kind;
  double primal_value;
  double primal_scale;
  double primal_exponent;
  int dual_kind;
  double dual_value;
  double dual_scale;
  double dual_exponent;
} drne_run_options;

DRNE_API void drne_run_options_init(drne_run_options* options);
DRNE_API drne_status drne_solve(const drne_game* game, const double* x0,
                                const double* p0, const drne_run_options* options,
                                drne_run** out);
DRNE_API void drne_run_destroy(drne_run* run);
DRNE_API drne_status drne_run_final_iterate(const drne_run* run, double* x, double* p);
DRNE_API drne_status drne_run_ergodic_average(const drne_run* run, double* x, double* p);

/* Restricted gap at (x, p) against `samples` random feasible probes and
 * `vertex_probes` vertex probes, plus (x, p) and the initial point. */
DRNE_API drne_status drne_gap(const drne_game* game, const double* x, const double* p,
                              int samples, int vertex_probes, uint64_t probe_seed,
                              double* gap);

/* Command entry points used by the CLI. Progress goes to stdout unless
 * quiet; errors are reported through drne_last_error(). */
typedef struct drne_cmd_options {
  const char* out_dir; /* NULL: use the config's output directory */
  int workers;
  int quiet;
  double selftest_simplex_perturbation;
} drne_cmd_options;

DRNE_API void drne_cmd_options_init(drne_cmd_options* options);
DRNE_API drne_status drne_cmd_run(const char* config_path, const drne_cmd_options* options);
/* Returns DRNE_ERR_CHECK_FAILED when any self-test check fails. */
DRNE_API drne_status drne_cmd_selftest(const drne_cmd_options* options);
DRNE_API drne_status drne_cmd_gap(const char* checkpoint_path, const char* config_path,
                                  const drne_cmd_options* options);

#ifdef __cplusplus
}
#endif

#endif /* DRNE_DRNE_H_ */
