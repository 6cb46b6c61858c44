/*
 * Copyright 2026 The UVD Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef UVD_UVD_H
#define UVD_UVD_H

/*
 * C interface to the decomposition toolkit.
 *
 * Objects are opaque handles released with their *_free function (NULL is
 * accepted). Every fallible call returns a uvd_status; on failure the
 * message is available from uvd_last_error() on the same thread until the
 * next failing call. Strings returned through char** are heap-allocated
 * and released with uvd_string_free. Output parameters are untouched on
 * failure.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(UVD_BUILDING_LIBRARY)
#    define UVD_API __declspec(dllexport)
#  else
#    define UVD_API __declspec(dllimport)
#  endif
#else
#  define UVD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uvd_status {
  UVD_OK = 0,
  UVD_ERR_INVALID_ARGUMENT = 1,
  UVD_ERR_IO = 2,
  UVD_ERR_FORMAT = 3,
  UVD_ERR_VALIDATION = 4,
  UVD_ERR_DEGENERATE_SEGMENT = 5,
  UVD_ERR_STATE = 6,
  UVD_ERR_INTERNAL = 7
} uvd_status;

UVD_API const char* uvd_version(void);
UVD_API const char* uvd_status_name(uvd_status status);
UVD_API const char* uvd_last_error(void);
UVD_API void uvd_string_free(char* s);

/* ---- trajectories ---- */

typedef struct uvd_trajectory uvd_trajectory;

typedef enum uvd_format {
  UVD_FORMAT_AUTO = -1, /* ".csv" suffix selects CSV, anything else binary */
  UVD_FORMAT_BINARY = 0,
  UVD_FORMAT_CSV = 1
} uvd_format;

/* Copies rows * cols doubles, row-major. */
UVD_API uvd_status uvd_trajectory_create(size_t rows, size_t cols, const double* values,
                                         uvd_trajectory** out);
UVD_API uvd_status uvd_trajectory_load(const char* path, uvd_format format,
                                       uvd_trajectory** out);
UVD_API uvd_status uvd_trajectory_save(const uvd_trajectory* traj, const char* path,
                                       uvd_format format);
UVD_API void uvd_trajectory_free(uvd_trajectory* traj);
UVD_API size_t uvd_trajectory_rows(const uvd_trajectory* traj);
UVD_API size_t uvd_trajectory_cols(const uvd_trajectory* traj);
/* Row-major view, valid while the handle lives. */
UVD_API const double* uvd_trajectory_data(const uvd_trajectory* traj);

/* ---- decomposition ---- */

typedef struct uvd_decomposer_config {
  size_t min_interval; /* >= 1 */
  double bandwidth;    /* Gaussian kernel width on normalized time [0, 1] */
} uvd_decomposer_config;

UVD_API void uvd_decomposer_config_default(uvd_decomposer_config* cfg);

typedef struct uvd_decomposition uvd_decomposition;

UVD_API uvd_status uvd_decompose(const uvd_trajectory* traj, const uvd_decomposer_config* cfg,
                                 uvd_decomposition** out);
/* From strictly increasing subgoal indices; budgets are derived. */
UVD_API uvd_status uvd_decomposition_create(const size_t* subgoals, size_t count,
                                            uvd_decomposition** out);
UVD_API void uvd_decomposition_free(uvd_decomposition* d);
UVD_API size_t uvd_decomposition_size(const uvd_decomposition* d);
UVD_API const size_t* uvd_decomposition_subgoals(const uvd_decomposition* d);
UVD_API const size_t* uvd_decomposition_budgets(const uvd_decomposition* d);

/* {"id","T","subgoals","budgets","config":{...}}, plus "labels" when with_labels. */
UVD_API uvd_status uvd_decomposition_to_json(const uvd_decomposition* d, const char* id,
                                             size_t T, const uvd_decomposer_config* cfg,
                                             int with_labels, char** out_json);
/* Reads a line written by uvd_decomposition_to_json. T_out may be NULL. */
UVD_API uvd_status uvd_decomposition_from_json(const char* json, uvd_decomposition** out,
                                               size_t* T_out);

/* ---- goal labels ---- */

/* labels_out receives T entries. */
UVD_API uvd_status uvd_relabel(const uvd_decomposition* d, size_t T, size_t* labels_out);
UVD_API uvd_status uvd_uniform_labels(size_t T, size_t window, uint64_t seed,
                                      size_t* labels_out);
UVD_API uvd_status uvd_random_subgoals(size_t T, uint64_t seed, uvd_decomposition** out);

/* ---- rewards ---- */

typedef struct uvd_reward_weights {
  double alpha;   /* progress weight and clip bound */
  double beta;    /* bonus per subgoal reached */
  double gamma;   /* bonus per step at the final subgoal */
  double epsilon; /* normalized reach threshold, in (0, 1) */
} uvd_reward_weights;

UVD_API void uvd_reward_weights_default(uvd_reward_weights* w);

/* Shaped rewards along `traj` scored against the decomposition's subgoal
 * frames of the same trajectory. A NULL decomposition selects the
 * final-goal reward ([T-1], beta 0). rewards_out receives T - 1 values;
 * switches_out (may be NULL) receives up to T entries, *switch_count is
 * always written when non-NULL. */
UVD_API uvd_status uvd_shaped_rewards(const uvd_trajectory* traj, const uvd_decomposition* d,
                                      const uvd_reward_weights* w, double* rewards_out,
                                      size_t* switches_out, size_t* switch_count);
/* Same trace as JSON: {"rewards","goal_at","switches","weights"}. */
UVD_API uvd_status uvd_shaped_rewards_json(const uvd_trajectory* traj,
                                           const uvd_decomposition* d,
                                           const uvd_reward_weights* w, char** out_json);
/* -||o_t - g|| + ||o_{t-1} - g|| with g = frame `goal` of traj. */
UVD_API uvd_status uvd_simple_reward(const uvd_trajectory* traj, size_t goal, size_t t,
                                     double* out);

/* ---- goal inference ---- */

typedef struct uvd_goal_index uvd_goal_index;

typedef struct uvd_nearest {
  size_t trajectory; /* position in the build list */
  size_t frame;      /* labeled goal frame of the matched entry */
  size_t entry;      /* insertion order of the matched entry */
  double distance;
} uvd_nearest;

/* labels[i] holds rows(trajs[i]) goal frames for trajs[i]. */
UVD_API uvd_status uvd_goal_index_build(const uvd_trajectory* const* trajs,
                                        const size_t* const* labels, size_t count,
                                        uvd_goal_index** out);
UVD_API void uvd_goal_index_free(uvd_goal_index* index);
UVD_API size_t uvd_goal_index_size(const uvd_goal_index* index);
UVD_API uvd_status uvd_goal_index_nearest(const uvd_goal_index* index, const double* query,
                                          size_t dim, uvd_nearest* out);

typedef struct uvd_relay_config {
  double epsilon;   /* raw embedding distance */
  size_t delta;     /* budget tolerance in steps */
  int budget_check; /* nonzero enables the budget test */
} uvd_relay_config;

UVD_API void uvd_relay_config_default(uvd_relay_config* cfg);

typedef struct uvd_relay uvd_relay;

typedef struct uvd_relay_step {
  size_t ordinal;  /* active ordinal after the step */
  size_t goal_id;  /* goal frame the observation was tested against */
  double distance; /* distance to that goal */
  int switched;
  int finished;
} uvd_relay_step;

UVD_API uvd_status uvd_relay_create(const uvd_trajectory* demo, const uvd_decomposition* d,
                                    const uvd_relay_config* cfg, uvd_relay** out);
UVD_API void uvd_relay_free(uvd_relay* relay);
/* Stepping a finished relay is UVD_ERR_STATE. */
UVD_API uvd_status uvd_relay_step_observation(uvd_relay* relay, const double* obs, size_t dim,
                                              uvd_relay_step* out);
/* {"t","goal_id","distance","switched"} for step t. */
UVD_API uvd_status uvd_relay_step_to_json(size_t t, const uvd_relay_step* step,
                                          char** out_json);

/* ---- synthetic benchmark ---- */

typedef struct uvd_synth_config {
  size_t T;
  size_t K;
  const size_t* boundaries; /* segment ends, last = T - 1 */
  size_t boundary_count;
  double noise_sigma;
  double anchor_scale;
  uint64_t seed;
} uvd_synth_config;

UVD_API uvd_status uvd_synth_generate(const uvd_synth_config* cfg, uvd_trajectory** out);

typedef struct uvd_boundary_score {
  double precision;
  double recall;
  double f1;
  size_t matched;
} uvd_boundary_score;

UVD_API uvd_status uvd_score_boundaries(const size_t* predicted, size_t predicted_count,
                                        const size_t* truth, size_t truth_count,
                                        size_t tolerance, uvd_boundary_score* out);

/* A list of synthetic configs read from JSON {"configs": [...]}. */
typedef struct uvd_suite uvd_suite;

UVD_API uvd_status uvd_suite_load(const char* path, uvd_suite** out);
UVD_API uvd_status uvd_suite_parse(const char* json, uvd_suite** out);
UVD_API void uvd_suite_free(uvd_suite* suite);
UVD_API size_t uvd_suite_size(const uvd_suite* suite);
UVD_API const char* uvd_suite_id(const uvd_suite* suite, size_t i);
/* Generates config i; boundaries_out (may be NULL) receives its boundaries. */
UVD_API uvd_status uvd_suite_generate(const uvd_suite* suite, size_t i, uvd_trajectory** out,
                                      uvd_decomposition** boundaries_out);

typedef struct uvd_bench_options {
  uvd_decomposer_config decomposer;
  size_t tolerance;
  size_t uniform_window; /* required, no default */
  const uint64_t* seeds;
  size_t seed_count;
  double noise_sigma; /* < 0 keeps each config's own noise */
} uvd_bench_options;

/* Rows "method,config_id,seed,precision,recall,f1" and a JSON summary of
 * mean F1 per method. Either output may be NULL. */
UVD_API uvd_status uvd_bench_run(const uvd_suite* suite, const uvd_bench_options* options,
                                 char** csv_out, char** summary_json_out);

/* Largest grid sigma (scanning in order) with UVD mean F1 >= target_f1. */
UVD_API uvd_status uvd_calibrate_noise(const uvd_suite* suite,
                                       const uvd_decomposer_config* decomposer,
                                       const double* grid, size_t grid_count,
                                       const uint64_t* seeds, size_t seed_count,
                                       size_t tolerance, double target_f1, char** json_out);

/* ---- chain environment ---- */

typedef enum uvd_reward_mode { UVD_REWARD_UVD = 0, UVD_REWARD_FINAL_GOAL = 1 } uvd_reward_mode;

#define UVD_MAX_WAYPOINTS 16

typedef struct uvd_chain_options {
  int grid_n;
  int start_x, start_y;
  int waypoints[UVD_MAX_WAYPOINTS][2];
  size_t waypoint_count;
  double flag_scale;
  size_t horizon; /* 0 selects 3x the shortest completion */
  uint64_t seed;
  size_t episodes;
  double learning_rate;
  double discount;
  double epsilon_start;
  double epsilon_end;
  uvd_decomposer_config decomposer;
  uvd_reward_weights weights;
} uvd_chain_options;

/* Default task: four waypoints on one row of a 9x9 grid. */
UVD_API void uvd_chain_options_default(uvd_chain_options* opts);
/* The scripted demonstration's embedding trajectory. */
UVD_API uvd_status uvd_chain_demo(const uvd_chain_options* opts, uvd_trajectory** out);
/* JSON {"mode","success_rate","completion_rate","demo_length","demo_subgoals","per_seed"}. */
UVD_API uvd_status uvd_chain_experiment(const uvd_chain_options* opts, uvd_reward_mode mode,
                                        const uint64_t* seeds, size_t seed_count,
                                        char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* UVD_UVD_H */
