// Copyright 2026 The UVD Toolkit Authors
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

#include "uvd/uvd.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "uvd/chain_env.hpp"
#include "uvd/decomposer.hpp"
#include "uvd/error.hpp"
#include "uvd/goal_inference.hpp"
#include "uvd/labeler.hpp"
#include "uvd/reward.hpp"
#include "uvd/serialize.hpp"
#include "uvd/synth.hpp"
#include "uvd/trajectory.hpp"

struct uvd_trajectory {
  uvd::Trajectory value;
};

struct uvd_decomposition {
  uvd::SubgoalDecomposition value;
};

struct uvd_goal_index {
  uvd::GoalIndex value;
};

struct uvd_relay {
  uvd::RelayState value;
};

struct uvd_suite {
  std::vector<uvd::SynthConfig> configs;
};

namespace {

thread_local std::string g_last_error;

uvd_status StatusOf(uvd::ErrorKind kind) {
  switch (kind) {
    case uvd::ErrorKind::kInvalidArgument: return UVD_ERR_INVALID_ARGUMENT;
    case uvd::ErrorKind::kIo: return UVD_ERR_IO;
    case uvd::ErrorKind::kFormat: return UVD_ERR_FORMAT;
    case uvd::ErrorKind::kValidation: return UVD_ERR_VALIDATION;
    case uvd::ErrorKind::kDegenerateSegment: return UVD_ERR_DEGENERATE_SEGMENT;
    case uvd::ErrorKind::kState: return UVD_ERR_STATE;
  }
  return UVD_ERR_INTERNAL;
}

uvd_status Report(uvd_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
uvd_status Guard(Fn&& fn) {
  try {
    fn();
    return UVD_OK;
  } catch (const uvd::Error& e) {
    return Report(StatusOf(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return Report(UVD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Report(UVD_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) uvd::Fail(uvd::ErrorKind::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

uvd::FileFormat FormatFor(uvd_format format, const char* path) {
  switch (format) {
    case UVD_FORMAT_BINARY: return uvd::FileFormat::kBinary;
    case UVD_FORMAT_CSV: return uvd::FileFormat::kCsv;
    case UVD_FORMAT_AUTO: return uvd::FormatFromPath(path);
  }
  uvd::Fail(uvd::ErrorKind::kInvalidArgument, "unknown format");
}

uvd::DecomposerConfig ToCore(const uvd_decomposer_config* cfg) {
  uvd::DecomposerConfig out;
  if (cfg) {
    out.min_interval = cfg->min_interval;
    out.smoother.bandwidth = cfg->bandwidth;
  }
  return out;
}

uvd::RewardWeights ToCore(const uvd_reward_weights* w) {
  uvd::RewardWeights out;
  if (w) out = {w->alpha, w->beta, w->gamma, w->epsilon};
  return out;
}

uvd::RelayConfig ToCore(const uvd_relay_config* cfg) {
  uvd::RelayConfig out;
  if (cfg) out = {cfg->epsilon, cfg->delta, cfg->budget_check != 0};
  return out;
}

std::vector<std::uint64_t> Seeds(const uint64_t* seeds, size_t count) {
  Require(seeds || count == 0, "seeds is null");
  return std::vector<std::uint64_t>(seeds, seeds + count);
}

uvd::ChainEnvConfig ChainConfig(const uvd_chain_options& o) {
  Require(o.waypoint_count <= UVD_MAX_WAYPOINTS, "too many waypoints");
  uvd::ChainEnvConfig cfg;
  cfg.grid_n = o.grid_n;
  cfg.start = {o.start_x, o.start_y};
  for (size_t i = 0; i < o.waypoint_count; ++i) {
    cfg.waypoints.push_back({o.waypoints[i][0], o.waypoints[i][1]});
  }
  cfg.flag_scale = o.flag_scale;
  cfg.seed = o.seed;
  cfg.horizon = o.horizon != 0 ? o.horizon : 3 * uvd::ShortestCompletion(cfg);
  return cfg;
}

uvd::RewardTrace Trace(const uvd_trajectory* traj, const uvd_decomposition* d,
                       const uvd_reward_weights* w) {
  Require(traj, "trajectory is null");
  const auto weights = ToCore(w);
  return d ? uvd::ShapedRewardTrace(traj->value, d->value, weights)
           : uvd::FinalGoalRewardTrace(traj->value, weights);
}

}  // namespace

extern "C" {

const char* uvd_version(void) { return "1.0.0"; }

const char* uvd_status_name(uvd_status status) {
  switch (status) {
    case UVD_OK: return "ok";
    case UVD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case UVD_ERR_IO: return "io error";
    case UVD_ERR_FORMAT: return "format error";
    case UVD_ERR_VALIDATION: return "validation error";
    case UVD_ERR_DEGENERATE_SEGMENT: return "degenerate segment";
    case UVD_ERR_STATE: return "invalid state";
    case UVD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* uvd_last_error(void) { return g_last_error.c_str(); }

void uvd_string_free(char* s) { std::free(s); }

uvd_status uvd_trajectory_create(size_t rows, size_t cols, const double* values,
                                 uvd_trajectory** out) {
  return Guard([&] {
    Require(out, "out is null");
    Require(values || rows * cols == 0, "values is null");
    std::vector<double> v(values, values + rows * cols);
    *out = new uvd_trajectory{uvd::Trajectory(rows, cols, std::move(v))};
  });
}

uvd_status uvd_trajectory_load(const char* path, uvd_format format, uvd_trajectory** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = new uvd_trajectory{uvd::LoadTrajectory(path, FormatFor(format, path))};
  });
}

uvd_status uvd_trajectory_save(const uvd_trajectory* traj, const char* path,
                               uvd_format format) {
  return Guard([&] {
    Require(traj && path, "null argument");
    uvd::SaveTrajectory(traj->value, path, FormatFor(format, path));
  });
}

void uvd_trajectory_free(uvd_trajectory* traj) { delete traj; }
size_t uvd_trajectory_rows(const uvd_trajectory* traj) { return traj ? traj->value.rows() : 0; }
size_t uvd_trajectory_cols(const uvd_trajectory* traj) { return traj ? traj->value.cols() : 0; }
const double* uvd_trajectory_data(const uvd_trajectory* traj) {
  return traj ? traj->value.values().data() : nullptr;
}

void uvd_decomposer_config_default(uvd_decomposer_config* cfg) {
  if (!cfg) return;
  const uvd::DecomposerConfig d;
  cfg->min_interval = d.min_interval;
  cfg->bandwidth = d.smoother.bandwidth;
}

uvd_status uvd_decompose(const uvd_trajectory* traj, const uvd_decomposer_config* cfg,
                         uvd_decomposition** out) {
  return Guard([&] {
    Require(traj && out, "null argument");
    *out = new uvd_decomposition{uvd::Decompose(traj->value, ToCore(cfg))};
  });
}

uvd_status uvd_decomposition_create(const size_t* subgoals, size_t count,
                                    uvd_decomposition** out) {
  return Guard([&] {
    Require(out, "out is null");
    Require(subgoals || count == 0, "subgoals is null");
    *out = new uvd_decomposition{
        uvd::MakeDecomposition(std::vector<uvd::FrameIndex>(subgoals, subgoals + count))};
  });
}

void uvd_decomposition_free(uvd_decomposition* d) { delete d; }
size_t uvd_decomposition_size(const uvd_decomposition* d) { return d ? d->value.size() : 0; }
const size_t* uvd_decomposition_subgoals(const uvd_decomposition* d) {
  return d ? d->value.subgoals.data() : nullptr;
}
const size_t* uvd_decomposition_budgets(const uvd_decomposition* d) {
  return d ? d->value.budgets.data() : nullptr;
}

uvd_status uvd_decomposition_to_json(const uvd_decomposition* d, const char* id, size_t T,
                                     const uvd_decomposer_config* cfg, int with_labels,
                                     char** out_json) {
  return Guard([&] {
    Require(d && out_json, "null argument");
    std::optional<uvd::GoalLabeling> labels;
    if (with_labels) labels = uvd::Relabel(d->value, T);
    *out_json = CopyString(uvd::DecompositionToJson(id ? id : "", T, d->value, ToCore(cfg),
                                                    labels ? &*labels : nullptr));
  });
}

uvd_status uvd_decomposition_from_json(const char* json, uvd_decomposition** out,
                                       size_t* T_out) {
  return Guard([&] {
    Require(json && out, "null argument");
    auto record = uvd::DecompositionFromJson(json);
    *out = new uvd_decomposition{std::move(record.decomposition)};
    if (T_out) *T_out = record.T;
  });
}

uvd_status uvd_relabel(const uvd_decomposition* d, size_t T, size_t* labels_out) {
  return Guard([&] {
    Require(d && labels_out, "null argument");
    const auto labels = uvd::Relabel(d->value, T);
    std::copy(labels.begin(), labels.end(), labels_out);
  });
}

uvd_status uvd_uniform_labels(size_t T, size_t window, uint64_t seed, size_t* labels_out) {
  return Guard([&] {
    Require(labels_out, "labels_out is null");
    const auto labels = uvd::UniformLabels(T, window, seed);
    std::copy(labels.begin(), labels.end(), labels_out);
  });
}

uvd_status uvd_random_subgoals(size_t T, uint64_t seed, uvd_decomposition** out) {
  return Guard([&] {
    Require(out, "out is null");
    *out = new uvd_decomposition{uvd::MakeDecomposition(uvd::RandomSubgoals(T, seed))};
  });
}

void uvd_reward_weights_default(uvd_reward_weights* w) {
  if (!w) return;
  const uvd::RewardWeights d;
  *w = {d.alpha, d.beta, d.gamma, d.epsilon};
}

uvd_status uvd_shaped_rewards(const uvd_trajectory* traj, const uvd_decomposition* d,
                              const uvd_reward_weights* w, double* rewards_out,
                              size_t* switches_out, size_t* switch_count) {
  return Guard([&] {
    Require(rewards_out, "rewards_out is null");
    const auto trace = Trace(traj, d, w);
    std::copy(trace.rewards.begin(), trace.rewards.end(), rewards_out);
    if (switches_out) std::copy(trace.switches.begin(), trace.switches.end(), switches_out);
    if (switch_count) *switch_count = trace.switches.size();
  });
}

uvd_status uvd_shaped_rewards_json(const uvd_trajectory* traj, const uvd_decomposition* d,
                                   const uvd_reward_weights* w, char** out_json) {
  return Guard([&] {
    Require(out_json, "out_json is null");
    *out_json = CopyString(uvd::RewardTraceToJson(Trace(traj, d, w)));
  });
}

uvd_status uvd_simple_reward(const uvd_trajectory* traj, size_t goal, size_t t, double* out) {
  return Guard([&] {
    Require(traj && out, "null argument");
    *out = uvd::SimpleReward(traj->value, goal, t);
  });
}

uvd_status uvd_goal_index_build(const uvd_trajectory* const* trajs, const size_t* const* labels,
                                size_t count, uvd_goal_index** out) {
  return Guard([&] {
    Require(out, "out is null");
    Require((trajs && labels) || count == 0, "null argument");
    std::vector<uvd::GoalLabeling> owned;
    owned.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      Require(trajs[i] && labels[i], "null trajectory or labels");
      owned.emplace_back(labels[i], labels[i] + trajs[i]->value.rows());
    }
    std::vector<uvd::GoalIndex::LabeledTrajectory> dataset;
    for (size_t i = 0; i < count; ++i) dataset.emplace_back(&trajs[i]->value, &owned[i]);
    *out = new uvd_goal_index{uvd::GoalIndex::Build(dataset)};
  });
}

void uvd_goal_index_free(uvd_goal_index* index) { delete index; }
size_t uvd_goal_index_size(const uvd_goal_index* index) {
  return index ? index->value.size() : 0;
}

uvd_status uvd_goal_index_nearest(const uvd_goal_index* index, const double* query, size_t dim,
                                  uvd_nearest* out) {
  return Guard([&] {
    Require(index && query && out, "null argument");
    const auto hit = index->value.Nearest({query, dim});
    *out = {hit.goal.trajectory, hit.goal.frame, hit.entry, hit.distance};
  });
}

void uvd_relay_config_default(uvd_relay_config* cfg) {
  if (!cfg) return;
  const uvd::RelayConfig d;
  *cfg = {d.epsilon, d.delta, d.budget_check ? 1 : 0};
}

uvd_status uvd_relay_create(const uvd_trajectory* demo, const uvd_decomposition* d,
                            const uvd_relay_config* cfg, uvd_relay** out) {
  return Guard([&] {
    Require(demo && d && out, "null argument");
    *out = new uvd_relay{uvd::RelayState::FromDemonstration(demo->value, d->value, ToCore(cfg))};
  });
}

void uvd_relay_free(uvd_relay* relay) { delete relay; }

uvd_status uvd_relay_step_observation(uvd_relay* relay, const double* obs, size_t dim,
                                      uvd_relay_step* out) {
  return Guard([&] {
    Require(relay && obs && out, "null argument");
    const auto r = relay->value.Step({obs, dim});
    *out = {r.ordinal, r.goal_id, r.distance, r.switched ? 1 : 0,
            relay->value.finished() ? 1 : 0};
  });
}

uvd_status uvd_relay_step_to_json(size_t t, const uvd_relay_step* step, char** out_json) {
  return Guard([&] {
    Require(step && out_json, "null argument");
    uvd::RelayState::StepResult r;
    r.ordinal = step->ordinal;
    r.goal_id = step->goal_id;
    r.distance = step->distance;
    r.switched = step->switched != 0;
    *out_json = CopyString(uvd::RelayStepToJson(t, r));
  });
}

uvd_status uvd_synth_generate(const uvd_synth_config* cfg, uvd_trajectory** out) {
  return Guard([&] {
    Require(cfg && out, "null argument");
    Require(cfg->boundaries || cfg->boundary_count == 0, "boundaries is null");
    uvd::SynthConfig core;
    core.T = cfg->T;
    core.K = cfg->K;
    core.boundaries.assign(cfg->boundaries, cfg->boundaries + cfg->boundary_count);
    core.noise_sigma = cfg->noise_sigma;
    core.anchor_scale = cfg->anchor_scale;
    core.seed = cfg->seed;
    *out = new uvd_trajectory{uvd::GenerateSynthetic(core).trajectory};
  });
}

uvd_status uvd_score_boundaries(const size_t* predicted, size_t predicted_count,
                                const size_t* truth, size_t truth_count, size_t tolerance,
                                uvd_boundary_score* out) {
  return Guard([&] {
    Require(out, "out is null");
    Require((predicted || predicted_count == 0) && (truth || truth_count == 0),
            "null boundary list");
    const auto s = uvd::ScoreBoundaries({predicted, predicted + predicted_count},
                                        {truth, truth + truth_count}, tolerance);
    *out = {s.precision, s.recall, s.f1, s.matched};
  });
}

uvd_status uvd_suite_load(const char* path, uvd_suite** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = new uvd_suite{uvd::LoadSuite(path)};
  });
}

uvd_status uvd_suite_parse(const char* json, uvd_suite** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new uvd_suite{uvd::ParseSuite(json)};
  });
}

void uvd_suite_free(uvd_suite* suite) { delete suite; }
size_t uvd_suite_size(const uvd_suite* suite) { return suite ? suite->configs.size() : 0; }
const char* uvd_suite_id(const uvd_suite* suite, size_t i) {
  return suite && i < suite->configs.size() ? suite->configs[i].id.c_str() : nullptr;
}

uvd_status uvd_suite_generate(const uvd_suite* suite, size_t i, uvd_trajectory** out,
                              uvd_decomposition** boundaries_out) {
  return Guard([&] {
    Require(suite && out, "null argument");
    Require(i < suite->configs.size(), "suite index out of range");
    auto result = uvd::GenerateSynthetic(suite->configs[i]);
    std::optional<uvd_decomposition> truth;
    if (boundaries_out) truth.emplace(uvd_decomposition{uvd::MakeDecomposition(result.boundaries)});
    *out = new uvd_trajectory{std::move(result.trajectory)};
    if (boundaries_out) *boundaries_out = new uvd_decomposition{std::move(*truth)};
  });
}

uvd_status uvd_bench_run(const uvd_suite* suite, const uvd_bench_options* options,
                         char** csv_out, char** summary_json_out) {
  return Guard([&] {
    Require(suite && options, "null argument");
    uvd::BenchOptions core;
    core.decomposer = ToCore(&options->decomposer);
    core.tolerance = options->tolerance;
    core.uniform_window = options->uniform_window;
    core.seeds = Seeds(options->seeds, options->seed_count);
    core.noise_sigma = options->noise_sigma;
    const auto rows = uvd::RunBaselineComparison(suite->configs, core);
    char* csv = csv_out ? CopyString(uvd::BenchRowsToCsv(rows)) : nullptr;
    if (summary_json_out) {
      try {
        *summary_json_out = CopyString(uvd::BenchSummaryToJson(rows));
      } catch (...) {
        std::free(csv);
        throw;
      }
    }
    if (csv_out) *csv_out = csv;
  });
}

uvd_status uvd_calibrate_noise(const uvd_suite* suite, const uvd_decomposer_config* decomposer,
                               const double* grid, size_t grid_count, const uint64_t* seeds,
                               size_t seed_count, size_t tolerance, double target_f1,
                               char** json_out) {
  return Guard([&] {
    Require(suite && json_out, "null argument");
    Require(grid || grid_count == 0, "grid is null");
    const auto cal = uvd::CalibrateNoise(suite->configs, ToCore(decomposer),
                                         std::vector<double>(grid, grid + grid_count),
                                         Seeds(seeds, seed_count), tolerance, target_f1);
    *json_out = CopyString(uvd::NoiseCalibrationToJson(cal));
  });
}

void uvd_chain_options_default(uvd_chain_options* opts) {
  if (!opts) return;
  *opts = {};
  const auto task = uvd::DefaultChainTask();
  const auto learner = uvd::DefaultChainLearner();
  opts->grid_n = task.grid_n;
  opts->start_x = task.start.x;
  opts->start_y = task.start.y;
  opts->waypoint_count = task.waypoints.size();
  for (size_t i = 0; i < task.waypoints.size(); ++i) {
    opts->waypoints[i][0] = task.waypoints[i].x;
    opts->waypoints[i][1] = task.waypoints[i].y;
  }
  opts->flag_scale = task.flag_scale;
  opts->horizon = 0;
  opts->seed = task.seed;
  opts->episodes = learner.episodes;
  opts->learning_rate = learner.learning_rate;
  opts->discount = learner.discount;
  opts->epsilon_start = learner.epsilon_start;
  opts->epsilon_end = learner.epsilon_end;
  opts->decomposer = {learner.decomposer.min_interval, learner.decomposer.smoother.bandwidth};
  uvd_reward_weights_default(&opts->weights);
}

uvd_status uvd_chain_demo(const uvd_chain_options* opts, uvd_trajectory** out) {
  return Guard([&] {
    Require(opts && out, "null argument");
    const uvd::ChainEnv env(ChainConfig(*opts));
    *out = new uvd_trajectory{uvd::ScriptedDemonstration(env)};
  });
}

uvd_status uvd_chain_experiment(const uvd_chain_options* opts, uvd_reward_mode mode,
                                const uint64_t* seeds, size_t seed_count, char** json_out) {
  return Guard([&] {
    Require(opts && json_out, "null argument");
    Require(mode == UVD_REWARD_UVD || mode == UVD_REWARD_FINAL_GOAL, "unknown reward mode");
    uvd::LearnerConfig learner;
    learner.episodes = opts->episodes;
    learner.learning_rate = opts->learning_rate;
    learner.discount = opts->discount;
    learner.epsilon_start = opts->epsilon_start;
    learner.epsilon_end = opts->epsilon_end;
    learner.decomposer = ToCore(&opts->decomposer);
    learner.weights = ToCore(&opts->weights);
    const auto result = uvd::RunChainExperiment(
        ChainConfig(*opts), mode == UVD_REWARD_UVD ? uvd::RewardMode::kUvd : uvd::RewardMode::kFinalGoal,
        learner, Seeds(seeds, seed_count));
    *json_out = CopyString(uvd::ChainResultToJson(result));
  });
}

}  // extern "C"
