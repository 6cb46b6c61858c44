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

#ifndef UVD_CHAIN_ENV_HPP
#define UVD_CHAIN_ENV_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uvd/decomposer.hpp"
#include "uvd/reward.hpp"
#include "uvd/trajectory.hpp"

namespace uvd {

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Square grid with an ordered list of waypoints. Touching the next waypoint
// in order raises its flag; flags never clear. The observation embedding is
// (x / n, y / n, flag_scale * flag_0, ..., flag_scale * flag_{W-1}).
struct ChainEnvConfig {
  int grid_n = 9;
  Cell start{0, 0};
  std::vector<Cell> waypoints;
  double flag_scale = 1.0;
  std::size_t horizon = 100;
  std::uint64_t seed = 0;
};

// Shortest number of moves that touches every waypoint in order.
std::size_t ShortestCompletion(const ChainEnvConfig& cfg);

// Validates ranges, distinct waypoints, horizon feasibility, and that the
// observation embedding is injective over all (position, flags) pairs.
void CheckChainEnvConfig(const ChainEnvConfig& cfg);

enum class Action { kUp, kDown, kLeft, kRight, kStay };
inline constexpr int kActionCount = 5;

struct ChainState {
  Cell pos;
  std::uint32_t flags = 0;  // bit j set once waypoint j is touched
  std::size_t steps = 0;
  bool done = false;        // all flags set or horizon reached

  std::size_t flags_set() const;
};

class ChainEnv {
 public:
  explicit ChainEnv(ChainEnvConfig cfg);

  ChainState Reset() const;
  // Moves are clamped at the walls. Stepping a finished episode is an error.
  ChainState Step(const ChainState& state, Action action) const;
  std::vector<double> Observe(const ChainState& state) const;

  bool Complete(const ChainState& state) const;
  std::size_t dim() const { return 2 + cfg_.waypoints.size(); }
  const ChainEnvConfig& config() const { return cfg_; }

 private:
  ChainEnvConfig cfg_;
};

// Waypoint-following demonstration: x first, then y, toward each waypoint.
// Every waypoint but the last is overshot by one cell along the last move
// (skipped at a wall), so the demo turns around just after each touch.
// The environment horizon does not apply to the demonstration.
Trajectory ScriptedDemonstration(const ChainEnv& env);

// Four waypoints on one row of a 9x9 grid, visited back and forth:
// (7,0) (1,0) (6,0) (2,0), flag_scale 0.25, horizon 3x the shortest completion.
ChainEnvConfig DefaultChainTask();

enum class RewardMode { kUvd, kFinalGoal };

struct LearnerConfig {
  std::size_t episodes = 500;
  double learning_rate = 0.5;
  double discount = 0.98;
  double epsilon_start = 0.3;  // epsilon-greedy, decays linearly
  double epsilon_end = 0.02;
  DecomposerConfig decomposer;
  RewardWeights weights;
};

// Learner defaults for DefaultChainTask: min_interval 3 suits the 29-frame demo.
LearnerConfig DefaultChainLearner();

struct ChainSeedResult {
  std::uint64_t seed = 0;
  bool success = false;          // greedy rollout touched every waypoint in order
  double completion = 0.0;       // fraction of waypoints touched by the greedy rollout
  std::size_t steps = 0;
};

struct ChainExperimentResult {
  RewardMode mode = RewardMode::kUvd;
  double success_rate = 0.0;
  double completion_rate = 0.0;
  std::vector<FrameIndex> demo_subgoals;
  std::size_t demo_length = 0;
  std::vector<ChainSeedResult> per_seed;
};

// Decomposes the scripted demonstration, builds the shaped (or final-goal)
// reward from it, trains a tabular Q-learner over (position, flags, active
// subgoal) for each seed, and scores the greedy policy.
ChainExperimentResult RunChainExperiment(const ChainEnvConfig& cfg, RewardMode mode,
                                         const LearnerConfig& learner,
                                         const std::vector<std::uint64_t>& seeds);

}  // namespace uvd

#endif  // UVD_CHAIN_ENV_HPP
