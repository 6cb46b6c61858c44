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

#ifndef UVD_REWARD_HPP
#define UVD_REWARD_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "uvd/decomposer.hpp"
#include "uvd/trajectory.hpp"

namespace uvd {

struct RewardWeights {
  double alpha = 5.0;    // progress weight; the progress term is clipped to [-alpha, alpha]
  double beta = 3.0;     // paid once when a subgoal is reached
  double gamma = 6.0;    // paid on every step spent at the final subgoal
  double epsilon = 0.2;  // normalized-distance threshold for "reached"
};

void CheckRewardWeights(const RewardWeights& w);

struct RewardTrace {
  std::vector<double> rewards;     // rewards[t-1] scores the move t-1 -> t
  std::vector<FrameIndex> goal_at; // subgoal frame active for that move
  std::vector<std::size_t> switches;  // timesteps t at which a subgoal was reached
  RewardWeights weights;
};

// Unnormalized distance-difference reward for the move t-1 -> t:
// d(o_{t-1}, goal) - d(o_t, goal).
double SimpleReward(const Trajectory& traj, FrameIndex goal, std::size_t t);

// d(o_t, g_i) / D_i, with D_0 = d(o_0, g_0) and D_i = d(g_{i-1}, g_i).
// A zero D_i is a degenerate segment and raises kDegenerateSegment.
double NormalizedDistance(const Trajectory& traj,
                          const SubgoalDecomposition& decomposition,
                          std::size_t t, std::size_t ordinal);

// Online form of the shaped reward. Holds the subgoal embeddings and their
// normalizers, and walks through the subgoals as they are reached.
//
// For each move prev -> obs with active ordinal i:
//   progress = clip(alpha * (dn(prev) - dn(obs)), -alpha, alpha)
//   + beta   the first time dn(obs) < epsilon for ordinal i
//   + gamma  whenever i is the last ordinal and dn(obs) < epsilon
// where dn is the normalized distance to g_i. Reaching an intermediate
// subgoal advances i for the next move; reaching the last one marks the
// tracker complete without changing i.
class ShapedRewardTracker {
 public:
  struct Step {
    double reward = 0.0;
    double progress = 0.0;
    std::size_t ordinal = 0;    // ordinal that scored this move
    FrameIndex goal = 0;        // its subgoal frame id
    bool switched = false;
  };

  // `goal_ids` are opaque labels (typically demonstration frame indices).
  ShapedRewardTracker(std::vector<std::vector<double>> goals,
                      std::vector<FrameIndex> goal_ids,
                      std::vector<double> normalizers, RewardWeights weights);

  // Subgoals and normalizers taken from a demonstration and its decomposition.
  static ShapedRewardTracker FromDemonstration(
      const Trajectory& demo, const SubgoalDecomposition& decomposition,
      RewardWeights weights);

  Step Advance(std::span<const double> prev, std::span<const double> obs);

  std::size_t ordinal() const { return ordinal_; }
  std::size_t goal_count() const { return goals_.size(); }
  bool complete() const { return complete_; }
  double NormalizedDistanceTo(std::span<const double> obs) const;
  void Reset();

 private:
  std::vector<std::vector<double>> goals_;
  std::vector<FrameIndex> goal_ids_;
  std::vector<double> normalizers_;
  RewardWeights weights_;
  std::size_t ordinal_ = 0;
  bool complete_ = false;
};

RewardTrace ShapedRewardTrace(const Trajectory& traj,
                              const SubgoalDecomposition& decomposition,
                              const RewardWeights& weights);

// Single goal at the final frame, beta forced to zero.
RewardTrace FinalGoalRewardTrace(const Trajectory& traj,
                                 const RewardWeights& weights);

}  // namespace uvd

#endif  // UVD_REWARD_HPP
