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

#include "uvd/reward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uvd/error.hpp"

namespace uvd {
namespace {

void CheckIndex(std::size_t value, std::size_t bound, const char* what) {
  if (value >= bound) {
    Fail(ErrorKind::kInvalidArgument,
         std::string(what) + " " + std::to_string(value) +
             " out of range (bound " + std::to_string(bound) + ")");
  }
}

double SegmentNormalizer(const Trajectory& traj,
                         const SubgoalDecomposition& d, std::size_t ordinal) {
  const FrameIndex from = ordinal == 0 ? 0 : d.subgoals[ordinal - 1];
  const double norm = L2Distance(traj.frame(from), traj.frame(d.subgoals[ordinal]));
  if (norm == 0.0) {
    Fail(ErrorKind::kDegenerateSegment,
         "degenerate segment: frames " + std::to_string(from) + " and " +
             std::to_string(d.subgoals[ordinal]) + " have identical embeddings");
  }
  return norm;
}

void CheckAgainst(const Trajectory& traj, const SubgoalDecomposition& d) {
  auto problems = CheckDecomposition(d, traj.rows());
  if (!problems.empty()) {
    Fail(ErrorKind::kInvalidArgument, "invalid decomposition: " + problems.front());
  }
}

}  // namespace

void CheckRewardWeights(const RewardWeights& w) {
  if (!(w.alpha >= 0.0) || !(w.beta >= 0.0) || !(w.gamma >= 0.0) ||
      !std::isfinite(w.alpha) || !std::isfinite(w.beta) || !std::isfinite(w.gamma)) {
    Fail(ErrorKind::kInvalidArgument, "alpha, beta, gamma must be finite and >= 0");
  }
  if (!(w.epsilon > 0.0 && w.epsilon < 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "epsilon must lie in (0, 1)");
  }
}

double SimpleReward(const Trajectory& traj, FrameIndex goal, std::size_t t) {
  CheckIndex(goal, traj.rows(), "goal");
  if (t < 1) Fail(ErrorKind::kInvalidArgument, "t must be >= 1");
  CheckIndex(t, traj.rows(), "t");
  const auto g = traj.frame(goal);
  return L2Distance(traj.frame(t - 1), g) - L2Distance(traj.frame(t), g);
}

double NormalizedDistance(const Trajectory& traj,
                          const SubgoalDecomposition& decomposition,
                          std::size_t t, std::size_t ordinal) {
  CheckIndex(ordinal, decomposition.size(), "subgoal ordinal");
  CheckIndex(decomposition.subgoals[ordinal], traj.rows(), "subgoal frame");
  if (t > decomposition.subgoals[ordinal]) {
    Fail(ErrorKind::kInvalidArgument, "t lies past subgoal " + std::to_string(ordinal));
  }
  const double norm = SegmentNormalizer(traj, decomposition, ordinal);
  return L2Distance(traj.frame(t), traj.frame(decomposition.subgoals[ordinal])) / norm;
}

ShapedRewardTracker::ShapedRewardTracker(std::vector<std::vector<double>> goals,
                                         std::vector<FrameIndex> goal_ids,
                                         std::vector<double> normalizers,
                                         RewardWeights weights)
    : goals_(std::move(goals)),
      goal_ids_(std::move(goal_ids)),
      normalizers_(std::move(normalizers)),
      weights_(weights) {
  CheckRewardWeights(weights_);
  if (goals_.empty()) Fail(ErrorKind::kInvalidArgument, "no subgoals");
  if (goal_ids_.size() != goals_.size() || normalizers_.size() != goals_.size()) {
    Fail(ErrorKind::kInvalidArgument, "goal, id and normalizer counts differ");
  }
  for (std::size_t i = 0; i < goals_.size(); ++i) {
    if (goals_[i].size() != goals_.front().size()) {
      Fail(ErrorKind::kInvalidArgument, "subgoal embeddings differ in dimension");
    }
    if (!(normalizers_[i] > 0.0) || !std::isfinite(normalizers_[i])) {
      Fail(ErrorKind::kDegenerateSegment,
           "degenerate segment: zero normalizer for subgoal " + std::to_string(i));
    }
  }
}

ShapedRewardTracker ShapedRewardTracker::FromDemonstration(
    const Trajectory& demo, const SubgoalDecomposition& decomposition,
    RewardWeights weights) {
  CheckAgainst(demo, decomposition);
  std::vector<std::vector<double>> goals;
  std::vector<double> norms;
  for (std::size_t i = 0; i < decomposition.size(); ++i) {
    auto f = demo.frame(decomposition.subgoals[i]);
    goals.emplace_back(f.begin(), f.end());
    norms.push_back(SegmentNormalizer(demo, decomposition, i));
  }
  return ShapedRewardTracker(std::move(goals), decomposition.subgoals,
                             std::move(norms), weights);
}

double ShapedRewardTracker::NormalizedDistanceTo(std::span<const double> obs) const {
  return L2Distance(obs, goals_[ordinal_]) / normalizers_[ordinal_];
}

void ShapedRewardTracker::Reset() {
  ordinal_ = 0;
  complete_ = false;
}

ShapedRewardTracker::Step ShapedRewardTracker::Advance(std::span<const double> prev,
                                                       std::span<const double> obs) {
  const std::size_t dim = goals_.front().size();
  if (prev.size() != dim || obs.size() != dim) {
    Fail(ErrorKind::kInvalidArgument, "observation dimension mismatch");
  }
  Step step;
  step.ordinal = ordinal_;
  step.goal = goal_ids_[ordinal_];
  const double before = NormalizedDistanceTo(prev);
  const double after = NormalizedDistanceTo(obs);
  // Clip after weighting: the weighted term stays within [-alpha, alpha].
  step.progress = std::clamp(weights_.alpha * (before - after), -weights_.alpha,
                             weights_.alpha);
  step.reward = step.progress;
  const bool reached = after < weights_.epsilon;
  const bool last = ordinal_ + 1 == goals_.size();
  if (reached && !complete_) {
    step.reward += weights_.beta;
    step.switched = true;
    if (last) {
      complete_ = true;
    } else {
      ++ordinal_;
    }
  }
  if (reached && last) step.reward += weights_.gamma;
  return step;
}

RewardTrace ShapedRewardTrace(const Trajectory& traj,
                              const SubgoalDecomposition& decomposition,
                              const RewardWeights& weights) {
  auto tracker = ShapedRewardTracker::FromDemonstration(traj, decomposition, weights);
  RewardTrace trace;
  trace.weights = weights;
  trace.rewards.reserve(traj.rows() - 1);
  trace.goal_at.reserve(traj.rows() - 1);
  for (std::size_t t = 1; t < traj.rows(); ++t) {
    const auto step = tracker.Advance(traj.frame(t - 1), traj.frame(t));
    trace.rewards.push_back(step.reward);
    trace.goal_at.push_back(step.goal);
    if (step.switched) trace.switches.push_back(t);
  }
  return trace;
}

RewardTrace FinalGoalRewardTrace(const Trajectory& traj,
                                 const RewardWeights& weights) {
  RewardWeights w = weights;
  w.beta = 0.0;
  return ShapedRewardTrace(traj, MakeDecomposition({traj.rows() - 1}), w);
}

}  // namespace uvd
