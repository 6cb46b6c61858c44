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

#ifndef UVD_GOAL_INFERENCE_HPP
#define UVD_GOAL_INFERENCE_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "uvd/decomposer.hpp"
#include "uvd/labeler.hpp"
#include "uvd/trajectory.hpp"

namespace uvd {

// Identifies a subgoal frame inside a dataset of trajectories.
struct GoalRef {
  std::size_t trajectory = 0;
  FrameIndex frame = 0;
  friend bool operator==(const GoalRef&, const GoalRef&) = default;
};

struct NearestGoal {
  GoalRef goal;
  std::span<const double> embedding;  // view into the index; valid while it lives
  double distance = 0.0;
  std::size_t entry = 0;              // insertion position of the matched entry
};

// Lookup table from every labeled frame to its assigned subgoal.
// Immutable once built; concurrent queries are safe.
class GoalIndex {
 public:
  using LabeledTrajectory = std::pair<const Trajectory*, const GoalLabeling*>;

  static GoalIndex Build(std::span<const LabeledTrajectory> dataset);

  // Exact nearest entry by L2 distance, lowest insertion order on ties.
  // Candidates are abandoned as soon as their running squared distance
  // exceeds the best so far; the accumulation order matches a full scan, so
  // the answer is identical to exhaustive search.
  NearestGoal Nearest(std::span<const double> query) const;

  std::size_t size() const { return refs_.size(); }
  std::size_t dim() const { return dim_; }
  std::span<const double> entry(std::size_t i) const {
    return {entries_.data() + i * dim_, dim_};
  }
  const GoalRef& goal_of(std::size_t i) const { return refs_[i]; }
  std::span<const double> goal_embedding(std::size_t i) const {
    return {goals_.data() + i * dim_, dim_};
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
  std::vector<double> goals_;
  std::vector<GoalRef> refs_;
};

struct RelayConfig {
  double epsilon = 0.2;   // raw embedding distance
  std::size_t delta = 2;  // budget tolerance in steps
  bool budget_check = true;
};

// Goal-relay automaton for rolling out against a list of subgoals.
// Single owner; not safe for concurrent stepping.
class RelayState {
 public:
  struct StepResult {
    std::size_t ordinal = 0;   // ordinal active after the step
    FrameIndex goal_id = 0;    // id of the goal the observation was tested against
    double distance = 0.0;     // distance to that goal
    bool switched = false;
  };

  RelayState(std::vector<std::vector<double>> goals, std::vector<FrameIndex> goal_ids,
             std::vector<std::size_t> budgets, RelayConfig config);

  // Subgoals, ids and budgets from a demonstration's decomposition.
  static RelayState FromDemonstration(const Trajectory& demo,
                                      const SubgoalDecomposition& decomposition,
                                      RelayConfig config);

  // Counts one observation; switches when it is within epsilon of the active
  // goal and, with the budget check on, |steps - budget| < delta.
  StepResult Step(std::span<const double> obs);

  std::size_t current() const { return current_; }
  std::size_t steps_since_switch() const { return steps_; }
  bool finished() const { return finished_; }
  std::size_t goal_count() const { return goals_.size(); }
  FrameIndex goal_id(std::size_t ordinal) const { return goal_ids_[ordinal]; }
  std::size_t budget(std::size_t ordinal) const { return budgets_[ordinal]; }
  std::span<const double> goal(std::size_t ordinal) const { return goals_[ordinal]; }
  const RelayConfig& config() const { return config_; }

 private:
  std::vector<std::vector<double>> goals_;
  std::vector<FrameIndex> goal_ids_;
  std::vector<std::size_t> budgets_;
  RelayConfig config_;
  std::size_t current_ = 0;
  std::size_t steps_ = 0;
  bool finished_ = false;
};

}  // namespace uvd

#endif  // UVD_GOAL_INFERENCE_HPP
