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

#include "uvd/goal_inference.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "uvd/error.hpp"

namespace uvd {

GoalIndex GoalIndex::Build(std::span<const LabeledTrajectory> dataset) {
  if (dataset.empty()) Fail(ErrorKind::kInvalidArgument, "empty dataset");
  GoalIndex index;
  index.dim_ = dataset.front().first->cols();
  for (std::size_t n = 0; n < dataset.size(); ++n) {
    const Trajectory& traj = *dataset[n].first;
    const GoalLabeling& labels = *dataset[n].second;
    if (traj.cols() != index.dim_) {
      Fail(ErrorKind::kInvalidArgument,
           "dimension mismatch: trajectory " + std::to_string(n) + " has K=" +
               std::to_string(traj.cols()) + ", expected " +
               std::to_string(index.dim_));
    }
    if (labels.size() != traj.rows()) {
      Fail(ErrorKind::kInvalidArgument,
           "labeling of trajectory " + std::to_string(n) + " has wrong length");
    }
    for (FrameIndex t = 0; t < traj.rows(); ++t) {
      if (labels[t] >= traj.rows()) {
        Fail(ErrorKind::kInvalidArgument, "label out of range in trajectory " +
                                              std::to_string(n));
      }
      auto f = traj.frame(t);
      auto g = traj.frame(labels[t]);
      index.entries_.insert(index.entries_.end(), f.begin(), f.end());
      index.goals_.insert(index.goals_.end(), g.begin(), g.end());
      index.refs_.push_back({n, labels[t]});
    }
  }
  return index;
}

NearestGoal GoalIndex::Nearest(std::span<const double> query) const {
  if (refs_.empty()) Fail(ErrorKind::kState, "query on empty index");
  if (query.size() != dim_) {
    Fail(ErrorKind::kInvalidArgument,
         "query dimension " + std::to_string(query.size()) + ", index has " +
             std::to_string(dim_));
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_entry = 0;
  for (std::size_t e = 0; e < refs_.size(); ++e) {
    const double* row = entries_.data() + e * dim_;
    double sum = 0.0;
    std::size_t k = 0;
    for (; k < dim_; ++k) {
      const double d = query[k] - row[k];
      sum += d * d;
      if (sum > best) break;
    }
    if (k == dim_ && sum < best) {
      best = sum;
      best_entry = e;
    }
  }
  return {refs_[best_entry], goal_embedding(best_entry), std::sqrt(best), best_entry};
}

RelayState::RelayState(std::vector<std::vector<double>> goals,
                       std::vector<FrameIndex> goal_ids,
                       std::vector<std::size_t> budgets, RelayConfig config)
    : goals_(std::move(goals)),
      goal_ids_(std::move(goal_ids)),
      budgets_(std::move(budgets)),
      config_(config) {
  if (goals_.empty()) Fail(ErrorKind::kInvalidArgument, "empty goal list");
  if (goal_ids_.size() != goals_.size() || budgets_.size() != goals_.size()) {
    Fail(ErrorKind::kInvalidArgument, "goal, id and budget counts differ");
  }
  if (!(config_.epsilon > 0.0)) {
    Fail(ErrorKind::kInvalidArgument, "relay epsilon must be positive");
  }
  for (const auto& g : goals_) {
    if (g.size() != goals_.front().size()) {
      Fail(ErrorKind::kInvalidArgument, "goal embeddings differ in dimension");
    }
  }
}

RelayState RelayState::FromDemonstration(const Trajectory& demo,
                                         const SubgoalDecomposition& decomposition,
                                         RelayConfig config) {
  auto problems = CheckDecomposition(decomposition, demo.rows());
  if (!problems.empty()) {
    Fail(ErrorKind::kInvalidArgument, "invalid decomposition: " + problems.front());
  }
  std::vector<std::vector<double>> goals;
  for (FrameIndex g : decomposition.subgoals) {
    auto f = demo.frame(g);
    goals.emplace_back(f.begin(), f.end());
  }
  return RelayState(std::move(goals), decomposition.subgoals, decomposition.budgets,
                    config);
}

RelayState::StepResult RelayState::Step(std::span<const double> obs) {
  if (finished_) Fail(ErrorKind::kState, "relay already finished");
  if (obs.size() != goals_.front().size()) {
    Fail(ErrorKind::kInvalidArgument, "observation dimension mismatch");
  }
  ++steps_;
  StepResult r;
  r.goal_id = goal_ids_[current_];
  r.distance = L2Distance(obs, goals_[current_]);
  const auto budget = static_cast<double>(budgets_[current_]);
  const bool on_budget =
      !config_.budget_check ||
      std::fabs(static_cast<double>(steps_) - budget) < static_cast<double>(config_.delta);
  if (r.distance < config_.epsilon && on_budget) {
    r.switched = true;
    steps_ = 0;
    if (current_ + 1 == goals_.size()) {
      finished_ = true;
    } else {
      ++current_;
    }
  }
  r.ordinal = current_;
  return r;
}

}  // namespace uvd
