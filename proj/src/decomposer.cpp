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

#include "uvd/decomposer.hpp"

#include <algorithm>

#include "uvd/error.hpp"

namespace uvd {

void CheckDecomposerConfig(const DecomposerConfig& config) {
  if (config.min_interval < 1) {
    Fail(ErrorKind::kInvalidArgument, "min_interval must be >= 1");
  }
  CheckSmootherConfig(config.smoother);
}

DistanceCurve ComputeDistanceCurve(const Trajectory& traj, FrameIndex end,
                                   const SmootherConfig& smoother) {
  if (end >= traj.rows()) {
    Fail(ErrorKind::kInvalidArgument,
         "goal frame " + std::to_string(end) + " out of range for T=" +
             std::to_string(traj.rows()));
  }
  DistanceCurve curve;
  curve.goal_index = end;
  curve.raw.resize(end + 1);
  const auto goal = traj.frame(end);
  for (FrameIndex s = 0; s <= end; ++s) {
    curve.raw[s] = L2Distance(traj.frame(s), goal);
  }
  curve.smoothed = SmoothCurve(curve.raw, smoother);
  return curve;
}

std::vector<FrameIndex> FindMonotonicityBreaks(std::span<const double> curve) {
  std::vector<FrameIndex> out;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    if (curve[i - 1] < curve[i] && curve[i] > curve[i + 1]) out.push_back(i);
  }
  return out;
}

SubgoalDecomposition MakeDecomposition(std::vector<FrameIndex> subgoals) {
  SubgoalDecomposition d;
  d.budgets.reserve(subgoals.size());
  for (std::size_t i = 0; i < subgoals.size(); ++i) {
    if (i > 0 && subgoals[i] <= subgoals[i - 1]) {
      Fail(ErrorKind::kInvalidArgument, "subgoals must be strictly increasing");
    }
    d.budgets.push_back(i == 0 ? subgoals[0] + 1 : subgoals[i] - subgoals[i - 1]);
  }
  d.subgoals = std::move(subgoals);
  return d;
}

std::vector<std::string> CheckDecomposition(const SubgoalDecomposition& d,
                                            std::size_t T,
                                            std::size_t min_interval) {
  std::vector<std::string> out;
  if (d.subgoals.empty()) {
    out.push_back("no subgoals");
    return out;
  }
  if (d.budgets.size() != d.subgoals.size()) {
    out.push_back("budget count differs from subgoal count");
  }
  if (d.subgoals.back() + 1 != T) {
    out.push_back("last subgoal " + std::to_string(d.subgoals.back()) +
                  " is not T-1 for T=" + std::to_string(T));
  }
  for (std::size_t i = 0; i < d.subgoals.size(); ++i) {
    if (d.subgoals[i] >= T) {
      out.push_back("subgoal " + std::to_string(d.subgoals[i]) + " out of range");
    }
    if (i > 0) {
      if (d.subgoals[i] <= d.subgoals[i - 1]) {
        out.push_back("subgoals not strictly increasing at ordinal " +
                      std::to_string(i));
      } else if (min_interval > 0 &&
                 d.subgoals[i] - d.subgoals[i - 1] <= min_interval) {
        out.push_back("gap at ordinal " + std::to_string(i) +
                      " not greater than min_interval");
      }
    }
    if (i < d.budgets.size()) {
      const std::size_t expected =
          i == 0 ? d.subgoals[0] + 1 : d.subgoals[i] - d.subgoals[i - 1];
      if (d.budgets[i] != expected) {
        out.push_back("budget mismatch at ordinal " + std::to_string(i));
      }
    }
  }
  return out;
}

SubgoalDecomposition Decompose(const Trajectory& traj,
                               const DecomposerConfig& config) {
  CheckDecomposerConfig(config);
  FrameIndex goal = traj.rows() - 1;
  std::vector<FrameIndex> found{goal};
  while (goal > config.min_interval) {
    // Smoothing is redone on every prefix: its time axis depends on length.
    const auto curve = ComputeDistanceCurve(traj, goal, config.smoother);
    const auto breaks = FindMonotonicityBreaks(curve.smoothed);
    auto latest = std::find_if(breaks.rbegin(), breaks.rend(), [&](FrameIndex e) {
      return goal - e > config.min_interval;
    });
    if (latest == breaks.rend()) break;
    goal = *latest - 1;
    found.push_back(goal);
  }
  std::reverse(found.begin(), found.end());
  return MakeDecomposition(std::move(found));
}

}  // namespace uvd
