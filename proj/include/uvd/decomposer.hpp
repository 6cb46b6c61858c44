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

#ifndef UVD_DECOMPOSER_HPP
#define UVD_DECOMPOSER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "uvd/smoother.hpp"
#include "uvd/trajectory.hpp"

namespace uvd {

struct DecomposerConfig {
  std::size_t min_interval = 20;
  SmootherConfig smoother;
};

void CheckDecomposerConfig(const DecomposerConfig& config);

// L2 distances of frames [0, goal] to frame `goal`, before and after smoothing.
struct DistanceCurve {
  std::vector<double> raw;
  std::vector<double> smoothed;
  FrameIndex goal_index = 0;
};

DistanceCurve ComputeDistanceCurve(const Trajectory& traj, FrameIndex end,
                                   const SmootherConfig& smoother);

// Strict order-1 local maxima: 0 < i < L-1 with both neighbors strictly
// smaller. Plateaus and endpoints never qualify. Increasing order.
std::vector<FrameIndex> FindMonotonicityBreaks(std::span<const double> curve);

// Subgoal frames in chronological order, always ending at T-1.
// budgets[0] = subgoals[0] + 1 and budgets[i] = subgoals[i] - subgoals[i-1],
// so the budgets sum to T.
struct SubgoalDecomposition {
  std::vector<FrameIndex> subgoals;
  std::vector<std::size_t> budgets;

  std::size_t size() const { return subgoals.size(); }
  FrameIndex final_frame() const { return subgoals.back(); }

  friend bool operator==(const SubgoalDecomposition&,
                         const SubgoalDecomposition&) = default;
};

// Builds the budget column for an arbitrary strictly increasing subgoal list.
SubgoalDecomposition MakeDecomposition(std::vector<FrameIndex> subgoals);

// Checks ordering, range and the final-frame rule against a length-T
// trajectory; `min_interval` > 0 additionally enforces the gap rule.
std::vector<std::string> CheckDecomposition(const SubgoalDecomposition& d,
                                            std::size_t T,
                                            std::size_t min_interval = 0);

// Recursive subgoal discovery.
//
// Starting from goal g = T-1, each round smooths the distance curve of frames
// [0, g] to frame g and looks for its monotonicity breaks. Breaks closer than
// min_interval + 1 frames to g are ignored. If any remain, the frame just
// before the latest one becomes the next goal; otherwise the recursion ends.
// The loop only runs while g > min_interval.
SubgoalDecomposition Decompose(const Trajectory& traj,
                               const DecomposerConfig& config);

}  // namespace uvd

#endif  // UVD_DECOMPOSER_HPP
