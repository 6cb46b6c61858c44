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

#ifndef UVD_LABELER_HPP
#define UVD_LABELER_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uvd/decomposer.hpp"

namespace uvd {

// labels[t] is the goal frame assigned to timestep t.
using GoalLabeling = std::vector<FrameIndex>;

// labels[t] = first subgoal at or after t. A subgoal frame labels itself.
GoalLabeling Relabel(const SubgoalDecomposition& decomposition, std::size_t T);

// Uniform-window baseline: labels[t] drawn uniformly from
// {t+1, ..., min(t+window, T-1)}; labels[T-1] = T-1.
GoalLabeling UniformLabels(std::size_t T, std::size_t window,
                           std::uint64_t seed);

// Random-subgoal baseline: 3, 4 or 5 distinct frames from [0, T-2], sorted,
// then T-1 appended. Requires T >= 6.
std::vector<FrameIndex> RandomSubgoals(std::size_t T, std::uint64_t seed);

}  // namespace uvd

#endif  // UVD_LABELER_HPP
