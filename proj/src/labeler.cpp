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

#include "uvd/labeler.hpp"

#include <algorithm>
#include <numeric>

#include "uvd/error.hpp"
#include "uvd/rng.hpp"

namespace uvd {

GoalLabeling Relabel(const SubgoalDecomposition& decomposition, std::size_t T) {
  auto problems = CheckDecomposition(decomposition, T);
  if (!problems.empty()) {
    Fail(ErrorKind::kInvalidArgument,
         "decomposition inconsistent with T=" + std::to_string(T) + ": " +
             problems.front());
  }
  GoalLabeling labels(T);
  std::size_t k = 0;
  for (std::size_t t = 0; t < T; ++t) {
    while (decomposition.subgoals[k] < t) ++k;
    labels[t] = decomposition.subgoals[k];
  }
  return labels;
}

GoalLabeling UniformLabels(std::size_t T, std::size_t window,
                           std::uint64_t seed) {
  if (window < 1) Fail(ErrorKind::kInvalidArgument, "window must be >= 1");
  if (T < 1) Fail(ErrorKind::kInvalidArgument, "T must be >= 1");
  Rng rng(seed);
  GoalLabeling labels(T);
  for (std::size_t t = 0; t + 1 < T; ++t) {
    const std::size_t hi = std::min(t + window, T - 1);
    labels[t] = t + 1 + rng.UniformBelow(hi - t);
  }
  labels[T - 1] = T - 1;
  return labels;
}

std::vector<FrameIndex> RandomSubgoals(std::size_t T, std::uint64_t seed) {
  if (T < 6) {
    Fail(ErrorKind::kInvalidArgument,
         "random subgoals need T >= 6, got " + std::to_string(T));
  }
  Rng rng(seed);
  const std::size_t count = 3 + rng.UniformBelow(3);
  // Partial Fisher-Yates over [0, T-2].
  std::vector<FrameIndex> pool(T - 1);
  std::iota(pool.begin(), pool.end(), FrameIndex{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.UniformBelow(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<FrameIndex> out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(out.begin(), out.end());
  out.push_back(T - 1);
  return out;
}

}  // namespace uvd
