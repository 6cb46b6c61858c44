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

#ifndef UVD_SERIALIZE_HPP
#define UVD_SERIALIZE_HPP

// JSON output formats. Every function returns one compact JSON object with
// no trailing newline, suitable for newline-delimited streams.

#include <string>
#include <vector>

#include "uvd/chain_env.hpp"
#include "uvd/decomposer.hpp"
#include "uvd/goal_inference.hpp"
#include "uvd/labeler.hpp"
#include "uvd/reward.hpp"
#include "uvd/synth.hpp"

namespace uvd {

// {"id", "T", "subgoals", "budgets", "config": {"min_interval", "bandwidth"}}
// plus "labels" when `labels` is non-null.
std::string DecompositionToJson(const std::string& id, std::size_t T,
                                const SubgoalDecomposition& d,
                                const DecomposerConfig& config,
                                const GoalLabeling* labels = nullptr);

// Inverse of DecompositionToJson (reads id, T, subgoals; budgets recomputed).
struct DecompositionRecord {
  std::string id;
  std::size_t T = 0;
  SubgoalDecomposition decomposition;
};
DecompositionRecord DecompositionFromJson(const std::string& json_line);

// {"rewards", "goal_at", "switches", "weights": {"alpha", "beta", "gamma", "epsilon"}}
std::string RewardTraceToJson(const RewardTrace& trace);

// {"t", "goal_id", "distance", "switched"}
std::string RelayStepToJson(std::size_t t, const RelayState::StepResult& step);

std::string NoiseCalibrationToJson(const NoiseCalibration& cal);
NoiseCalibration NoiseCalibrationFromJson(const std::string& text);

// Per-method mean F1, overall and per config.
std::string BenchSummaryToJson(const std::vector<BenchRow>& rows);

std::string ChainResultToJson(const ChainExperimentResult& result);

}  // namespace uvd

#endif  // UVD_SERIALIZE_HPP
