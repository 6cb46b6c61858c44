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

#include "uvd/serialize.hpp"

#include "json.hpp"

#include "uvd/error.hpp"

namespace uvd {

using nlohmann::json;

namespace {

json WeightsJson(const RewardWeights& w) {
  return {{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}, {"epsilon", w.epsilon}};
}

json Parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorKind::kFormat, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string DecompositionToJson(const std::string& id, std::size_t T,
                                const SubgoalDecomposition& d,
                                const DecomposerConfig& config,
                                const GoalLabeling* labels) {
  json j;
  j["id"] = id;
  j["T"] = T;
  j["subgoals"] = d.subgoals;
  j["budgets"] = d.budgets;
  j["config"] = {{"min_interval", config.min_interval},
                 {"bandwidth", config.smoother.bandwidth}};
  if (labels) j["labels"] = *labels;
  return j.dump();
}

DecompositionRecord DecompositionFromJson(const std::string& json_line) {
  const json j = Parse(json_line, "decomposition");
  DecompositionRecord r;
  try {
    r.id = j.value("id", std::string());
    r.T = j.at("T").get<std::size_t>();
    r.decomposition = MakeDecomposition(j.at("subgoals").get<std::vector<FrameIndex>>());
  } catch (const json::exception& e) {
    Fail(ErrorKind::kFormat, std::string("decomposition: ") + e.what());
  }
  return r;
}

std::string RewardTraceToJson(const RewardTrace& trace) {
  json j;
  j["rewards"] = trace.rewards;
  j["goal_at"] = trace.goal_at;
  j["switches"] = trace.switches;
  j["weights"] = WeightsJson(trace.weights);
  return j.dump();
}

std::string RelayStepToJson(std::size_t t, const RelayState::StepResult& step) {
  json j;
  j["t"] = t;
  j["goal_id"] = step.goal_id;
  j["distance"] = step.distance;
  j["switched"] = step.switched;
  return j.dump();
}

std::string NoiseCalibrationToJson(const NoiseCalibration& cal) {
  json j;
  j["sigma"] = cal.sigma;
  j["mean_f1"] = cal.mean_f1;
  j["tolerance"] = cal.tolerance;
  j["target_f1"] = cal.target_f1;
  j["grid"] = cal.grid;
  j["grid_f1"] = cal.grid_f1;
  return j.dump(2);
}

NoiseCalibration NoiseCalibrationFromJson(const std::string& text) {
  const json j = Parse(text, "noise calibration");
  NoiseCalibration cal;
  try {
    cal.sigma = j.at("sigma").get<double>();
    cal.mean_f1 = j.value("mean_f1", 0.0);
    cal.tolerance = j.at("tolerance").get<std::size_t>();
    cal.target_f1 = j.at("target_f1").get<double>();
    cal.grid = j.value("grid", std::vector<double>{});
    cal.grid_f1 = j.value("grid_f1", std::vector<double>{});
  } catch (const json::exception& e) {
    Fail(ErrorKind::kFormat, std::string("noise calibration: ") + e.what());
  }
  return cal;
}

std::string BenchSummaryToJson(const std::vector<BenchRow>& rows) {
  json j;
  std::vector<std::string> ids;
  for (const auto& r : rows) {
    if (ids.empty() || ids.back() != r.config_id) ids.push_back(r.config_id);
  }
  for (Method m : {Method::kUvd, Method::kRandom, Method::kUniform}) {
    j["mean_f1"][MethodName(m)] = MeanF1(rows, m);
    for (const auto& id : ids) j["per_config"][id][MethodName(m)] = MeanF1(rows, m, id);
  }
  return j.dump();
}

std::string ChainResultToJson(const ChainExperimentResult& result) {
  json j;
  j["mode"] = result.mode == RewardMode::kUvd ? "uvd" : "final_goal";
  j["success_rate"] = result.success_rate;
  j["completion_rate"] = result.completion_rate;
  j["demo_length"] = result.demo_length;
  j["demo_subgoals"] = result.demo_subgoals;
  json seeds = json::array();
  for (const auto& s : result.per_seed) {
    seeds.push_back({{"seed", s.seed}, {"success", s.success},
                     {"completion", s.completion}, {"steps", s.steps}});
  }
  j["per_seed"] = seeds;
  return j.dump();
}

}  // namespace uvd
