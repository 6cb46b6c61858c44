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

// Exercises the shared library through its C interface only.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "uvd/uvd.h"

namespace {

std::string Take(char* s) {
  std::string out = s ? s : "";
  uvd_string_free(s);
  return out;
}

uvd_trajectory* Line(size_t T, size_t K) {
  std::vector<double> v(T * K);
  for (size_t t = 0; t < T; ++t) {
    for (size_t k = 0; k < K; ++k) v[t * K + k] = static_cast<double>(t) * (k + 1);
  }
  uvd_trajectory* traj = nullptr;
  REQUIRE(uvd_trajectory_create(T, K, v.data(), &traj) == UVD_OK);
  return traj;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(uvd_status_name(UVD_OK)) == "ok");
  CHECK(std::string(uvd_version()).size() > 0);
  uvd_trajectory* traj = nullptr;
  const double bad[2] = {0.0, 1.0};
  CHECK(uvd_trajectory_create(1, 2, bad, &traj) == UVD_ERR_VALIDATION);
  CHECK(traj == nullptr);
  CHECK(std::string(uvd_last_error()).find("T") != std::string::npos);
  CHECK(uvd_trajectory_create(2, 1, bad, nullptr) == UVD_ERR_INVALID_ARGUMENT);
  CHECK(uvd_trajectory_load("/nonexistent/x.uvdt", UVD_FORMAT_AUTO, &traj) == UVD_ERR_IO);
  uvd_trajectory_free(nullptr);
  uvd_string_free(nullptr);
}

TEST_CASE("trajectory save and load") {
  uvd_trajectory* traj = Line(5, 3);
  CHECK(uvd_trajectory_rows(traj) == 5);
  CHECK(uvd_trajectory_cols(traj) == 3);
  CHECK(uvd_trajectory_data(traj)[14] == 12.0);
  const std::string bin = "capi_test.uvdt";
  const std::string csv = "capi_test.csv";
  REQUIRE(uvd_trajectory_save(traj, bin.c_str(), UVD_FORMAT_AUTO) == UVD_OK);
  REQUIRE(uvd_trajectory_save(traj, csv.c_str(), UVD_FORMAT_AUTO) == UVD_OK);
  for (const auto& path : {bin, csv}) {
    uvd_trajectory* back = nullptr;
    REQUIRE(uvd_trajectory_load(path.c_str(), UVD_FORMAT_AUTO, &back) == UVD_OK);
    for (size_t i = 0; i < 15; ++i) CHECK(uvd_trajectory_data(back)[i] == uvd_trajectory_data(traj)[i]);
    uvd_trajectory_free(back);
    std::remove(path.c_str());
  }
  uvd_trajectory* wrong = nullptr;
  CHECK(uvd_trajectory_save(traj, bin.c_str(), UVD_FORMAT_CSV) == UVD_OK);
  CHECK(uvd_trajectory_load(bin.c_str(), UVD_FORMAT_BINARY, &wrong) == UVD_ERR_FORMAT);
  std::remove(bin.c_str());
  uvd_trajectory_free(traj);
}

TEST_CASE("decompose, relabel and json") {
  uvd_trajectory* traj = Line(50, 2);
  uvd_decomposer_config cfg;
  uvd_decomposer_config_default(&cfg);
  CHECK(cfg.min_interval == 20);
  CHECK(cfg.bandwidth == 0.08);
  uvd_decomposition* d = nullptr;
  REQUIRE(uvd_decompose(traj, &cfg, &d) == UVD_OK);
  REQUIRE(uvd_decomposition_size(d) == 1);
  CHECK(uvd_decomposition_subgoals(d)[0] == 49);
  CHECK(uvd_decomposition_budgets(d)[0] == 50);

  char* line = nullptr;
  REQUIRE(uvd_decomposition_to_json(d, "line", 50, &cfg, 1, &line) == UVD_OK);
  const auto j = nlohmann::json::parse(Take(line));
  CHECK(j["labels"].size() == 50);
  uvd_decomposition* back = nullptr;
  size_t T = 0;
  REQUIRE(uvd_decomposition_from_json(j.dump().c_str(), &back, &T) == UVD_OK);
  CHECK(T == 50);
  CHECK(uvd_decomposition_subgoals(back)[0] == 49);
  uvd_decomposition_free(back);

  cfg.min_interval = 0;
  uvd_decomposition* none = nullptr;
  CHECK(uvd_decompose(traj, &cfg, &none) == UVD_ERR_INVALID_ARGUMENT);
  CHECK(none == nullptr);

  const size_t subgoals[] = {2, 4};
  uvd_decomposition* manual = nullptr;
  REQUIRE(uvd_decomposition_create(subgoals, 2, &manual) == UVD_OK);
  size_t labels[5];
  REQUIRE(uvd_relabel(manual, 5, labels) == UVD_OK);
  CHECK(std::vector<size_t>(labels, labels + 5) == std::vector<size_t>{2, 2, 2, 4, 4});
  CHECK(uvd_relabel(manual, 6, labels) == UVD_ERR_INVALID_ARGUMENT);
  const size_t unsorted[] = {4, 2};
  uvd_decomposition* bad = nullptr;
  CHECK(uvd_decomposition_create(unsorted, 2, &bad) == UVD_ERR_INVALID_ARGUMENT);
  REQUIRE(uvd_uniform_labels(5, 1, 0, labels) == UVD_OK);
  CHECK(std::vector<size_t>(labels, labels + 5) == std::vector<size_t>{1, 2, 3, 4, 4});
  uvd_decomposition* random = nullptr;
  REQUIRE(uvd_random_subgoals(100, 3, &random) == UVD_OK);
  CHECK(uvd_decomposition_subgoals(random)[uvd_decomposition_size(random) - 1] == 99);
  uvd_decomposition_free(random);
  uvd_decomposition_free(manual);
  uvd_decomposition_free(d);
  uvd_trajectory_free(traj);
}

TEST_CASE("rewards through the C API") {
  const double v[] = {0, 2, 4, 7, 10};
  uvd_trajectory* traj = nullptr;
  REQUIRE(uvd_trajectory_create(5, 1, v, &traj) == UVD_OK);
  const size_t subgoals[] = {2, 4};
  uvd_decomposition* d = nullptr;
  REQUIRE(uvd_decomposition_create(subgoals, 2, &d) == UVD_OK);
  uvd_reward_weights w;
  uvd_reward_weights_default(&w);
  double rewards[4];
  size_t switches[5];
  size_t n = 0;
  REQUIRE(uvd_shaped_rewards(traj, d, &w, rewards, switches, &n) == UVD_OK);
  CHECK(rewards[0] == doctest::Approx(2.5));
  CHECK(rewards[3] == doctest::Approx(11.5));
  CHECK(n == 2);
  CHECK(switches[1] == 4);
  REQUIRE(uvd_shaped_rewards(traj, nullptr, &w, rewards, nullptr, &n) == UVD_OK);
  CHECK(rewards[3] == doctest::Approx(5.0 * 0.3 + 6.0));
  char* json = nullptr;
  REQUIRE(uvd_shaped_rewards_json(traj, d, &w, &json) == UVD_OK);
  CHECK(nlohmann::json::parse(Take(json))["switches"] == nlohmann::json::array({2, 4}));
  double r = 0;
  REQUIRE(uvd_simple_reward(traj, 4, 1, &r) == UVD_OK);
  CHECK(r == 2.0);
  w.epsilon = 1.5;
  CHECK(uvd_shaped_rewards(traj, d, &w, rewards, nullptr, nullptr) == UVD_ERR_INVALID_ARGUMENT);

  const double flat[] = {0, 1, 1};
  uvd_trajectory* dup = nullptr;
  REQUIRE(uvd_trajectory_create(3, 1, flat, &dup) == UVD_OK);
  const size_t two[] = {1, 2};
  uvd_decomposition* d2 = nullptr;
  REQUIRE(uvd_decomposition_create(two, 2, &d2) == UVD_OK);
  uvd_reward_weights_default(&w);
  CHECK(uvd_shaped_rewards(dup, d2, &w, rewards, nullptr, nullptr) == UVD_ERR_DEGENERATE_SEGMENT);
  uvd_decomposition_free(d2);
  uvd_trajectory_free(dup);
  uvd_decomposition_free(d);
  uvd_trajectory_free(traj);
}

TEST_CASE("goal index and relay") {
  uvd_trajectory* a = Line(10, 2);
  const uvd_trajectory* trajs[] = {a};
  size_t labels[10];
  for (size_t t = 0; t < 10; ++t) labels[t] = t < 5 ? 4 : 9;
  const size_t* label_ptrs[] = {labels};
  uvd_goal_index* index = nullptr;
  REQUIRE(uvd_goal_index_build(trajs, label_ptrs, 1, &index) == UVD_OK);
  CHECK(uvd_goal_index_size(index) == 10);
  const double q[] = {6.1, 12.1};
  uvd_nearest hit;
  REQUIRE(uvd_goal_index_nearest(index, q, 2, &hit) == UVD_OK);
  CHECK(hit.entry == 6);
  CHECK(hit.frame == 9);
  CHECK(uvd_goal_index_nearest(index, q, 3, &hit) == UVD_ERR_INVALID_ARGUMENT);
  uvd_goal_index_free(index);

  const size_t subgoals[] = {4, 9};
  uvd_decomposition* d = nullptr;
  REQUIRE(uvd_decomposition_create(subgoals, 2, &d) == UVD_OK);
  uvd_relay_config rc;
  uvd_relay_config_default(&rc);
  CHECK(rc.epsilon == 0.2);
  CHECK(rc.delta == 2);
  uvd_relay* relay = nullptr;
  REQUIRE(uvd_relay_create(a, d, &rc, &relay) == UVD_OK);
  std::vector<size_t> at;
  uvd_relay_step step{};
  for (size_t t = 0; t < 10; ++t) {
    REQUIRE(uvd_relay_step_observation(relay, uvd_trajectory_data(a) + 2 * t, 2, &step) == UVD_OK);
    if (step.switched) at.push_back(t);
  }
  CHECK(at == std::vector<size_t>{4, 9});
  CHECK(step.finished);
  char* json = nullptr;
  REQUIRE(uvd_relay_step_to_json(9, &step, &json) == UVD_OK);
  CHECK(nlohmann::json::parse(Take(json))["goal_id"] == 9);
  CHECK(uvd_relay_step_observation(relay, uvd_trajectory_data(a), 2, &step) == UVD_ERR_STATE);
  uvd_relay_free(relay);
  uvd_decomposition_free(d);
  uvd_trajectory_free(a);
}

TEST_CASE("synth, bench and calibration") {
  const size_t b[] = {19, 39};
  uvd_synth_config sc{40, 3, b, 2, 0.0, 1.0, 5};
  uvd_trajectory* traj = nullptr;
  REQUIRE(uvd_synth_generate(&sc, &traj) == UVD_OK);
  CHECK(uvd_trajectory_rows(traj) == 40);
  uvd_trajectory_free(traj);
  sc.boundary_count = 1;
  CHECK(uvd_synth_generate(&sc, &traj) == UVD_ERR_INVALID_ARGUMENT);

  uvd_boundary_score s;
  const size_t p[] = {10, 20, 30};
  const size_t t[] = {11, 29};
  REQUIRE(uvd_score_boundaries(p, 3, t, 2, 2, &s) == UVD_OK);
  CHECK(s.f1 == doctest::Approx(0.8));

  uvd_suite* suite = nullptr;
  REQUIRE(uvd_suite_parse(R"({"configs": [{"id": "a", "T": 100, "K": 3, "boundaries": [49, 99]}]})",
                          &suite) == UVD_OK);
  CHECK(uvd_suite_size(suite) == 1);
  CHECK(std::string(uvd_suite_id(suite, 0)) == "a");
  uvd_decomposition* truth = nullptr;
  REQUIRE(uvd_suite_generate(suite, 0, &traj, &truth) == UVD_OK);
  CHECK(uvd_decomposition_subgoals(truth)[0] == 49);
  uvd_decomposition_free(truth);
  uvd_trajectory_free(traj);
  CHECK(uvd_suite_generate(suite, 1, &traj, nullptr) == UVD_ERR_INVALID_ARGUMENT);

  uvd_bench_options opts{};
  uvd_decomposer_config_default(&opts.decomposer);
  const uint64_t seeds[] = {1, 2};
  opts.tolerance = 2;
  opts.uniform_window = 4;
  opts.seeds = seeds;
  opts.seed_count = 2;
  opts.noise_sigma = -1;
  char* csv = nullptr;
  char* summary = nullptr;
  REQUIRE(uvd_bench_run(suite, &opts, &csv, &summary) == UVD_OK);
  CHECK(Take(csv).rfind("method,config_id,seed", 0) == 0);
  CHECK(nlohmann::json::parse(Take(summary))["mean_f1"]["uvd"] == 1.0);
  opts.uniform_window = 0;
  CHECK(uvd_bench_run(suite, &opts, nullptr, nullptr) == UVD_ERR_INVALID_ARGUMENT);

  const double grid[] = {0.0, 0.05};
  char* cal = nullptr;
  REQUIRE(uvd_calibrate_noise(suite, &opts.decomposer, grid, 2, seeds, 2, 3, 0.9, &cal) == UVD_OK);
  CHECK(nlohmann::json::parse(Take(cal))["grid_f1"].size() == 2);
  uvd_suite_free(suite);
  CHECK(uvd_suite_parse("[", &suite) == UVD_ERR_FORMAT);
}

TEST_CASE("chain environment") {
  uvd_chain_options o;
  uvd_chain_options_default(&o);
  CHECK(o.waypoint_count == 4);
  CHECK(o.grid_n == 9);
  uvd_trajectory* demo = nullptr;
  REQUIRE(uvd_chain_demo(&o, &demo) == UVD_OK);
  CHECK(uvd_trajectory_cols(demo) == 6);
  uvd_trajectory_free(demo);
  o.episodes = 50;
  const uint64_t seeds[] = {1};
  char* json = nullptr;
  REQUIRE(uvd_chain_experiment(&o, UVD_REWARD_FINAL_GOAL, seeds, 1, &json) == UVD_OK);
  const auto j = nlohmann::json::parse(Take(json));
  CHECK(j["mode"] == "final_goal");
  CHECK(j["per_seed"].size() == 1);
  o.waypoint_count = 0;
  CHECK(uvd_chain_demo(&o, &demo) == UVD_ERR_INVALID_ARGUMENT);
  o.waypoint_count = UVD_MAX_WAYPOINTS + 1;
  CHECK(uvd_chain_demo(&o, &demo) == UVD_ERR_INVALID_ARGUMENT);
}
