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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "support.hpp"
#include "uvd/goal_inference.hpp"

using uvd::GoalIndex;
using uvd::MakeDecomposition;
using uvd::RelayConfig;
using uvd::RelayState;
using uvd::Trajectory;

namespace {

struct Dataset {
  std::vector<Trajectory> trajs;
  std::vector<uvd::GoalLabeling> labels;
  std::vector<GoalIndex::LabeledTrajectory> view;

  void Finish() {
    for (std::size_t i = 0; i < trajs.size(); ++i) view.push_back({&trajs[i], &labels[i]});
  }
};

Dataset RandomDataset(std::size_t n, std::size_t T, std::size_t K, std::uint32_t seed) {
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    d.trajs.push_back(uvd_test::RandomTrajectory(T, K, seed + static_cast<std::uint32_t>(i)));
    d.labels.push_back(uvd::Relabel(MakeDecomposition({T / 2, T - 1}), T));
  }
  d.Finish();
  return d;
}

// Exhaustive scan with a plain squared-distance sum.
std::size_t BruteNearest(const Dataset& d, std::span<const double> q) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_entry = 0;
  std::size_t e = 0;
  for (const auto& t : d.trajs) {
    for (std::size_t r = 0; r < t.rows(); ++r, ++e) {
      double sum = 0.0;
      for (std::size_t k = 0; k < q.size(); ++k) sum += (q[k] - t.frame(r)[k]) * (q[k] - t.frame(r)[k]);
      if (sum < best) {
        best = sum;
        best_entry = e;
      }
    }
  }
  return best_entry;
}

}  // namespace

TEST_CASE("nearest matches exhaustive search") {
  const Dataset d = RandomDataset(5, 40, 7, 100);
  const GoalIndex index = GoalIndex::Build(d.view);
  CHECK(index.size() == 200);
  CHECK(index.dim() == 7);
  std::mt19937 gen(5);
  std::normal_distribution<double> n01;
  for (int q = 0; q < 300; ++q) {
    std::vector<double> query(7);
    for (double& v : query) v = n01(gen);
    const auto hit = index.Nearest(query);
    const std::size_t want = BruteNearest(d, query);
    CHECK(hit.entry == want);
    const std::size_t traj = want / 40;
    const std::size_t frame = want % 40;
    CHECK(hit.goal.trajectory == traj);
    CHECK(hit.goal.frame == d.labels[traj][frame]);
    CHECK(hit.distance == doctest::Approx(std::sqrt([&] {
            double s = 0;
            for (std::size_t k = 0; k < 7; ++k) {
              s += (query[k] - d.trajs[traj].frame(frame)[k]) * (query[k] - d.trajs[traj].frame(frame)[k]);
            }
            return s;
          }())));
    for (std::size_t k = 0; k < 7; ++k) {
      CHECK(hit.embedding[k] == d.trajs[traj].frame(d.labels[traj][frame])[k]);
    }
  }
  // Querying with a stored frame returns that frame at distance zero.
  const auto self = index.Nearest(d.trajs[3].frame(11));
  CHECK(self.distance == 0.0);
  CHECK(self.entry == 3 * 40 + 11);
}

TEST_CASE("ties go to the earliest entry") {
  Dataset d;
  d.trajs.push_back(Trajectory(3, 1, {1, -1, 5}));
  d.trajs.push_back(Trajectory(2, 1, {-1, 1}));
  d.labels = {{2, 2, 2}, {1, 1}};
  d.Finish();
  const GoalIndex index = GoalIndex::Build(d.view);
  CHECK(index.Nearest(std::vector<double>{0.0}).entry == 0);
  CHECK(index.Nearest(std::vector<double>{-1.0}).entry == 1);
  CHECK(index.Nearest(std::vector<double>{1.0}).entry == 0);
  CHECK(index.Nearest(std::vector<double>{4.0}).goal == uvd::GoalRef{0, 2});
}

TEST_CASE("index build and query errors") {
  CHECK(uvd_test::KindOf([] { GoalIndex::Build({}); }) == uvd::ErrorKind::kInvalidArgument);
  Dataset d;
  d.trajs.push_back(Trajectory(2, 1, {0, 1}));
  d.trajs.push_back(Trajectory(2, 2, {0, 1, 2, 3}));
  d.labels = {{1, 1}, {1, 1}};
  d.Finish();
  CHECK(uvd_test::KindOf([&] { GoalIndex::Build(d.view); }) == uvd::ErrorKind::kInvalidArgument);
  d.view.pop_back();
  d.labels[0] = {1};
  CHECK(uvd_test::KindOf([&] { GoalIndex::Build(d.view); }) == uvd::ErrorKind::kInvalidArgument);
  d.labels[0] = {1, 2};
  CHECK(uvd_test::KindOf([&] { GoalIndex::Build(d.view); }) == uvd::ErrorKind::kInvalidArgument);
  d.labels[0] = {1, 1};
  const GoalIndex index = GoalIndex::Build(d.view);
  CHECK(uvd_test::KindOf([&] { index.Nearest(std::vector<double>{0, 0}); }) ==
        uvd::ErrorKind::kInvalidArgument);
  const GoalIndex empty;
  CHECK(uvd_test::KindOf([&] { empty.Nearest(std::vector<double>{0}); }) == uvd::ErrorKind::kState);
}

TEST_CASE("relay replays its own demonstration") {
  // Straight segments with unit spacing, so a small epsilon only fires on
  // the subgoal frames themselves.
  std::vector<double> data;
  const std::vector<std::size_t> subgoals{9, 24, 30, 49};
  double x = 0.0;
  double y = 0.0;
  for (std::size_t t = 0; t < 50; ++t) {
    data.push_back(x);
    data.push_back(y);
    if (t <= 24) {
      x += 1.0;
    } else {
      y += 1.0;
    }
  }
  const Trajectory demo(50, 2, data);
  const auto d = MakeDecomposition(subgoals);
  for (bool check : {true, false}) {
    RelayState relay = RelayState::FromDemonstration(demo, d, {0.5, 2, check});
    std::vector<std::size_t> switched_at;
    for (std::size_t t = 0; t < 50; ++t) {
      const auto r = relay.Step(demo.frame(t));
      if (r.switched) switched_at.push_back(t);
      CHECK(r.ordinal == relay.current());
    }
    CHECK(switched_at == subgoals);
    CHECK(relay.finished());
    CHECK(uvd_test::KindOf([&] { relay.Step(demo.frame(0)); }) == uvd::ErrorKind::kState);
  }
}

TEST_CASE("relay with an epsilon that always fires") {
  const Trajectory demo = uvd_test::RandomTrajectory(40, 3, 17);
  const auto d = MakeDecomposition({9, 19, 39});
  const double huge = 1e9;

  // Budget check on: each switch lands on the first step within delta of the budget.
  RelayState gated = RelayState::FromDemonstration(demo, d, {huge, 3, true});
  std::vector<std::size_t> at;
  for (std::size_t t = 0; !gated.finished(); ++t) {
    if (gated.Step(demo.frame(t % 40)).switched) at.push_back(t);
  }
  // Budgets 10, 10, 20; the first step with |h - B| < 3 is h = B - 2.
  CHECK(at == std::vector<std::size_t>{7, 15, 33});

  // Budget check off: every observation switches.
  RelayState free_ = RelayState::FromDemonstration(demo, d, {huge, 2, false});
  for (std::size_t i = 0; i < 3; ++i) CHECK(free_.Step(demo.frame(0)).switched);
  CHECK(free_.finished());
}

TEST_CASE("relay with a tiny epsilon never fires off the goals") {
  const Trajectory demo = uvd_test::RandomTrajectory(30, 4, 3);
  RelayState relay = RelayState::FromDemonstration(demo, MakeDecomposition({14, 29}), {1e-12, 100, true});
  for (std::size_t t = 0; t < 30; ++t) {
    const auto r = relay.Step(demo.frame(t));
    CHECK(r.switched == (t == 14 || t == 29));
    CHECK(r.goal_id == (t <= 14 ? 14u : 29u));
    if (r.switched) CHECK(r.distance == 0.0);
  }
  // Off-budget arrival does not switch.
  RelayState strict = RelayState::FromDemonstration(demo, MakeDecomposition({14, 29}), {1e-12, 1, true});
  CHECK(!strict.Step(demo.frame(14)).switched);
  CHECK(strict.steps_since_switch() == 1);
}

TEST_CASE("relay construction errors") {
  CHECK(uvd_test::KindOf([] { RelayState({}, {}, {}, {}); }) == uvd::ErrorKind::kInvalidArgument);
  CHECK(uvd_test::KindOf([] { RelayState({{0.0}}, {0}, {1}, {0.0, 2, true}); }) ==
        uvd::ErrorKind::kInvalidArgument);
  CHECK(uvd_test::KindOf([] { RelayState({{0.0}, {0.0, 1.0}}, {0, 1}, {1, 1}, {}); }) ==
        uvd::ErrorKind::kInvalidArgument);
  CHECK(uvd_test::KindOf([] { RelayState({{0.0}}, {0, 1}, {1}, {}); }) ==
        uvd::ErrorKind::kInvalidArgument);
  RelayState ok({{0.0}}, {0}, {1}, {});
  CHECK(uvd_test::KindOf([&] { ok.Step(std::vector<double>{0.0, 0.0}); }) ==
        uvd::ErrorKind::kInvalidArgument);
}

TEST_CASE("relay never fires on noisy observations with epsilon near zero") {
  const Trajectory demo = uvd_test::RandomWalk(60, 5, 8, 0.1);
  const auto d = MakeDecomposition({19, 39, 59});
  std::mt19937 gen(2);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (bool check : {true, false}) {
    RelayState relay = RelayState::FromDemonstration(demo, d, {1e-9, 2, check});
    for (std::size_t t = 0; t < 60; ++t) {
      std::vector<double> obs(demo.frame(t).begin(), demo.frame(t).end());
      for (double& v : obs) v += noise(gen);
      CHECK(!relay.Step(obs).switched);
    }
    CHECK(relay.current() == 0);
  }
}

TEST_CASE("final-goal relay is a single goal without the budget check") {
  const Trajectory demo = uvd_test::RandomWalk(30, 2, 4, 0.5);
  RelayState relay = RelayState::FromDemonstration(demo, MakeDecomposition({29}), {1e-6, 2, false});
  // Arriving early at the final frame still finishes.
  CHECK(relay.Step(demo.frame(29)).switched);
  CHECK(relay.finished());
}
