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
#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "uvd/decomposer.hpp"
#include "uvd/reward.hpp"

using uvd::MakeDecomposition;
using uvd::RewardWeights;
using uvd::Trajectory;
using uvd_test::RelClose;

namespace {

RewardWeights Progress(double alpha) { return {alpha, 0.0, 0.0, 0.2}; }

}  // namespace

TEST_CASE("simple reward") {
  const Trajectory t(3, 2, {0, 0, 3, 4, 3, 4});
  CHECK(uvd::SimpleReward(t, 2, 1) == 5.0);
  CHECK(uvd::SimpleReward(t, 2, 2) == 0.0);
  const Trajectory sym(3, 1, {-1, 1, 0});
  CHECK(uvd::SimpleReward(sym, 2, 1) == 0.0);
  CHECK(uvd_test::KindOf([&] { uvd::SimpleReward(t, 3, 1); }) == uvd::ErrorKind::kInvalidArgument);
  CHECK(uvd_test::KindOf([&] { uvd::SimpleReward(t, 0, 0); }) == uvd::ErrorKind::kInvalidArgument);
  CHECK(uvd_test::KindOf([&] { uvd::SimpleReward(t, 0, 3); }) == uvd::ErrorKind::kInvalidArgument);

  const Trajectory r = uvd_test::RandomTrajectory(50, 6, 4);
  for (std::size_t t_ = 1; t_ < 50; ++t_) {
    const double want = uvd_test::Dist(r, t_ - 1, 20) - uvd_test::Dist(r, t_, 20);
    CHECK(RelClose(uvd::SimpleReward(r, 20, t_), want, 1e-9));
  }
}

TEST_CASE("normalized distance") {
  const Trajectory t = uvd_test::RandomTrajectory(30, 4, 5);
  const auto d = MakeDecomposition({9, 19, 29});
  CHECK(uvd::NormalizedDistance(t, d, 0, 0) == 1.0);
  CHECK(uvd::NormalizedDistance(t, d, 9, 1) == 1.0);
  CHECK(uvd::NormalizedDistance(t, d, 19, 1) == 0.0);
  CHECK(RelClose(uvd::NormalizedDistance(t, d, 12, 2),
                 uvd_test::Dist(t, 12, 29) / uvd_test::Dist(t, 19, 29), 1e-12));
  for (double c : {1e-3, 7.0, 1e3}) {
    CHECK(RelClose(uvd::NormalizedDistance(t.Scaled(c), d, 12, 2),
                   uvd::NormalizedDistance(t, d, 12, 2), 1e-12));
  }
  const Trajectory flat(4, 1, {0, 1, 1, 2});
  CHECK(uvd_test::KindOf([&] { uvd::NormalizedDistance(flat, MakeDecomposition({1, 2, 3}), 2, 1); }) ==
        uvd::ErrorKind::kDegenerateSegment);
}

TEST_CASE("hand-computed trace") {
  // 1-D walk 0 -> 10 with subgoals at 2 (x=4) and 4 (x=10).
  const Trajectory t(5, 1, {0, 2, 4, 7, 10});
  const auto trace = uvd::ShapedRewardTrace(t, MakeDecomposition({2, 4}), RewardWeights{});
  // Step 1: d goes 1 -> 0.5, progress 5*0.5 = 2.5.
  // Step 2: 0.5 -> 0 reaches subgoal 0: 2.5 + beta 3.
  // Step 3: segment 1 normalizer 6, 1 -> 0.5: 2.5.
  // Step 4: 0.5 -> 0, final subgoal: 2.5 + beta + gamma.
  const std::vector<double> want{2.5, 5.5, 2.5, 11.5};
  REQUIRE(trace.rewards.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(trace.rewards[i] == doctest::Approx(want[i]).epsilon(1e-12));
  CHECK(trace.goal_at == std::vector<std::size_t>{2, 2, 4, 4});
  CHECK(trace.switches == std::vector<std::size_t>{2, 4});
}

TEST_CASE("progress is clipped after weighting") {
  // One large jump: normalized drop of 1 in a single step, alpha 5.
  const Trajectory t(3, 1, {0, 0.5, 10});
  const auto trace = uvd::ShapedRewardTrace(t, MakeDecomposition({2}), RewardWeights{5, 0, 0, 0.2});
  CHECK(trace.rewards[0] == doctest::Approx(0.25));
  CHECK(trace.rewards[1] == doctest::Approx(4.75));
  // Moving away two normalizer lengths would give -2 alpha, clipped to -alpha.
  const Trajectory back(3, 1, {0, -20, 10});
  const auto away = uvd::ShapedRewardTrace(back, MakeDecomposition({2}), RewardWeights{5, 0, 0, 0.2});
  CHECK(away.rewards[0] == -5.0);
  for (double r : uvd::ShapedRewardTrace(uvd_test::RandomTrajectory(100, 3, 8),
                                         uvd::MakeDecomposition({30, 60, 99}), RewardWeights{})
                      .rewards) {
    CHECK((r >= -5.0 && r <= 5.0 + 3.0 + 6.0));
  }
}

TEST_CASE("telescoping sum") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const Trajectory t = uvd_test::RandomWalk(200, 5, seed, 0.05);
    const auto trace = uvd::ShapedRewardTrace(t, MakeDecomposition({199}), Progress(5.0));
    const double sum = std::accumulate(trace.rewards.begin(), trace.rewards.end(), 0.0);
    // d-bar runs from 1 at frame 0 to 0 at the goal.
    CHECK(RelClose(sum, 5.0, 1e-9));

    // Within-segment spans of a multi-subgoal trace.
    const auto d = MakeDecomposition({49, 120, 199});
    const auto multi = uvd::ShapedRewardTrace(t, d, Progress(2.0));
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::size_t from = i == 0 ? 0 : d.subgoals[i - 1];
      const std::size_t to = d.subgoals[i];
      if (multi.switches.size() != d.size() || multi.switches[i] != to) continue;
      const std::size_t begin = i == 0 ? 0 : multi.switches[i - 1];
      double span = 0.0;
      for (std::size_t s = begin + 1; s <= to; ++s) span += multi.rewards[s - 1];
      const double start = uvd_test::Dist(t, begin, to) / uvd_test::Dist(t, from, to);
      CHECK(RelClose(span, 2.0 * start, 1e-9));
    }
  }
}

TEST_CASE("shaped rewards are scale invariant and the simple reward scales") {
  const Trajectory t = uvd_test::RandomWalk(150, 8, 21, 0.1);
  const auto d = MakeDecomposition({40, 95, 149});
  const auto base = uvd::ShapedRewardTrace(t, d, RewardWeights{});
  for (double c : {1e-3, 1.0, 1e3}) {
    const Trajectory s = t.Scaled(c);
    const auto scaled = uvd::ShapedRewardTrace(s, d, RewardWeights{});
    CHECK(scaled.switches == base.switches);
    CHECK(scaled.goal_at == base.goal_at);
    for (std::size_t i = 0; i < base.rewards.size(); ++i) {
      CHECK(RelClose(scaled.rewards[i], base.rewards[i], 1e-9));
    }
    for (std::size_t i = 1; i < t.rows(); ++i) {
      CHECK(RelClose(uvd::SimpleReward(s, 95, i), c * uvd::SimpleReward(t, 95, i), 1e-12));
    }
  }
}

TEST_CASE("own demonstration switches at every subgoal and ends with gamma") {
  const Trajectory t = uvd_test::RandomWalk(300, 4, 13, 0.2);
  const auto d = uvd::Decompose(t, {});
  const auto trace = uvd::ShapedRewardTrace(t, d, RewardWeights{});
  REQUIRE(trace.switches.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(trace.switches[i] <= d.subgoals[i]);
  CHECK(trace.rewards.back() >= 6.0 - 5.0);
  CHECK(trace.goal_at.back() == 299);
}

TEST_CASE("final-goal trace is the single-goal trace without beta") {
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const Trajectory t = uvd_test::RandomWalk(80, 3, seed, 0.3);
    RewardWeights w;
    const auto a = uvd::FinalGoalRewardTrace(t, w);
    w.beta = 0.0;
    const auto b = uvd::ShapedRewardTrace(t, MakeDecomposition({79}), w);
    REQUIRE(a.rewards.size() == b.rewards.size());
    for (std::size_t i = 0; i < a.rewards.size(); ++i) {
      CHECK(std::fabs(a.rewards[i] - b.rewards[i]) <= 1e-12);
    }
    CHECK(a.switches == b.switches);
    CHECK(a.switches.size() <= 1);
  }
}

TEST_CASE("static steps give zero progress") {
  const Trajectory t(4, 2, {0, 0, 1, 1, 1, 1, 2, 2});
  const auto trace = uvd::ShapedRewardTrace(t, MakeDecomposition({3}), RewardWeights{});
  CHECK(trace.rewards[1] == 0.0);
}

TEST_CASE("tracker errors and weights") {
  const Trajectory dup(3, 1, {0, 1, 1});
  CHECK(uvd_test::KindOf([&] { uvd::ShapedRewardTrace(dup, MakeDecomposition({1, 2}), {}); }) ==
        uvd::ErrorKind::kDegenerateSegment);
  const Trajectory t(3, 1, {0, 1, 2});
  for (RewardWeights bad : {RewardWeights{-1, 3, 6, 0.2}, RewardWeights{5, 3, 6, 0.0},
                            RewardWeights{5, 3, 6, 1.0}, RewardWeights{5, double{NAN}, 6, 0.2}}) {
    CHECK(uvd_test::KindOf([&] { uvd::ShapedRewardTrace(t, MakeDecomposition({2}), bad); }) ==
          uvd::ErrorKind::kInvalidArgument);
  }
  CHECK(uvd_test::KindOf([&] { uvd::ShapedRewardTrace(t, MakeDecomposition({1}), {}); }) ==
        uvd::ErrorKind::kInvalidArgument);
  auto tracker = uvd::ShapedRewardTracker::FromDemonstration(t, MakeDecomposition({1, 2}), {});
  const std::vector<double> a{0.0}, b{1.0}, c{2.0};
  CHECK(tracker.Advance(a, b).switched);
  CHECK(tracker.ordinal() == 1);
  const auto last = tracker.Advance(b, c);
  CHECK(last.switched);
  CHECK(tracker.complete());
  // Staying at the final goal keeps paying gamma, never beta again.
  const auto stay = tracker.Advance(c, c);
  CHECK(!stay.switched);
  CHECK(stay.reward == 6.0);
  tracker.Reset();
  CHECK(tracker.ordinal() == 0);
  CHECK(uvd_test::KindOf([&] { tracker.Advance(std::vector<double>{0, 0}, b); }) ==
        uvd::ErrorKind::kInvalidArgument);
}
