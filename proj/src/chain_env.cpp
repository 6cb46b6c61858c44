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

#include "uvd/chain_env.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>

#include "uvd/error.hpp"
#include "uvd/rng.hpp"

namespace uvd {
namespace {

std::size_t Manhattan(Cell a, Cell b) {
  return static_cast<std::size_t>(std::abs(a.x - b.x) + std::abs(a.y - b.y));
}

bool InGrid(Cell c, int n) { return c.x >= 0 && c.y >= 0 && c.x < n && c.y < n; }

std::vector<double> Embed(const ChainEnvConfig& cfg, const ChainState& state) {
  std::vector<double> obs(2 + cfg.waypoints.size(), 0.0);
  const double n = static_cast<double>(cfg.grid_n);
  obs[0] = state.pos.x / n;
  obs[1] = state.pos.y / n;
  for (std::size_t j = 0; j < cfg.waypoints.size(); ++j) {
    obs[2 + j] = (state.flags >> j) & 1u ? cfg.flag_scale : 0.0;
  }
  return obs;
}

}  // namespace

std::size_t ChainState::flags_set() const {
  return static_cast<std::size_t>(std::popcount(flags));
}

std::size_t ShortestCompletion(const ChainEnvConfig& cfg) {
  std::size_t total = 0;
  Cell at = cfg.start;
  for (Cell w : cfg.waypoints) {
    total += Manhattan(at, w);
    at = w;
  }
  return total;
}

void CheckChainEnvConfig(const ChainEnvConfig& cfg) {
  auto bad = [](const std::string& msg) {
    Fail(ErrorKind::kInvalidArgument, "chain env: " + msg);
  };
  if (cfg.grid_n < 2) bad("grid_n must be >= 2");
  if (cfg.waypoints.empty()) bad("no waypoints");
  if (cfg.waypoints.size() > 16) bad("at most 16 waypoints");
  if (!InGrid(cfg.start, cfg.grid_n)) bad("start outside grid");
  for (std::size_t i = 0; i < cfg.waypoints.size(); ++i) {
    if (!InGrid(cfg.waypoints[i], cfg.grid_n)) bad("waypoint outside grid");
    for (std::size_t j = 0; j < i; ++j) {
      if (cfg.waypoints[i] == cfg.waypoints[j]) bad("waypoints must be distinct");
    }
  }
  if (cfg.waypoints.front() == cfg.start) bad("first waypoint must differ from start");
  if (!(cfg.flag_scale > 0.0)) bad("flag_scale must be positive");
  if (cfg.horizon < ShortestCompletion(cfg)) {
    bad("horizon " + std::to_string(cfg.horizon) + " shorter than the shortest completion (" +
        std::to_string(ShortestCompletion(cfg)) + " moves)");
  }
  // Only prefix flag patterns are reachable.
  std::set<std::vector<double>> seen;
  for (std::size_t f = 0; f <= cfg.waypoints.size(); ++f) {
    for (int x = 0; x < cfg.grid_n; ++x) {
      for (int y = 0; y < cfg.grid_n; ++y) {
        ChainState s{{x, y}, static_cast<std::uint32_t>((1u << f) - 1u), 0, false};
        if (!seen.insert(Embed(cfg, s)).second) bad("observation embedding not injective");
      }
    }
  }
}

ChainEnv::ChainEnv(ChainEnvConfig cfg) : cfg_(std::move(cfg)) {
  CheckChainEnvConfig(cfg_);
}

ChainState ChainEnv::Reset() const { return ChainState{cfg_.start, 0, 0, false}; }

bool ChainEnv::Complete(const ChainState& state) const {
  return state.flags_set() == cfg_.waypoints.size();
}

ChainState ChainEnv::Step(const ChainState& state, Action action) const {
  if (state.done) Fail(ErrorKind::kState, "chain env: step on finished episode");
  ChainState next = state;
  switch (action) {
    case Action::kUp: next.pos.y = std::min(next.pos.y + 1, cfg_.grid_n - 1); break;
    case Action::kDown: next.pos.y = std::max(next.pos.y - 1, 0); break;
    case Action::kLeft: next.pos.x = std::max(next.pos.x - 1, 0); break;
    case Action::kRight: next.pos.x = std::min(next.pos.x + 1, cfg_.grid_n - 1); break;
    case Action::kStay: break;
  }
  const std::size_t j = next.flags_set();
  if (j < cfg_.waypoints.size() && next.pos == cfg_.waypoints[j]) {
    next.flags |= 1u << j;
  }
  ++next.steps;
  next.done = Complete(next) || next.steps >= cfg_.horizon;
  return next;
}

std::vector<double> ChainEnv::Observe(const ChainState& state) const {
  return Embed(cfg_, state);
}

ChainEnvConfig DefaultChainTask() {
  ChainEnvConfig cfg;
  cfg.grid_n = 9;
  cfg.waypoints = {{7, 0}, {1, 0}, {6, 0}, {2, 0}};
  cfg.flag_scale = 0.25;
  cfg.horizon = 3 * ShortestCompletion(cfg);
  return cfg;
}

LearnerConfig DefaultChainLearner() {
  LearnerConfig learner;
  learner.decomposer.min_interval = 3;
  return learner;
}

Trajectory ScriptedDemonstration(const ChainEnv& task) {
  ChainEnvConfig unbounded = task.config();
  unbounded.horizon = std::numeric_limits<std::size_t>::max();
  const ChainEnv env(unbounded);
  ChainState s = env.Reset();
  std::vector<std::vector<double>> frames{env.Observe(s)};
  const auto& waypoints = env.config().waypoints;
  for (std::size_t j = 0; j < waypoints.size(); ++j) {
    const Cell w = waypoints[j];
    Action last = Action::kStay;
    while (!(s.pos == w)) {
      last = s.pos.x < w.x   ? Action::kRight
             : s.pos.x > w.x ? Action::kLeft
             : s.pos.y < w.y ? Action::kUp
                             : Action::kDown;
      s = env.Step(s, last);
      frames.push_back(env.Observe(s));
    }
    // Overshoot intermediate waypoints by one cell when the wall allows it.
    if (j + 1 < waypoints.size()) {
      const ChainState past = env.Step(s, last);
      if (!(past.pos == s.pos)) {
        s = past;
        frames.push_back(env.Observe(s));
      }
    }
  }
  return Trajectory::FromRows(frames, "chain-env demonstration");
}

namespace {

class QTable {
 public:
  QTable(int n, std::size_t flag_levels, std::size_t ordinals)
      : n_(n), flag_levels_(flag_levels),
        values_(static_cast<std::size_t>(n * n) * flag_levels * ordinals * kActionCount, 0.0) {}

  double* row(const ChainState& s, std::size_t ordinal) {
    const std::size_t cell = static_cast<std::size_t>(s.pos.x * n_ + s.pos.y);
    const std::size_t key =
        (ordinal * flag_levels_ + s.flags_set()) * static_cast<std::size_t>(n_ * n_) + cell;
    return values_.data() + key * kActionCount;
  }

 private:
  int n_;
  std::size_t flag_levels_;
  std::vector<double> values_;
};

int Greedy(const double* q) {
  return static_cast<int>(std::max_element(q, q + kActionCount) - q);
}

// Greedy with uniform random tie-breaking, for training.
int GreedyRandomTies(const double* q, Rng& rng) {
  const double best = *std::max_element(q, q + kActionCount);
  int ties[kActionCount];
  int count = 0;
  for (int a = 0; a < kActionCount; ++a) {
    if (q[a] == best) ties[count++] = a;
  }
  return ties[rng.UniformBelow(static_cast<std::uint64_t>(count))];
}

ChainSeedResult TrainAndEvaluate(const ChainEnv& env, ShapedRewardTracker tracker,
                                 const LearnerConfig& learner, std::uint64_t seed) {
  Rng rng(seed);
  QTable q(env.config().grid_n, env.config().waypoints.size() + 1, tracker.goal_count());
  const std::size_t episodes = learner.episodes;
  for (std::size_t ep = 0; ep < episodes; ++ep) {
    const double frac = episodes > 1 ? static_cast<double>(ep) / static_cast<double>(episodes - 1) : 1.0;
    const double explore =
        learner.epsilon_start + (learner.epsilon_end - learner.epsilon_start) * frac;
    tracker.Reset();
    ChainState s = env.Reset();
    std::vector<double> obs = env.Observe(s);
    while (!s.done) {
      const std::size_t ordinal = tracker.ordinal();
      double* qs = q.row(s, ordinal);
      const int a = rng.Uniform01() < explore
                        ? static_cast<int>(rng.UniformBelow(kActionCount))
                        : GreedyRandomTies(qs, rng);
      const ChainState next = env.Step(s, static_cast<Action>(a));
      std::vector<double> next_obs = env.Observe(next);
      const auto r = tracker.Advance(obs, next_obs);
      double target = r.reward;
      // Completion is terminal; running out of horizon is a truncation.
      if (!env.Complete(next)) {
        const double* qn = q.row(next, tracker.ordinal());
        target += learner.discount * *std::max_element(qn, qn + kActionCount);
      }
      qs[a] += learner.learning_rate * (target - qs[a]);
      s = next;
      obs = std::move(next_obs);
    }
  }

  tracker.Reset();
  ChainState s = env.Reset();
  std::vector<double> obs = env.Observe(s);
  while (!s.done) {
    const int a = Greedy(q.row(s, tracker.ordinal()));
    s = env.Step(s, static_cast<Action>(a));
    auto next_obs = env.Observe(s);
    tracker.Advance(obs, next_obs);
    obs = std::move(next_obs);
  }
  ChainSeedResult result;
  result.seed = seed;
  result.success = env.Complete(s);
  result.completion = static_cast<double>(s.flags_set()) /
                      static_cast<double>(env.config().waypoints.size());
  result.steps = s.steps;
  return result;
}

}  // namespace

ChainExperimentResult RunChainExperiment(const ChainEnvConfig& cfg, RewardMode mode,
                                         const LearnerConfig& learner,
                                         const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) Fail(ErrorKind::kInvalidArgument, "no seeds");
  if (learner.episodes < 1) Fail(ErrorKind::kInvalidArgument, "episodes must be >= 1");
  if (!(learner.learning_rate > 0.0 && learner.learning_rate <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "learning rate must lie in (0, 1]");
  }
  if (!(learner.discount >= 0.0 && learner.discount <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "discount must lie in [0, 1]");
  }
  const ChainEnv env(cfg);
  const Trajectory demo = ScriptedDemonstration(env);

  ChainExperimentResult result;
  result.mode = mode;
  result.demo_length = demo.rows();
  SubgoalDecomposition decomposition;
  RewardWeights weights = learner.weights;
  if (mode == RewardMode::kUvd) {
    decomposition = Decompose(demo, learner.decomposer);
  } else {
    decomposition = MakeDecomposition({demo.rows() - 1});
    weights.beta = 0.0;
  }
  result.demo_subgoals = decomposition.subgoals;
  const auto tracker = ShapedRewardTracker::FromDemonstration(demo, decomposition, weights);

  for (std::uint64_t seed : seeds) {
    result.per_seed.push_back(TrainAndEvaluate(env, tracker, learner, seed ^ cfg.seed));
  }
  double success = 0.0;
  double completion = 0.0;
  for (const auto& r : result.per_seed) {
    success += r.success ? 1.0 : 0.0;
    completion += r.completion;
  }
  result.success_rate = success / static_cast<double>(seeds.size());
  result.completion_rate = completion / static_cast<double>(seeds.size());
  return result;
}

}  // namespace uvd
