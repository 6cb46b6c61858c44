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

// Command-line front end. Exit codes: 0 success, 1 runtime failure,
// 2 usage or validation error.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "uvd/uvd.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void Die(int code, const std::string& message) { throw CliFailure{code, message}; }

void Check(uvd_status s, const std::string& context) {
  if (s == UVD_OK) return;
  Die(s == UVD_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRuntime,
      context + ": " + uvd_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using TrajPtr = std::unique_ptr<uvd_trajectory, Deleter<uvd_trajectory, uvd_trajectory_free>>;
using DecompPtr =
    std::unique_ptr<uvd_decomposition, Deleter<uvd_decomposition, uvd_decomposition_free>>;
using RelayPtr = std::unique_ptr<uvd_relay, Deleter<uvd_relay, uvd_relay_free>>;
using SuitePtr = std::unique_ptr<uvd_suite, Deleter<uvd_suite, uvd_suite_free>>;
using StrPtr = std::unique_ptr<char, Deleter<char, uvd_string_free>>;

std::string Take(char* s) { return std::string(StrPtr(s).get()); }

std::string Num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += static_cast<char>(c);
    } else if (c < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out + "\"";
}

template <typename T>
std::string Array(const T* v, std::size_t n) {
  std::string out = "[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + "]";
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) Die(kExitRuntime, "cannot open output " + path);
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
  void Line(const std::string& s) { out() << s << '\n'; }

 private:
  std::ofstream file_;
};

uvd_format ParseFormat(const std::string& s) {
  if (s == "binary") return UVD_FORMAT_BINARY;
  if (s == "csv") return UVD_FORMAT_CSV;
  return UVD_FORMAT_AUTO;
}

TrajPtr Load(const std::string& path, uvd_format format) {
  uvd_trajectory* t = nullptr;
  Check(uvd_trajectory_load(path.c_str(), format, &t), path);
  return TrajPtr(t);
}

bool IsTrajectoryFile(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".uvdt" || ext == ".bin" || ext == ".csv";
}

// Expands --in paths (files or directories) and --manifest files into an
// ordered list. Directory entries are sorted by name.
std::vector<std::string> ResolveInputs(const std::vector<std::string>& inputs,
                                       const std::string& manifest) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in, ec)) {
        if (e.is_regular_file() && IsTrajectoryFile(e.path())) found.push_back(e.path().string());
      }
      if (ec) Die(kExitRuntime, "cannot list " + in + ": " + ec.message());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  if (!manifest.empty()) {
    std::ifstream f(manifest);
    if (!f) Die(kExitRuntime, "cannot open manifest " + manifest);
    const fs::path base = fs::path(manifest).parent_path();
    std::string line;
    while (std::getline(f, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const fs::path p(line);
      out.push_back(p.is_absolute() ? p.string() : (base / p).string());
    }
  }
  if (out.empty()) Die(kExitUsage, "no input trajectories (use --in or --manifest)");
  return out;
}

struct BatchOptions {
  std::vector<std::string> inputs;
  std::string manifest;
  std::string out;
  std::string format = "auto";
  unsigned jobs = 1;
};

void AddBatchOptions(CLI::App* cmd, BatchOptions& b) {
  cmd->add_option("--in", b.inputs, "Trajectory file or directory (repeatable)");
  cmd->add_option("--manifest", b.manifest, "Text file listing trajectory paths, one per line");
  cmd->add_option("--out", b.out, "Output JSONL file (default: stdout)");
  cmd->add_option("--format", b.format, "Input format")
      ->check(CLI::IsMember({"auto", "binary", "csv"}))
      ->capture_default_str();
  cmd->add_option("--jobs", b.jobs, "Worker threads; output order follows input order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

// Runs `fn` over every input, concurrently when jobs > 1, and writes one
// line per success in input order. Failures go to stderr.
template <typename Fn>
int RunBatch(const BatchOptions& b, Fn fn) {
  const auto inputs = ResolveInputs(b.inputs, b.manifest);
  Sink sink(b.out);
  std::vector<std::optional<std::string>> lines(inputs.size());
  std::vector<std::string> errors(inputs.size());
  std::vector<int> codes(inputs.size(), 0);
  auto work = [&](std::size_t i) {
    try {
      lines[i] = fn(inputs[i]);
    } catch (const CliFailure& f) {
      errors[i] = f.message;
      codes[i] = f.code;
    } catch (const std::exception& e) {
      errors[i] = inputs[i] + ": " + e.what();
      codes[i] = kExitRuntime;
    }
  };
  const std::size_t workers = std::min<std::size_t>(b.jobs, inputs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < inputs.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < inputs.size(); i += workers) work(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  int code = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (lines[i]) {
      sink.Line(*lines[i]);
    } else {
      std::cerr << "error: " << errors[i] << '\n';
      code = std::max(code, codes[i]);
    }
  }
  return code;
}

struct DecomposerFlags {
  uvd_decomposer_config cfg;
  DecomposerFlags() { uvd_decomposer_config_default(&cfg); }
};

void AddDecomposerOptions(CLI::App* cmd, DecomposerFlags& d) {
  cmd->add_option("--min-interval", d.cfg.min_interval,
                  "Minimum frames between consecutive subgoals (>= 1)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--bandwidth", d.cfg.bandwidth,
                  "Gaussian kernel bandwidth on the normalized time axis: frame j of an "
                  "L-frame curve sits at j/(L-1), so the value is independent of length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

struct WeightFlags {
  uvd_reward_weights w;
  WeightFlags() { uvd_reward_weights_default(&w); }
};

void AddWeightOptions(CLI::App* cmd, WeightFlags& f) {
  cmd->add_option("--alpha", f.w.alpha, "Progress weight and clip bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--beta", f.w.beta, "Bonus per subgoal reached")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--gamma", f.w.gamma, "Bonus per step at the final subgoal")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--epsilon", f.w.epsilon, "Normalized reach threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

DecompPtr DecomposeOrUse(const uvd_trajectory* traj, const std::vector<std::size_t>& subgoals,
                         const uvd_decomposer_config& cfg, const std::string& context) {
  uvd_decomposition* d = nullptr;
  if (subgoals.empty()) {
    Check(uvd_decompose(traj, &cfg, &d), context);
  } else {
    Check(uvd_decomposition_create(subgoals.data(), subgoals.size(), &d), context);
  }
  return DecompPtr(d);
}

std::vector<std::uint64_t> SeedRange(std::size_t count, std::uint64_t first) {
  std::vector<std::uint64_t> s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = first + i;
  return s;
}

std::vector<std::pair<int, int>> ParseWaypoints(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    int x = 0;
    int y = 0;
    char comma = 0;
    std::stringstream is(item);
    if (!(is >> x >> comma >> y) || comma != ',' || !(is >> std::ws).eof()) {
      Die(kExitUsage, "bad waypoint '" + item + "' (expected x,y;x,y;...)");
    }
    out.emplace_back(x, y);
  }
  if (out.empty()) Die(kExitUsage, "no waypoints");
  if (out.size() > UVD_MAX_WAYPOINTS) Die(kExitUsage, "at most 16 waypoints");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgoal decomposition of embedding trajectories, shaped rewards, goal relay, "
               "and synthetic benchmarks."};
  app.require_subcommand(1);
  app.set_version_flag("--version", uvd_version());

  // decompose
  auto* dec = app.add_subcommand("decompose", "Decompose trajectories into subgoals (JSONL)");
  BatchOptions dec_batch;
  DecomposerFlags dec_flags;
  bool dec_labels = false;
  AddBatchOptions(dec, dec_batch);
  AddDecomposerOptions(dec, dec_flags);
  dec->add_flag("--labels", dec_labels, "Include the per-frame goal labels");

  // relabel
  auto* rel = app.add_subcommand("relabel", "Per-frame goal labels (JSONL)");
  BatchOptions rel_batch;
  DecomposerFlags rel_flags;
  std::string rel_method = "uvd";
  std::size_t rel_window = 0;
  std::uint64_t rel_seed = 0;
  AddBatchOptions(rel, rel_batch);
  AddDecomposerOptions(rel, rel_flags);
  rel->add_option("--method", rel_method, "uvd, uniform, or random")
      ->check(CLI::IsMember({"uvd", "uniform", "random"}))
      ->capture_default_str();
  rel->add_option("--window", rel_window, "Uniform window length; required for --method uniform")
      ->check(CLI::PositiveNumber);
  rel->add_option("--seed", rel_seed, "Seed for the uniform and random baselines")
      ->capture_default_str();

  // reward
  auto* rew = app.add_subcommand("reward", "Shaped reward trace of a trajectory (JSON)");
  std::string rew_in, rew_out, rew_format = "auto", rew_mode = "uvd";
  std::vector<std::size_t> rew_subgoals;
  DecomposerFlags rew_flags;
  WeightFlags rew_weights;
  rew->add_option("--in", rew_in, "Trajectory file")->required();
  rew->add_option("--out", rew_out, "Output file (default: stdout)");
  rew->add_option("--format", rew_format, "Input format")
      ->check(CLI::IsMember({"auto", "binary", "csv"}))
      ->capture_default_str();
  rew->add_option("--mode", rew_mode,
                  "uvd: subgoals from the decomposer (or --subgoals); final-goal: the last "
                  "frame only, beta 0")
      ->check(CLI::IsMember({"uvd", "final-goal"}))
      ->capture_default_str();
  rew->add_option("--subgoals", rew_subgoals, "Explicit subgoal frames, comma separated")
      ->delimiter(',');
  AddDecomposerOptions(rew, rew_flags);
  AddWeightOptions(rew, rew_weights);

  // relay
  auto* rly = app.add_subcommand("relay", "Run the goal-relay automaton over observations (JSONL)");
  std::string rly_demo, rly_in, rly_out, rly_format = "auto";
  std::vector<std::size_t> rly_subgoals;
  DecomposerFlags rly_flags;
  uvd_relay_config rly_cfg;
  uvd_relay_config_default(&rly_cfg);
  bool rly_no_budget = false;
  rly->add_option("--demo", rly_demo, "Demonstration trajectory supplying the subgoals")
      ->required();
  rly->add_option("--in", rly_in, "Observation trajectory (default: replay the demonstration)");
  rly->add_option("--out", rly_out, "Output JSONL file (default: stdout)");
  rly->add_option("--format", rly_format, "Input format")
      ->check(CLI::IsMember({"auto", "binary", "csv"}))
      ->capture_default_str();
  rly->add_option("--subgoals", rly_subgoals, "Explicit subgoal frames, comma separated")
      ->delimiter(',');
  rly->add_option("--epsilon", rly_cfg.epsilon, "Switch distance, raw embedding units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rly->add_option("--delta", rly_cfg.delta, "Budget tolerance in steps")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  rly->add_flag("--no-budget-check", rly_no_budget, "Switch on distance alone");
  AddDecomposerOptions(rly, rly_flags);

  // synth
  auto* syn = app.add_subcommand("synth", "Generate a synthetic piecewise-linear trajectory");
  std::string syn_out, syn_format = "auto", syn_suite, syn_id;
  std::size_t syn_T = 0, syn_K = 2;
  std::vector<std::size_t> syn_boundaries;
  double syn_noise = 0.0, syn_scale = 1.0;
  std::uint64_t syn_seed = 0;
  syn->add_option("--out", syn_out, "Output trajectory file")->required();
  syn->add_option("--format", syn_format, "Output format")
      ->check(CLI::IsMember({"auto", "binary", "csv"}))
      ->capture_default_str();
  syn->add_option("--suite", syn_suite, "Suite JSON; with --id, generate that config");
  syn->add_option("--id", syn_id, "Config id within --suite");
  syn->add_option("--T", syn_T, "Frames");
  syn->add_option("--K", syn_K, "Embedding dimension (>= 2)")->capture_default_str();
  syn->add_option("--boundaries", syn_boundaries, "Segment ends, comma separated, last = T-1")
      ->delimiter(',');
  syn->add_option("--noise", syn_noise, "Gaussian noise sigma")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  syn->add_option("--anchor-scale", syn_scale, "Distance between consecutive anchors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  syn->add_option("--seed", syn_seed, "Noise seed")->capture_default_str();

  // bench
  auto* ben = app.add_subcommand("bench", "Boundary F1 of UVD against Random and Uniform baselines");
  std::string ben_suite, ben_out, ben_summary, ben_cal_out;
  DecomposerFlags ben_flags;
  std::size_t ben_tolerance = 2, ben_window = 0, ben_seeds = 10;
  double ben_noise = -1.0;
  bool ben_calibrate = false;
  std::vector<double> ben_grid{0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.175, 0.2, 0.25, 0.3};
  std::size_t ben_cal_tolerance = 3;
  double ben_target = 0.9;
  ben->add_option("--suite", ben_suite, "Suite JSON {\"configs\": [...]}")->required();
  ben->add_option("--uniform-window", ben_window,
                  "Window of the Uniform baseline in frames; required, no default")
      ->required()
      ->check(CLI::PositiveNumber);
  ben->add_option("--out", ben_out, "Per-run CSV output (default: stdout)");
  ben->add_option("--summary", ben_summary, "Write mean F1 per method as JSON");
  ben->add_option("--tolerance", ben_tolerance, "Boundary match tolerance in frames")
      ->capture_default_str();
  ben->add_option("--seeds", ben_seeds, "Number of seeds, 0..N-1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ben->add_option("--noise", ben_noise, "Override every config's noise sigma");
  ben->add_flag("--calibrate", ben_calibrate,
                "Also find the largest grid sigma with UVD mean F1 >= --target-f1");
  ben->add_option("--grid", ben_grid, "Calibration sigma grid, ascending")
      ->delimiter(',')
      ->capture_default_str();
  ben->add_option("--cal-tolerance", ben_cal_tolerance, "Calibration match tolerance")
      ->capture_default_str();
  ben->add_option("--target-f1", ben_target, "Calibration F1 target")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  ben->add_option("--cal-out", ben_cal_out, "Calibration JSON output (default: stderr)");
  AddDecomposerOptions(ben, ben_flags);

  // env-demo
  auto* env = app.add_subcommand("env-demo", "Chain-world experiment: UVD vs final-goal reward");
  uvd_chain_options chain;
  uvd_chain_options_default(&chain);
  std::string env_waypoints, env_mode = "both", env_out, env_demo_out;
  std::size_t env_seeds = 10;
  bool env_sweep = false;
  env->add_option("--grid", chain.grid_n, "Grid side length")->capture_default_str();
  env->add_option("--waypoints", env_waypoints,
                  "Ordered waypoints 'x,y;x,y;...' (default 7,0;1,0;6,0;2,0)");
  env->add_option("--flag-scale", chain.flag_scale, "Embedding weight of each progress flag")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  env->add_option("--horizon", chain.horizon, "Episode step limit (0: 3x shortest completion)")
      ->capture_default_str();
  env->add_option("--episodes", chain.episodes, "Training episodes per seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  env->add_option("--min-interval", chain.decomposer.min_interval,
                  "Decomposer min interval for the short demo")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  env->add_option("--bandwidth", chain.decomposer.bandwidth,
                  "Decomposer bandwidth on the normalized time axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  env->add_option("--seeds", env_seeds, "Number of seeds, 0..N-1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  env->add_option("--mode", env_mode, "uvd, final-goal, or both")
      ->check(CLI::IsMember({"uvd", "final-goal", "both"}))
      ->capture_default_str();
  env->add_option("--out", env_out, "Output JSONL file (default: stdout)");
  env->add_option("--demo-out", env_demo_out, "Also save the scripted demonstration");
  env->add_flag("--sweep", env_sweep,
                "Sweep flag scale x bandwidth x episodes and print one line per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*dec) {
      return RunBatch(dec_batch, [&](const std::string& path) {
        const auto traj = Load(path, ParseFormat(dec_batch.format));
        uvd_decomposition* d = nullptr;
        Check(uvd_decompose(traj.get(), &dec_flags.cfg, &d), path);
        const DecompPtr owned(d);
        char* json = nullptr;
        Check(uvd_decomposition_to_json(d, path.c_str(), uvd_trajectory_rows(traj.get()),
                                        &dec_flags.cfg, dec_labels ? 1 : 0, &json),
              path);
        return Take(json);
      });
    }

    if (*rel) {
      if (rel_method == "uniform" && rel_window == 0) {
        Die(kExitUsage, "--method uniform requires --window");
      }
      return RunBatch(rel_batch, [&](const std::string& path) {
        const auto traj = Load(path, ParseFormat(rel_batch.format));
        const std::size_t T = uvd_trajectory_rows(traj.get());
        std::vector<std::size_t> labels(T);
        DecompPtr d;
        if (rel_method == "uniform") {
          Check(uvd_uniform_labels(T, rel_window, rel_seed, labels.data()), path);
        } else {
          uvd_decomposition* raw = nullptr;
          Check(rel_method == "uvd" ? uvd_decompose(traj.get(), &rel_flags.cfg, &raw)
                                    : uvd_random_subgoals(T, rel_seed, &raw),
                path);
          d.reset(raw);
          Check(uvd_relabel(d.get(), T, labels.data()), path);
        }
        std::string line = "{\"id\":" + Quote(path) + ",\"T\":" + std::to_string(T) +
                           ",\"method\":" + Quote(rel_method);
        if (d) {
          line += ",\"subgoals\":" +
                  Array(uvd_decomposition_subgoals(d.get()), uvd_decomposition_size(d.get()));
        } else {
          line += ",\"window\":" + std::to_string(rel_window);
        }
        return line + ",\"labels\":" + Array(labels.data(), labels.size()) + "}";
      });
    }

    if (*rew) {
      const auto traj = Load(rew_in, ParseFormat(rew_format));
      DecompPtr d;
      if (rew_mode == "uvd") d = DecomposeOrUse(traj.get(), rew_subgoals, rew_flags.cfg, rew_in);
      char* json = nullptr;
      Check(uvd_shaped_rewards_json(traj.get(), d.get(), &rew_weights.w, &json), rew_in);
      Sink(rew_out).Line(Take(json));
      return 0;
    }

    if (*rly) {
      const auto demo = Load(rly_demo, ParseFormat(rly_format));
      const auto obs = rly_in.empty() ? nullptr : Load(rly_in, ParseFormat(rly_format));
      const uvd_trajectory* stream = obs ? obs.get() : demo.get();
      const auto d = DecomposeOrUse(demo.get(), rly_subgoals, rly_flags.cfg, rly_demo);
      rly_cfg.budget_check = rly_no_budget ? 0 : 1;
      uvd_relay* raw = nullptr;
      Check(uvd_relay_create(demo.get(), d.get(), &rly_cfg, &raw), rly_demo);
      const RelayPtr relay(raw);
      Sink sink(rly_out);
      const std::size_t rows = uvd_trajectory_rows(stream);
      const std::size_t cols = uvd_trajectory_cols(stream);
      const double* data = uvd_trajectory_data(stream);
      for (std::size_t t = 0; t < rows; ++t) {
        uvd_relay_step step;
        Check(uvd_relay_step_observation(relay.get(), data + t * cols, cols, &step), "relay");
        char* json = nullptr;
        Check(uvd_relay_step_to_json(t, &step, &json), "relay");
        sink.Line(Take(json));
        if (step.finished) break;
      }
      return 0;
    }

    if (*syn) {
      TrajPtr traj;
      std::vector<std::size_t> truth;
      if (!syn_suite.empty()) {
        uvd_suite* raw = nullptr;
        Check(uvd_suite_load(syn_suite.c_str(), &raw), syn_suite);
        const SuitePtr suite(raw);
        std::size_t i = 0;
        while (i < uvd_suite_size(suite.get()) && syn_id != uvd_suite_id(suite.get(), i)) ++i;
        if (i == uvd_suite_size(suite.get())) Die(kExitUsage, "no config '" + syn_id + "' in suite");
        uvd_trajectory* t = nullptr;
        uvd_decomposition* b = nullptr;
        Check(uvd_suite_generate(suite.get(), i, &t, &b), syn_id);
        traj.reset(t);
        const DecompPtr bounds(b);
        truth.assign(uvd_decomposition_subgoals(b),
                     uvd_decomposition_subgoals(b) + uvd_decomposition_size(b));
      } else {
        if (syn_T == 0) Die(kExitUsage, "--T is required without --suite");
        if (syn_boundaries.empty()) syn_boundaries = {syn_T - 1};
        const uvd_synth_config cfg{syn_T,    syn_K,     syn_boundaries.data(), syn_boundaries.size(),
                                   syn_noise, syn_scale, syn_seed};
        uvd_trajectory* t = nullptr;
        Check(uvd_synth_generate(&cfg, &t), "synth");
        traj.reset(t);
        truth = syn_boundaries;
      }
      Check(uvd_trajectory_save(traj.get(), syn_out.c_str(), ParseFormat(syn_format)), syn_out);
      std::cout << "{\"out\":" << Quote(syn_out) << ",\"T\":" << uvd_trajectory_rows(traj.get())
                << ",\"K\":" << uvd_trajectory_cols(traj.get())
                << ",\"boundaries\":" << Array(truth.data(), truth.size()) << "}\n";
      return 0;
    }

    if (*ben) {
      uvd_suite* raw = nullptr;
      Check(uvd_suite_load(ben_suite.c_str(), &raw), ben_suite);
      const SuitePtr suite(raw);
      const auto seeds = SeedRange(ben_seeds, 0);
      const uvd_bench_options opts{ben_flags.cfg, ben_tolerance, ben_window,
                                   seeds.data(),  seeds.size(),  ben_noise};
      char* csv = nullptr;
      char* summary = nullptr;
      Check(uvd_bench_run(suite.get(), &opts, &csv, &summary), "bench");
      const std::string csv_text = Take(csv);
      const std::string summary_text = Take(summary);
      Sink(ben_out).out() << csv_text;
      if (!ben_summary.empty()) Sink(ben_summary).Line(summary_text);
      if (ben_calibrate) {
        char* cal = nullptr;
        Check(uvd_calibrate_noise(suite.get(), &ben_flags.cfg, ben_grid.data(), ben_grid.size(),
                                  seeds.data(), seeds.size(), ben_cal_tolerance, ben_target, &cal),
              "calibrate");
        const std::string cal_text = Take(cal);
        if (ben_cal_out.empty()) {
          std::cerr << cal_text << '\n';
        } else {
          Sink(ben_cal_out).Line(cal_text);
        }
      }
      return 0;
    }

    if (*env) {
      if (!env_waypoints.empty()) {
        const auto wps = ParseWaypoints(env_waypoints);
        chain.waypoint_count = wps.size();
        for (std::size_t i = 0; i < wps.size(); ++i) {
          chain.waypoints[i][0] = wps[i].first;
          chain.waypoints[i][1] = wps[i].second;
        }
      }
      const auto seeds = SeedRange(env_seeds, 0);
      Sink sink(env_out);
      auto run = [&](const uvd_chain_options& o, uvd_reward_mode mode) {
        char* json = nullptr;
        Check(uvd_chain_experiment(&o, mode, seeds.data(), seeds.size(), &json), "env-demo");
        return Take(json);
      };
      if (!env_demo_out.empty()) {
        uvd_trajectory* t = nullptr;
        Check(uvd_chain_demo(&chain, &t), "env-demo");
        const TrajPtr demo(t);
        Check(uvd_trajectory_save(demo.get(), env_demo_out.c_str(), UVD_FORMAT_AUTO),
              env_demo_out);
      }
      if (env_sweep) {
        for (double fs : {0.2, 0.25, 0.3, 0.35, 0.4}) {
          for (double bw : {0.02, 0.05, 0.08}) {
            for (std::size_t episodes : {500, 2000}) {
              uvd_chain_options o = chain;
              o.flag_scale = fs;
              o.decomposer.bandwidth = bw;
              o.episodes = episodes;
              sink.Line("{\"flag_scale\":" + Num(fs) + ",\"bandwidth\":" + Num(bw) +
                        ",\"episodes\":" + std::to_string(episodes) +
                        ",\"uvd\":" + run(o, UVD_REWARD_UVD) +
                        ",\"final_goal\":" + run(o, UVD_REWARD_FINAL_GOAL) + "}");
            }
          }
        }
        return 0;
      }
      if (env_mode != "final-goal") sink.Line(run(chain, UVD_REWARD_UVD));
      if (env_mode != "uvd") sink.Line(run(chain, UVD_REWARD_FINAL_GOAL));
      return 0;
    }
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
