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

#include "uvd/synth.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"

#include "uvd/error.hpp"
#include "uvd/labeler.hpp"
#include "uvd/rng.hpp"

namespace uvd {
namespace {

// splitmix64 finalizer; decorrelates derived seeds.
std::uint64_t Mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SynthConfig WithRun(const SynthConfig& cfg, std::uint64_t seed, double noise) {
  SynthConfig c = cfg;
  c.seed = Mix(cfg.seed, seed);
  if (noise >= 0.0) c.noise_sigma = noise;
  return c;
}

}  // namespace

void CheckSynthConfig(const SynthConfig& cfg) {
  auto bad = [&](const std::string& msg) {
    Fail(ErrorKind::kInvalidArgument,
         "synth config" + (cfg.id.empty() ? std::string() : " " + cfg.id) + ": " + msg);
  };
  if (cfg.T < 2) bad("T must be >= 2");
  if (cfg.K < 2) bad("K must be >= 2");
  if (cfg.boundaries.empty()) bad("no boundaries");
  if (cfg.boundaries.back() + 1 != cfg.T) bad("last boundary must be T-1");
  if (cfg.boundaries.front() < 1) bad("first boundary must be >= 1");
  for (std::size_t i = 1; i < cfg.boundaries.size(); ++i) {
    if (cfg.boundaries[i] < cfg.boundaries[i - 1] + 2) {
      bad("consecutive boundaries must be at least 2 frames apart");
    }
  }
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) {
    bad("noise_sigma must be finite and >= 0");
  }
  if (!(cfg.anchor_scale > 0.0) || !std::isfinite(cfg.anchor_scale)) {
    bad("anchor_scale must be positive");
  }
}

SynthResult GenerateSynthetic(const SynthConfig& cfg) {
  CheckSynthConfig(cfg);
  const std::size_t m = cfg.boundaries.size();
  const double drift = 0.1 * cfg.anchor_scale;
  const double swing = std::sqrt(cfg.anchor_scale * cfg.anchor_scale - drift * drift);
  std::vector<std::vector<double>> anchors(m + 1, std::vector<double>(cfg.K, 0.0));
  for (std::size_t j = 0; j <= m; ++j) {
    anchors[j][0] = (j % 2 == 1) ? swing : 0.0;
    anchors[j][1] = static_cast<double>(j) * drift;
  }

  std::vector<double> values(cfg.T * cfg.K, 0.0);
  std::copy(anchors[0].begin(), anchors[0].end(), values.begin());
  FrameIndex start = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    const FrameIndex end = cfg.boundaries[j - 1];
    const double n = static_cast<double>(end - start);
    for (FrameIndex t = start + 1; t <= end; ++t) {
      const double frac = static_cast<double>(t - start) / n;
      for (std::size_t k = 0; k < cfg.K; ++k) {
        const double a = anchors[j - 1][k];
        const double b = anchors[j][k];
        values[t * cfg.K + k] = t == end ? b : a + (b - a) * frac;
      }
    }
    start = end;
  }
  if (cfg.noise_sigma > 0.0) {
    Rng rng(cfg.seed);
    for (double& v : values) v += cfg.noise_sigma * rng.Normal();
  }
  return {Trajectory(cfg.T, cfg.K, std::move(values),
                     "synth:" + cfg.id + ":seed=" + std::to_string(cfg.seed)),
          cfg.boundaries};
}

BoundaryScore ScoreBoundaries(const std::vector<FrameIndex>& predicted,
                              const std::vector<FrameIndex>& truth,
                              std::size_t tolerance) {
  BoundaryScore s;
  if (predicted.empty() && truth.empty()) return {1.0, 1.0, 1.0, 0};
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < predicted.size() && j < truth.size()) {
    const FrameIndex p = predicted[i];
    const FrameIndex t = truth[j];
    const std::size_t gap = p > t ? p - t : t - p;
    if (gap <= tolerance) {
      ++s.matched;
      ++i;
      ++j;
    } else if (p < t) {
      ++i;
    } else {
      ++j;
    }
  }
  const double tp = static_cast<double>(s.matched);
  s.precision = predicted.empty() ? 0.0 : tp / static_cast<double>(predicted.size());
  s.recall = truth.empty() ? 0.0 : tp / static_cast<double>(truth.size());
  s.f1 = s.precision + s.recall > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

const char* MethodName(Method m) {
  switch (m) {
    case Method::kUvd: return "uvd";
    case Method::kRandom: return "random";
    case Method::kUniform: return "uniform";
  }
  return "?";
}

std::vector<BenchRow> RunBaselineComparison(const std::vector<SynthConfig>& suite,
                                            const BenchOptions& options) {
  CheckDecomposerConfig(options.decomposer);
  if (options.uniform_window < 1) {
    Fail(ErrorKind::kInvalidArgument, "uniform baseline window must be >= 1");
  }
  if (options.seeds.empty()) Fail(ErrorKind::kInvalidArgument, "no seeds");
  std::vector<BenchRow> rows;
  for (std::size_t c = 0; c < suite.size(); ++c) {
    for (std::uint64_t seed : options.seeds) {
      const auto run = WithRun(suite[c], seed, options.noise_sigma);
      const auto synth = GenerateSynthetic(run);
      const std::size_t T = run.T;

      const auto uvd = Decompose(synth.trajectory, options.decomposer).subgoals;
      const auto random = RandomSubgoals(T, Mix(seed, 2 * c + 1));
      const auto labels = UniformLabels(T, options.uniform_window, Mix(seed, 2 * c + 2));
      const std::set<FrameIndex> distinct(labels.begin(), labels.end());
      const std::vector<FrameIndex> uniform(distinct.begin(), distinct.end());

      rows.push_back({Method::kUvd, run.id, seed,
                      ScoreBoundaries(uvd, synth.boundaries, options.tolerance)});
      rows.push_back({Method::kRandom, run.id, seed,
                      ScoreBoundaries(random, synth.boundaries, options.tolerance)});
      rows.push_back({Method::kUniform, run.id, seed,
                      ScoreBoundaries(uniform, synth.boundaries, options.tolerance)});
    }
  }
  return rows;
}

double MeanF1(const std::vector<BenchRow>& rows, Method method,
              const std::string& config_id) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (r.method != method) continue;
    if (!config_id.empty() && r.config_id != config_id) continue;
    sum += r.score.f1;
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

std::string BenchRowsToCsv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "method,config_id,seed,precision,recall,f1\n";
  for (const auto& r : rows) {
    out << MethodName(r.method) << ',' << r.config_id << ',' << r.seed << ','
        << r.score.precision << ',' << r.score.recall << ',' << r.score.f1 << '\n';
  }
  return out.str();
}

double UvdMeanF1(const std::vector<SynthConfig>& suite,
                 const DecomposerConfig& decomposer, double noise_sigma,
                 const std::vector<std::uint64_t>& seeds, std::size_t tolerance) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& cfg : suite) {
    for (std::uint64_t seed : seeds) {
      const auto synth = GenerateSynthetic(WithRun(cfg, seed, noise_sigma));
      const auto d = Decompose(synth.trajectory, decomposer);
      sum += ScoreBoundaries(d.subgoals, synth.boundaries, tolerance).f1;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

NoiseCalibration CalibrateNoise(const std::vector<SynthConfig>& suite,
                                const DecomposerConfig& decomposer,
                                const std::vector<double>& grid,
                                const std::vector<std::uint64_t>& seeds,
                                std::size_t tolerance, double target_f1) {
  if (grid.empty()) Fail(ErrorKind::kInvalidArgument, "empty noise grid");
  NoiseCalibration cal;
  cal.tolerance = tolerance;
  cal.target_f1 = target_f1;
  cal.grid = grid;
  bool passing = true;
  for (double sigma : grid) {
    const double f1 = UvdMeanF1(suite, decomposer, sigma, seeds, tolerance);
    cal.grid_f1.push_back(f1);
    if (passing && f1 >= target_f1) {
      cal.sigma = sigma;
      cal.mean_f1 = f1;
    } else {
      passing = false;
    }
  }
  return cal;
}

std::vector<SynthConfig> ParseSuite(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kFormat, std::string("suite: ") + e.what());
  }
  std::vector<SynthConfig> suite;
  try {
    for (const auto& j : doc.at("configs")) {
      SynthConfig c;
      c.id = j.at("id").get<std::string>();
      c.T = j.at("T").get<std::size_t>();
      c.K = j.at("K").get<std::size_t>();
      c.boundaries = j.at("boundaries").get<std::vector<FrameIndex>>();
      c.noise_sigma = j.value("noise_sigma", 0.0);
      c.anchor_scale = j.value("anchor_scale", 1.0);
      c.seed = j.value("seed", std::uint64_t{0});
      CheckSynthConfig(c);
      suite.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kFormat, std::string("suite: ") + e.what());
  }
  return suite;
}

std::vector<SynthConfig> LoadSuite(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseSuite(text);
}

}  // namespace uvd
