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

#ifndef UVD_SYNTH_HPP
#define UVD_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uvd/decomposer.hpp"
#include "uvd/trajectory.hpp"

namespace uvd {

struct SynthConfig {
  std::string id;
  std::size_t T = 0;
  std::size_t K = 2;
  std::vector<FrameIndex> boundaries;  // segment ends, strictly increasing, last = T-1
  double noise_sigma = 0.0;
  double anchor_scale = 1.0;           // distance between consecutive anchors
  std::uint64_t seed = 0;
};

void CheckSynthConfig(const SynthConfig& cfg);

struct SynthResult {
  Trajectory trajectory;
  std::vector<FrameIndex> boundaries;
};

// Piecewise straight-line trajectory with known segment ends.
//
// Anchors a_0..a_m zig-zag in the plane of the first two axes:
//   a_j = ((j odd) * A, j * drift),  drift = 0.1 * scale,
//   A = sqrt(scale^2 - drift^2),
// so consecutive anchors are exactly `anchor_scale` apart and every turn
// reverses the first coordinate. Frame 0 sits on a_0; segment j moves from
// a_{j-1} to a_j in equal increments and ends on a_j at boundary j. Isotropic
// Gaussian noise is then added to every coordinate, drawn row-major from
// Rng(seed). At zero noise the distance from any frame of a segment to that
// segment's end is strictly decreasing.
SynthResult GenerateSynthetic(const SynthConfig& cfg);

struct BoundaryScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matched = 0;
};

// One-to-one matching of sorted index lists within +-tolerance frames,
// maximal by a two-pointer sweep. Two empty lists score (1, 1, 1).
BoundaryScore ScoreBoundaries(const std::vector<FrameIndex>& predicted,
                              const std::vector<FrameIndex>& truth,
                              std::size_t tolerance);

enum class Method { kUvd, kRandom, kUniform };
const char* MethodName(Method m);

struct BenchRow {
  Method method;
  std::string config_id;
  std::uint64_t seed;
  BoundaryScore score;
};

struct BenchOptions {
  DecomposerConfig decomposer;
  std::size_t tolerance = 2;
  std::size_t uniform_window = 0;  // required, no default
  std::vector<std::uint64_t> seeds;
  // Overrides every config's noise when set (>= 0).
  double noise_sigma = -1.0;
};

// Every (config, seed) pair scored for UVD, the random-subgoal baseline and
// the uniform-window baseline (its distinct labels, sorted). Rows are
// ordered config-major, then seed, then method.
std::vector<BenchRow> RunBaselineComparison(const std::vector<SynthConfig>& suite,
                                            const BenchOptions& options);

// Mean F1 of `method` over rows, optionally restricted to one config.
double MeanF1(const std::vector<BenchRow>& rows, Method method,
              const std::string& config_id = {});

std::string BenchRowsToCsv(const std::vector<BenchRow>& rows);

struct NoiseCalibration {
  double sigma = 0.0;     // largest grid value whose prefix of the grid all pass
  double mean_f1 = 0.0;   // UVD mean F1 at that sigma
  std::size_t tolerance = 3;
  double target_f1 = 0.9;
  std::vector<double> grid;
  std::vector<double> grid_f1;
};

NoiseCalibration CalibrateNoise(const std::vector<SynthConfig>& suite,
                                const DecomposerConfig& decomposer,
                                const std::vector<double>& grid,
                                const std::vector<std::uint64_t>& seeds,
                                std::size_t tolerance, double target_f1);

// UVD mean F1 over suite x seeds at a fixed noise level.
double UvdMeanF1(const std::vector<SynthConfig>& suite,
                 const DecomposerConfig& decomposer, double noise_sigma,
                 const std::vector<std::uint64_t>& seeds, std::size_t tolerance);

// Suite files are JSON: {"configs": [{"id", "T", "K", "boundaries",
// "noise_sigma", "anchor_scale", "seed"}, ...]}.
std::vector<SynthConfig> LoadSuite(const std::string& path);
std::vector<SynthConfig> ParseSuite(const std::string& json_text);

}  // namespace uvd

#endif  // UVD_SYNTH_HPP
