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

#ifndef UVD_RNG_HPP
#define UVD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace uvd {

// Seeded generator with a platform-independent output sequence.
//
// The engine is std::mt19937_64, whose raw output is fixed by the C++
// standard. The standard library distributions are not (their algorithms
// are implementation-defined), so every derived draw is computed here:
//   UniformBelow(n): rejection sampling on the raw 64-bit word, x % n after
//                    discarding words >= the largest multiple of n.
//   Uniform01():     top 53 bits of one raw word, scaled by 2^-53.
//   Normal():        Box-Muller on two Uniform01 draws, cosine branch only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformBelow(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Normal() {
    double u1 = Uniform01();
    while (u1 <= 0.0) u1 = Uniform01();
    const double u2 = Uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace uvd

#endif  // UVD_RNG_HPP
