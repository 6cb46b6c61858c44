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

#ifndef UVD_TESTS_SUPPORT_HPP
#define UVD_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "uvd/error.hpp"
#include "uvd/trajectory.hpp"

namespace uvd_test {

// Test-side randomness is std::mt19937 with std distributions, separate
// from the library's generator.
inline uvd::Trajectory RandomTrajectory(std::size_t T, std::size_t K, std::uint32_t seed,
                                        double scale = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(T * K);
  for (double& x : v) x = u(gen);
  return uvd::Trajectory(T, K, std::move(v));
}

// Random walk with steps of at most `step` per coordinate.
inline uvd::Trajectory RandomWalk(std::size_t T, std::size_t K, std::uint32_t seed,
                                  double step) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-step, step);
  std::vector<double> v(T * K);
  for (std::size_t k = 0; k < K; ++k) v[k] = u(gen);
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t k = 0; k < K; ++k) v[t * K + k] = v[(t - 1) * K + k] + u(gen);
  }
  return uvd::Trajectory(T, K, std::move(v));
}

inline double Dist(const uvd::Trajectory& a, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double d = a.frame(i)[k] - a.frame(j)[k];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool RelClose(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

template <typename Fn>
uvd::ErrorKind KindOf(Fn&& fn) {
  try {
    fn();
  } catch (const uvd::Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected uvd::Error");
}

}  // namespace uvd_test

#endif  // UVD_TESTS_SUPPORT_HPP
