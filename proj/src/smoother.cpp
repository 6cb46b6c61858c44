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

#include "uvd/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uvd/error.hpp"

namespace uvd {

void CheckSmootherConfig(const SmootherConfig& config) {
  if (!(config.bandwidth > 0.0) || !std::isfinite(config.bandwidth)) {
    Fail(ErrorKind::kInvalidArgument,
         "bandwidth must be positive and finite, got " +
             std::to_string(config.bandwidth));
  }
}

std::vector<double> SmoothCurve(std::span<const double> values,
                                const SmootherConfig& config) {
  CheckSmootherConfig(config);
  const std::size_t n = values.size();
  if (n == 0) Fail(ErrorKind::kInvalidArgument, "cannot smooth an empty curve");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i])) {
      Fail(ErrorKind::kInvalidArgument,
           "non-finite curve value at " + std::to_string(i));
    }
  }
  if (n == 1) return {values[0]};
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo_value = *min_it;
  const double hi_value = *max_it;

  const double step = 1.0 / static_cast<double>(n - 1);
  const double inv_two_h2 = 1.0 / (2.0 * config.bandwidth * config.bandwidth);
  // weight[k] for |i - j| = k. Trailing exact zeros contribute nothing, so the
  // table is cut where exp() underflows.
  std::vector<double> weight;
  weight.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = static_cast<double>(k) * step;
    const double w = std::exp(-dx * dx * inv_two_h2);
    if (w == 0.0) break;
    weight.push_back(w);
  }
  const std::size_t reach = weight.size();

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i + 1 > reach ? i + 1 - reach : 0;
    const std::size_t hi = i + reach < n ? i + reach : n;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      const double w = weight[i > j ? i - j : j - i];
      num += w * values[j];
      den += w;
    }
    // Rounding can push a convex combination one ulp outside the range.
    out[i] = std::clamp(num / den, lo_value, hi_value);
  }
  return out;
}

}  // namespace uvd
