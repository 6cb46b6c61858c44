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

#ifndef UVD_SMOOTHER_HPP
#define UVD_SMOOTHER_HPP

#include <span>
#include <vector>

namespace uvd {

enum class Kernel { kGaussianRbf };

struct SmootherConfig {
  // Kernel bandwidth on the normalized time axis [0, 1].
  double bandwidth = 0.08;
  Kernel kernel = Kernel::kGaussianRbf;
};

void CheckSmootherConfig(const SmootherConfig& config);

// Nadaraya-Watson kernel regression of `values` onto its own sample points.
//
// Sample j sits at x_j = j / (L - 1), so the bandwidth is independent of the
// curve length. With u = (x_i - x_j) / h the weight is exp(-u^2 / 2) and
//
//   out[i] = sum_j w_ij * values[j] / sum_j w_ij.
//
// Evaluation is dense; weights depend only on |i - j| and are tabulated once
// per call.
std::vector<double> SmoothCurve(std::span<const double> values,
                                const SmootherConfig& config);

}  // namespace uvd

#endif  // UVD_SMOOTHER_HPP
