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

#ifndef UVD_TRAJECTORY_HPP
#define UVD_TRAJECTORY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uvd {

using FrameIndex = std::size_t;

// A T x K matrix of frame embeddings, row-major, held in double precision.
// Files store 32-bit floats; values read from disk are exactly representable.
// Instances always satisfy T >= 2, K >= 1 and all-finite values.
class Trajectory {
 public:
  // Throws Error(kValidation) listing every violated invariant.
  Trajectory(std::size_t rows, std::size_t cols, std::vector<double> values,
             std::string meta = {});

  // Builds from per-frame rows; ragged input is a validation error.
  static Trajectory FromRows(const std::vector<std::vector<double>>& rows,
                             std::string meta = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::string& meta() const { return meta_; }
  std::span<const double> values() const { return values_; }

  std::span<const double> frame(FrameIndex t) const {
    return {values_.data() + t * cols_, cols_};
  }

  // Copy of frames [0, end].
  Trajectory Prefix(FrameIndex end) const;
  // Every value multiplied by `factor`.
  Trajectory Scaled(double factor) const;

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.values_ == b.values_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  std::string meta_;
};

// Invariant violations as human-readable lines; empty when valid.
std::vector<std::string> Validate(std::size_t rows, std::size_t cols,
                                  std::span<const double> values);
std::vector<std::string> Validate(
    const std::vector<std::vector<double>>& rows);
std::vector<std::string> Validate(const Trajectory& traj);

enum class FileFormat { kBinary, kCsv };

inline constexpr char kBinaryMagic[4] = {'U', 'V', 'D', 'T'};
inline constexpr std::uint32_t kBinaryVersion = 1;
// magic + version + T + K
inline constexpr std::size_t kBinaryHeaderBytes = 4 + 4 + 8 + 8;

Trajectory LoadTrajectory(const std::string& path, FileFormat format);
void SaveTrajectory(const Trajectory& traj, const std::string& path,
                    FileFormat format);

// In-memory codecs behind Load/Save. `source` names the input in messages.
std::vector<std::uint8_t> EncodeBinary(const Trajectory& traj);
Trajectory DecodeBinary(std::span<const std::uint8_t> bytes,
                        const std::string& source = "<memory>");
std::string EncodeCsv(const Trajectory& traj);
Trajectory DecodeCsv(const std::string& text,
                     const std::string& source = "<memory>");

// Guesses the format from the extension: ".csv" is CSV, anything else binary.
FileFormat FormatFromPath(const std::string& path);

// Euclidean distance, accumulated in double.
double L2Distance(std::span<const double> a, std::span<const double> b);

}  // namespace uvd

#endif  // UVD_TRAJECTORY_HPP
