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

#include "uvd/trajectory.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "uvd/error.hpp"

namespace uvd {
namespace {

static_assert(std::numeric_limits<float>::is_iec559, "IEEE-754 float needed");

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "; ";
    out += l;
  }
  return out;
}

template <typename U>
void PutLE(std::vector<std::uint8_t>& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename U>
U GetLE(const std::uint8_t* p) {
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(p[i]) << (8 * i);
  }
  return value;
}

void CheckStorable(const Trajectory& traj) {
  constexpr double kMax = std::numeric_limits<float>::max();
  for (std::size_t i = 0; i < traj.values().size(); ++i) {
    if (std::fabs(traj.values()[i]) > kMax) {
      Fail(ErrorKind::kValidation,
           "value at (" + std::to_string(i / traj.cols()) + "," +
               std::to_string(i % traj.cols()) +
               ") exceeds 32-bit float range");
    }
  }
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Trajectory::Trajectory(std::size_t rows, std::size_t cols,
                       std::vector<double> values, std::string meta)
    : rows_(rows), cols_(cols), values_(std::move(values)),
      meta_(std::move(meta)) {
  auto violations = Validate(rows_, cols_, values_);
  if (!violations.empty()) Fail(ErrorKind::kValidation, JoinLines(violations));
}

Trajectory Trajectory::FromRows(const std::vector<std::vector<double>>& rows,
                                std::string meta) {
  auto violations = Validate(rows);
  if (!violations.empty()) Fail(ErrorKind::kValidation, JoinLines(violations));
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.front().size());
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return Trajectory(rows.size(), rows.front().size(), std::move(flat),
                    std::move(meta));
}

Trajectory Trajectory::Prefix(FrameIndex end) const {
  if (end >= rows_) {
    Fail(ErrorKind::kInvalidArgument,
         "prefix end " + std::to_string(end) + " out of range for T=" +
             std::to_string(rows_));
  }
  std::vector<double> v(values_.begin(),
                        values_.begin() + static_cast<std::ptrdiff_t>((end + 1) * cols_));
  return Trajectory(end + 1, cols_, std::move(v), meta_);
}

Trajectory Trajectory::Scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return Trajectory(rows_, cols_, std::move(v), meta_);
}

std::vector<std::string> Validate(std::size_t rows, std::size_t cols,
                                  std::span<const double> values) {
  std::vector<std::string> out;
  if (rows < 2) out.push_back("too short: T=" + std::to_string(rows) + " < 2");
  if (cols < 1) out.push_back("empty frames: K=0");
  if (values.size() != rows * cols) {
    out.push_back("shape mismatch: " + std::to_string(values.size()) +
                  " values for " + std::to_string(rows) + "x" +
                  std::to_string(cols));
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      out.push_back("non-finite at (" + std::to_string(i / cols) + "," +
                    std::to_string(i % cols) + ")");
    }
  }
  return out;
}

std::vector<std::string> Validate(
    const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> out;
  if (rows.size() < 2) {
    out.push_back("too short: T=" + std::to_string(rows.size()) + " < 2");
  }
  if (rows.empty()) return out;
  const std::size_t width = rows.front().size();
  if (width < 1) out.push_back("empty frames: K=0");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      out.push_back("ragged row " + std::to_string(r) + ": width " +
                    std::to_string(rows[r].size()) + ", expected " +
                    std::to_string(width));
      continue;
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (!std::isfinite(rows[r][c])) {
        out.push_back("non-finite at (" + std::to_string(r) + "," +
                      std::to_string(c) + ")");
      }
    }
  }
  return out;
}

std::vector<std::string> Validate(const Trajectory& traj) {
  return Validate(traj.rows(), traj.cols(), traj.values());
}

std::vector<std::uint8_t> EncodeBinary(const Trajectory& traj) {
  CheckStorable(traj);
  std::vector<std::uint8_t> out;
  out.reserve(kBinaryHeaderBytes + traj.values().size() * 4);
  out.insert(out.end(), std::begin(kBinaryMagic), std::end(kBinaryMagic));
  PutLE<std::uint32_t>(out, kBinaryVersion);
  PutLE<std::uint64_t>(out, traj.rows());
  PutLE<std::uint64_t>(out, traj.cols());
  for (double v : traj.values()) {
    PutLE<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

Trajectory DecodeBinary(std::span<const std::uint8_t> bytes,
                        const std::string& source) {
  auto fail = [&](std::size_t offset, const std::string& msg) -> void {
    Fail(ErrorKind::kFormat,
         source + ": byte " + std::to_string(offset) + ": " + msg);
  };
  if (bytes.size() < kBinaryHeaderBytes) {
    fail(bytes.size(), "truncated header (" + std::to_string(bytes.size()) +
                           " of " + std::to_string(kBinaryHeaderBytes) +
                           " bytes)");
  }
  if (std::memcmp(bytes.data(), kBinaryMagic, 4) != 0) fail(0, "bad magic, expected \"UVDT\"");
  const auto version = GetLE<std::uint32_t>(bytes.data() + 4);
  if (version != kBinaryVersion) {
    fail(4, "unsupported version " + std::to_string(version));
  }
  const auto rows = GetLE<std::uint64_t>(bytes.data() + 8);
  const auto cols = GetLE<std::uint64_t>(bytes.data() + 16);
  if (rows < 2) fail(8, "too short: T=" + std::to_string(rows) + " < 2");
  if (cols < 1) fail(16, "empty frames: K=0");
  const std::uint64_t payload = bytes.size() - kBinaryHeaderBytes;
  if (rows > payload / 4 / cols || rows * cols * 4 != payload) {
    fail(kBinaryHeaderBytes,
         "payload is " + std::to_string(payload) + " bytes, header declares " +
             std::to_string(rows) + "x" + std::to_string(cols) + " floats");
  }
  std::vector<double> values(rows * cols);
  const std::uint8_t* p = bytes.data() + kBinaryHeaderBytes;
  for (std::size_t i = 0; i < values.size(); ++i, p += 4) {
    const float f = std::bit_cast<float>(GetLE<std::uint32_t>(p));
    if (!std::isfinite(f)) {
      fail(kBinaryHeaderBytes + 4 * i,
           "non-finite at (" + std::to_string(i / cols) + "," +
               std::to_string(i % cols) + ")");
    }
    values[i] = f;
  }
  return Trajectory(rows, cols, std::move(values));
}

std::string EncodeCsv(const Trajectory& traj) {
  CheckStorable(traj);
  std::string out = "# K=" + std::to_string(traj.cols()) + "\n";
  char buf[32];
  for (std::size_t r = 0; r < traj.rows(); ++r) {
    auto row = traj.frame(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      // Shortest representation that parses back to the same float.
      auto res = std::to_chars(buf, buf + sizeof buf, static_cast<float>(row[c]));
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

Trajectory DecodeCsv(const std::string& text, const std::string& source) {
  auto fail = [&](std::size_t line, const std::string& msg) -> void {
    Fail(ErrorKind::kFormat,
         source + ": line " + std::to_string(line) + ": " + msg);
  };
  std::size_t declared_k = 0;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::vector<double> values;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line = Trim(std::string_view(text).substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_no != 1 || rows != 0) fail(line_no, "comment only allowed on the first line");
      std::string_view rest = Trim(line.substr(1));
      if (rest.substr(0, 2) != "K=") fail(line_no, "header must be \"# K=<int>\"");
      rest.remove_prefix(2);
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), declared_k);
      if (ec != std::errc() || ptr != rest.data() + rest.size() || declared_k == 0) {
        fail(line_no, "malformed K in header");
      }
      continue;
    }
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      std::string_view field = Trim(line.substr(start, comma == std::string_view::npos
                                                           ? std::string_view::npos
                                                           : comma - start));
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        fail(line_no, "column " + std::to_string(count) + ": cannot parse \"" +
                          std::string(field) + "\"");
      }
      // Storage precision is 32-bit, as for the binary format.
      const float f = static_cast<float>(v);
      if (!std::isfinite(f)) {
        fail(line_no, "non-finite at (" + std::to_string(rows) + "," +
                          std::to_string(count) + ")");
      }
      values.push_back(f);
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    const std::size_t expected = declared_k ? declared_k : (rows ? width : count);
    if (count != expected) {
      fail(line_no, "ragged row: width " + std::to_string(count) + ", expected " +
                        std::to_string(expected));
    }
    width = count;
    ++rows;
  }
  if (rows < 2) fail(line_no, "too short: T=" + std::to_string(rows) + " < 2");
  return Trajectory(rows, width, std::move(values));
}

Trajectory LoadTrajectory(const std::string& path, FileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) Fail(ErrorKind::kIo, "read failed: " + path);
  Trajectory t = format == FileFormat::kBinary
                     ? DecodeBinary({reinterpret_cast<const std::uint8_t*>(data.data()),
                                     data.size()},
                                    path)
                     : DecodeCsv(data, path);
  return Trajectory(t.rows(), t.cols(), {t.values().begin(), t.values().end()}, path);
}

void SaveTrajectory(const Trajectory& traj, const std::string& path,
                    FileFormat format) {
  if (path.empty()) Fail(ErrorKind::kIo, "empty output path");
  std::string data;
  if (format == FileFormat::kBinary) {
    auto bytes = EncodeBinary(traj);
    data.assign(bytes.begin(), bytes.end());
  } else {
    data = EncodeCsv(traj);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot open for writing: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) Fail(ErrorKind::kIo, "write failed: " + path);
}

FileFormat FormatFromPath(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") return FileFormat::kCsv;
  return FileFormat::kBinary;
}

double L2Distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace uvd
