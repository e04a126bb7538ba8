// Copyright 2026 The bplmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bplmc/sample_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bplmc/error.hpp"

namespace bplmc {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int k = 0; k < 4; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(const unsigned char* b) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(b[k]) << (8 * k);
  return v;
}

void put_f64(std::ostream& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_samples_csv(const SampleBatch& batch, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  for (std::size_t c = 0; c < batch.cols; ++c) {
    if (c) out << ',';
    out << "dim_" << c + 1;
  }
  out << '\n';
  char buf[40];
  for (std::size_t r = 0; r < batch.rows; ++r) {
    for (std::size_t c = 0; c < batch.cols; ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", batch.at(r, c));
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw FormatError("write failed: " + path);
}

void write_samples_binary(const SampleBatch& batch, const std::string& path) {
  if (batch.rows > UINT32_MAX || batch.cols > UINT32_MAX) {
    throw FormatError("batch too large for the binary format");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out.write(kBinaryMagic, 8);
  put_u32(out, static_cast<std::uint32_t>(batch.rows));
  put_u32(out, static_cast<std::uint32_t>(batch.cols));
  for (double v : batch.data) put_f64(out, v);
  if (!out) throw FormatError("write failed: " + path);
}

SampleBatch read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty sample file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  SampleBatch b;
  {
    std::stringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (cell != "dim_" + std::to_string(++k)) {
        throw FormatError(path + ": malformed header field '" + cell + "'");
      }
    }
    b.cols = k;
  }
  if (b.cols == 0) throw FormatError(path + ": header has no columns");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t n = 0;
    const char* p = line.c_str();
    while (true) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) throw FormatError(path + ": bad number in row " + std::to_string(b.rows + 1));
      b.data.push_back(v);
      ++n;
      if (*end == ',') {
        p = end + 1;
      } else if (*end == '\0' || *end == '\r') {
        break;
      } else {
        throw FormatError(path + ": bad separator in row " + std::to_string(b.rows + 1));
      }
    }
    if (n != b.cols) throw FormatError(path + ": ragged row " + std::to_string(b.rows + 1));
    ++b.rows;
  }
  if (b.rows == 0) throw FormatError(path + ": no samples");
  return b;
}

SampleBatch read_samples_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  unsigned char header[16];
  if (!in.read(reinterpret_cast<char*>(header), 16)) throw FormatError(path + ": truncated header");
  if (std::memcmp(header, kBinaryMagic, 8) != 0) throw FormatError(path + ": bad magic");
  SampleBatch b;
  b.rows = get_u32(header + 8);
  b.cols = get_u32(header + 12);
  if (b.rows == 0 || b.cols == 0) throw FormatError(path + ": no samples");
  const std::size_t n = b.rows * b.cols;
  std::vector<unsigned char> raw(n * 8);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw FormatError(path + ": truncated payload");
  }
  b.data.resize(n);
  for (std::size_t k = 0; k < n; ++k) b.data[k] = get_f64(raw.data() + 8 * k);
  return b;
}

SampleBatch read_samples(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  char head[8] = {};
  in.read(head, 8);
  if (in.gcount() == 0) throw FormatError(path + ": empty sample file");
  if (in.gcount() == 8 && std::memcmp(head, kBinaryMagic, 8) == 0) return read_samples_binary(path);
  return read_samples_csv(path);
}

}  // namespace bplmc
