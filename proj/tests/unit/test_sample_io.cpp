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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "bplmc/error.hpp"
#include "bplmc/sample_io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using bplmc::SampleBatch;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bplmc_test_sample_io";
  fs::create_directories(dir);
  return dir / name;
}

SampleBatch random_batch(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  bplmc_test::Gen g(seed);
  SampleBatch b;
  b.rows = rows;
  b.cols = cols;
  for (std::size_t k = 0; k < rows * cols; ++k) b.data.push_back(g.uniform(-1.0, 1.0) * std::pow(10.0, g.integer(-300, 300)));
  return b;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

}  // namespace

TEST_CASE("csv round trip is exact") {
  const SampleBatch b = random_batch(50, 4, 1);
  const auto path = scratch("rt.csv").string();
  bplmc::write_samples_csv(b, path);
  const SampleBatch back = bplmc::read_samples(path);
  CHECK(back.rows == 50);
  CHECK(back.cols == 4);
  CHECK(back.data == b.data);
  CHECK(slurp(path).rfind("dim_1,dim_2,dim_3,dim_4\n", 0) == 0);
}

TEST_CASE("binary round trip is exact and the layout is as documented") {
  SampleBatch b = random_batch(3, 2, 2);
  b.data[0] = -0.0;
  b.data[1] = std::numeric_limits<double>::denorm_min();
  const auto path = scratch("rt.bin").string();
  bplmc::write_samples_binary(b, path);
  const std::string raw = slurp(path);
  REQUIRE(raw.size() == 16 + 6 * 8);
  CHECK(raw.substr(0, 8) == "BPLMCSB1");
  CHECK(static_cast<unsigned char>(raw[8]) == 3);
  CHECK(static_cast<unsigned char>(raw[12]) == 2);
  // Second value, little-endian: denorm_min has only the lowest bit set.
  CHECK(static_cast<unsigned char>(raw[24]) == 1);
  const SampleBatch back = bplmc::read_samples(path);
  CHECK(back.rows == 3);
  CHECK(back.cols == 2);
  CHECK(std::memcmp(back.data.data(), b.data.data(), b.data.size() * sizeof(double)) == 0);
}

TEST_CASE("malformed files raise format errors") {
  const auto empty = scratch("empty.csv");
  spit(empty, "");
  CHECK_THROWS_AS(bplmc::read_samples(empty.string()), bplmc::FormatError);

  const auto header_only = scratch("header.csv");
  spit(header_only, "dim_1,dim_2\n");
  CHECK_THROWS_AS(bplmc::read_samples(header_only.string()), bplmc::FormatError);

  const auto ragged = scratch("ragged.csv");
  spit(ragged, "dim_1,dim_2\n1,2\n3\n");
  CHECK_THROWS_AS(bplmc::read_samples(ragged.string()), bplmc::FormatError);

  const auto bad_header = scratch("badheader.csv");
  spit(bad_header, "x,y\n1,2\n");
  CHECK_THROWS_AS(bplmc::read_samples(bad_header.string()), bplmc::FormatError);

  const auto junk = scratch("junk.csv");
  spit(junk, "dim_1\nabc\n");
  CHECK_THROWS_AS(bplmc::read_samples(junk.string()), bplmc::FormatError);

  SampleBatch b = random_batch(4, 2, 3);
  const auto trunc = scratch("trunc.bin");
  bplmc::write_samples_binary(b, trunc.string());
  const std::string raw = slurp(trunc);
  spit(trunc, raw.substr(0, raw.size() - 3));
  CHECK_THROWS_AS(bplmc::read_samples(trunc.string()), bplmc::FormatError);

  CHECK_THROWS_AS(bplmc::read_samples(scratch("missing.bin").string()), bplmc::FormatError);
}

TEST_CASE("crlf line endings are accepted") {
  const auto p = scratch("crlf.csv");
  spit(p, "dim_1,dim_2\r\n1.5,-2\r\n3,4e-3\r\n");
  const SampleBatch b = bplmc::read_samples(p.string());
  CHECK(b.rows == 2);
  CHECK(b.data == std::vector<double>{1.5, -2.0, 3.0, 4e-3});
}
