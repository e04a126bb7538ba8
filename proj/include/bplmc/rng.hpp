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

#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace bplmc {

/// Seeded 64-bit generator for chains and data generation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms take the top 53 bits of one draw, u = (k + 0.5) / 2^53,
/// so they lie strictly inside (0, 1). Normals use the Box-Muller transform on
/// two uniforms (u1, u2), returning r cos(2 pi u2) first and caching
/// r sin(2 pi u2) for the next call, with r = sqrt(-2 log u1). Nothing here
/// depends on std:: distribution objects, whose outputs are
/// implementation-defined, so streams are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  void fill_normal(std::span<double> out);
  std::uint64_t next_u64() { return engine_(); }

  bool operator==(const Rng& other) const = default;

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace bplmc
