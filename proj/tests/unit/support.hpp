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

// Hand-rolled generators for property tests. They use their own engine so a
// bug in the library's Rng cannot hide itself.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bplmc_test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(eng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::vector<double> vec(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& e : v) e = uniform(lo, hi);
    return v;
  }
  std::vector<double> positive_vec(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& e : v) e = log_uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

// Runs body(gen) for n cases drawn from one seeded stream.
template <class Body>
void for_all(int n, std::uint64_t seed, Body body) {
  Gen gen(seed);
  for (int k = 0; k < n; ++k) body(gen);
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / (1.0 + std::fabs(want));
}

}  // namespace bplmc_test
