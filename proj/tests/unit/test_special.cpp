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
#include <limits>

#include "bplmc/error.hpp"
#include "bplmc/special.hpp"
#include "support.hpp"

using bplmc::arsinh;
using bplmc::lambert_w0;

namespace {
const double kE = std::exp(1.0);
}

TEST_CASE("lambert_w0 fixed points") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(std::fabs(lambert_w0(kE) - 1.0) <= 1e-12);
  CHECK(std::fabs(lambert_w0(-1.0 / kE) + 1.0) <= 1e-12);
  // W(1) is the omega constant.
  CHECK(std::fabs(lambert_w0(1.0) - 0.56714329040978387) <= 1e-15);
}

TEST_CASE("lambert_w0 domain edge") {
  CHECK(lambert_w0(-1.0 / kE - 5e-13) == -1.0);
  CHECK_THROWS_AS(lambert_w0(-1.0 / kE - 1e-9), bplmc::DomainError);
  CHECK_THROWS_AS(lambert_w0(-1.0), bplmc::DomainError);
}

TEST_CASE("lambert_w0 round trip over w in [-1, 20]") {
  bplmc_test::for_all(10000, 11, [](bplmc_test::Gen& g) {
    const double w = g.uniform(-1.0, 20.0);
    CHECK(std::fabs(lambert_w0(w * std::exp(w)) - w) <= 1e-10 * (1.0 + std::fabs(w)));
  });
}

TEST_CASE("lambert_w0 solves w e^w = x") {
  bplmc_test::for_all(2000, 12, [](bplmc_test::Gen& g) {
    const double x = g.coin() ? g.uniform(-1.0 / kE + 1e-12, 0.0) : g.log_uniform(1e-12, 1e6);
    const double w = lambert_w0(x);
    CHECK(w >= -1.0);
    CHECK(std::fabs(w * std::exp(w) - x) <= 1e-12 * std::fabs(x) + 1e-300);
  });
}

TEST_CASE("lambert_w0 strictly increasing on a grid") {
  double prev = lambert_w0(-1.0 / kE);
  const int n = 20000;
  for (int k = 1; k <= n; ++k) {
    // Geometric spacing away from the branch point out to 1e3.
    const double x = -1.0 / kE + (1e3 + 1.0 / kE) * std::pow(static_cast<double>(k) / n, 3.0);
    const double w = lambert_w0(x);
    REQUIRE(w > prev);
    prev = w;
  }
}

TEST_CASE("arsinh is odd and accurate") {
  bplmc_test::for_all(5000, 13, [](bplmc_test::Gen& g) {
    const double x = (g.coin() ? 1.0 : -1.0) * g.log_uniform(1e-300, 1e300);
    CHECK(arsinh(-x) == -arsinh(x));
    CHECK(std::fabs(arsinh(x) - std::asinh(x)) <= 1e-15 * std::fabs(std::asinh(x)));
  });
  CHECK(arsinh(0.0) == 0.0);
  CHECK(arsinh(1.0) == doctest::Approx(0.88137358701954305).epsilon(1e-15));
  CHECK(std::isinf(arsinh(std::numeric_limits<double>::infinity())));
}
