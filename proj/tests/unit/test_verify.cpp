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
#include <string>
#include <vector>

#include "bplmc/error.hpp"
#include "bplmc/verify.hpp"
#include "support.hpp"

using bplmc::LegendreMap;
using bplmc::NonsmoothTerm;
using bplmc::Side;
using bplmc::Vec;

TEST_CASE("grid oracle examples") {
  const auto euclid = LegendreMap::squared_euclidean(1);
  CHECK(std::fabs(bplmc::grid_prox_oracle(euclid, NonsmoothTerm::zero(1), 0.5, Side::Left, 0.7) - 0.7) <= 1e-9);
  CHECK(std::fabs(bplmc::grid_prox_oracle(euclid, NonsmoothTerm::weighted_l1({1.0}), 0.5, Side::Left, 2.0) - 1.5) <=
        1e-8);
  CHECK(std::fabs(bplmc::grid_prox_oracle(LegendreMap::hypentropy({1.0}), NonsmoothTerm::weighted_l1({1.0}), 0.1,
                                          Side::Left, 0.05)) <= 1e-8);
}

TEST_CASE("finite-difference checker") {
  // Dyadic points and step keep every operation exact, so the difference
  // quotient of a linear function is exact too.
  const std::vector<Vec> pts = {{0.5, 0.25}, {-3.0, 4.0}, {10.0, -7.0}};
  const bplmc::ScalarField linear = [](bplmc::ConstSpan x) { return 2.0 * x[0] - 5.0 * x[1]; };
  const bplmc::VectorField linear_grad = [](bplmc::ConstSpan) { return Vec{2.0, -5.0}; };
  CHECK(bplmc::fd_gradient_check(linear, linear_grad, pts, 0x1p-20) <= 1e-12);
  const bplmc::ScalarField quad = [](bplmc::ConstSpan x) { return x[0] * x[0] + x[1] * x[1]; };
  const bplmc::VectorField wrong = [](bplmc::ConstSpan x) { return Vec{4.0 * x[0], 4.0 * x[1]}; };
  // The doubled gradient is off by |2x| / (1 + |4x|), which approaches one half.
  const double err = bplmc::fd_gradient_check(quad, wrong, pts);
  CHECK(err > 0.45);
  CHECK(err < 0.5);
}

TEST_CASE("envelope gradient passes the finite-difference checker") {
  const bplmc::ProxPair pair(LegendreMap::weighted_quadratic({1.0, 2.0}), NonsmoothTerm::weighted_l1({1.0, 3.0}),
                             Side::Left, 0.5);
  const std::vector<Vec> pts = {{2.0, -3.0}, {-1.7, 2.2}, {0.1, 0.2}};
  const double err = bplmc::fd_gradient_check([&](bplmc::ConstSpan x) { return bplmc::env_value(pair, x); },
                                              [&](bplmc::ConstSpan x) { return bplmc::env_grad(pair, x); }, pts);
  CHECK(err <= 1e-5);
}

TEST_CASE("convexity grid check") {
  CHECK(bplmc::convexity_grid_check([](double x) { return x * x; }, -3.0, 3.0, 101) > 0.0);
  CHECK(bplmc::convexity_grid_check([](double x) { return -x * x; }, -3.0, 3.0, 101) < 0.0);
  CHECK(std::fabs(bplmc::convexity_grid_check([](double x) { return 2.0 * x + 1.0; }, -3.0, 3.0, 101)) <= 1e-12);
}

TEST_CASE("self-concordance constant") {
  const Vec beta{4.0, 0.5, 2.0};
  CHECK(bplmc::self_concordance_constant(beta) == doctest::Approx(1.0 / (2.0 * std::pow(3.0, 1.5) * 0.5)).epsilon(1e-14));
  CHECK_THROWS(bplmc::self_concordance_constant(Vec{1.0, 0.0}));
  // Slope of (cosh t)^{-1/2}: its supremum is 1 / (sqrt(2) 3^{3/4}), reached where tanh^2 t = 2/3.
  double peak = 0.0;
  for (int k = -200000; k <= 200000; ++k) {
    const double t = k * 5e-5;
    peak = std::max(peak, std::fabs(0.5 * std::sinh(t) * std::pow(std::cosh(t), -1.5)));
  }
  CHECK(peak == doctest::Approx(1.0 / (std::sqrt(2.0) * std::pow(3.0, 0.75))).epsilon(1e-8));
}

TEST_CASE("relative smoothness constant matches a grid maximum") {
  const Vec w{1.0, 3.0};
  const Vec beta{2.0, 1.0};
  const Vec m{0.5, 1.5};
  const double lambda = 0.1;
  double want = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    want = std::max(want, m[i] * std::sqrt(std::pow(lambda * w[i] / m[i], 2) + beta[i] * beta[i]) / lambda);
  }
  CHECK(bplmc::relative_smoothness_constant(w, beta, lambda, m) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("total variation bound holds in one dimension") {
  const bplmc::CompositePotential u(bplmc::SmoothTerm::zero(1), NonsmoothTerm::weighted_l1({2.0}));
  double prev = 0.0;
  for (double lambda : {1e-3, 1e-2, 1e-1}) {
    const auto r = bplmc::tv_bound_check_1d(2.0, 1.0, lambda, u, LegendreMap::squared_euclidean(1));
    CHECK(r.holds);
    CHECK(r.tv_estimate > prev);
    prev = r.tv_estimate;
  }
}

TEST_CASE("relative assumptions for a quadratic pair") {
  // With a quadratic envelope map and phi equal to it, env - alpha phi is
  // convex for small alpha and beta phi - env is convex for beta >= 1 / lambda.
  const bplmc::ProxPair pair(LegendreMap::squared_euclidean(1), NonsmoothTerm::weighted_l1({1.0}), Side::Left, 0.5);
  const auto rep = bplmc::check_relative_assumptions(pair, LegendreMap::squared_euclidean(1), 0.0, 2.0, -3.0, 3.0, 601);
  CHECK(rep.convexity_pass);
  CHECK(rep.smoothness_pass);
  const auto bad = bplmc::check_relative_assumptions(pair, LegendreMap::squared_euclidean(1), 1.0, 1.0, -3.0, 3.0, 601);
  CHECK_FALSE(bad.convexity_pass);
  CHECK_FALSE(bad.smoothness_pass);
}

TEST_CASE("relative lipschitz estimate") {
  const auto phi = LegendreMap::squared_euclidean(2);
  const std::vector<Vec> pts = {{1.0, 2.0}, {-3.0, 0.5}};
  const double l = bplmc::relative_lipschitz_on_points([](bplmc::ConstSpan x) { return Vec{3.0 * x[0], 0.0}; }, phi,
                                                       pts);
  CHECK(l == 9.0);
}

TEST_CASE("suite names, filtering and corruption") {
  const auto names = bplmc::verify_check_names();
  CHECK(names.size() >= 20);
  bplmc::VerifyOptions opt;
  opt.filter = "special.";
  opt.instances = 200;
  const auto res = bplmc::run_verify_suite(opt);
  REQUIRE(res.size() == 2);
  for (const auto& r : res) CHECK(r.pass);

  opt.filter = "oracle.quadratic";
  CHECK(bplmc::run_verify_suite(opt).at(0).pass);
  opt.prox_corruption = 1e-3;
  CHECK_FALSE(bplmc::run_verify_suite(opt).at(0).pass);
}
