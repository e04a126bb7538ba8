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
#include <vector>

#include "bplmc/error.hpp"
#include "bplmc/samplers.hpp"
#include "bplmc/special.hpp"
#include "support.hpp"

using bplmc::ChainConfig;
using bplmc::CompositePotential;
using bplmc::LegendreMap;
using bplmc::NonsmoothTerm;
using bplmc::Side;
using bplmc::SmoothTerm;
using bplmc::SurrogatePotential;
using bplmc::Variant;
using bplmc::Vec;

namespace {

ChainConfig make_cfg(LegendreMap phi, LegendreMap psi, NonsmoothTerm g, double lambda, double gamma,
                     Side side = Side::Left) {
  const std::size_t d = phi.dim();
  ChainConfig cfg(SurrogatePotential(CompositePotential(SmoothTerm::zero(d), std::move(g)), std::move(psi), side,
                                     lambda),
                  std::move(phi));
  cfg.gamma = gamma;
  return cfg;
}

ChainConfig euclid_l1(std::size_t d, double lambda, double gamma) {
  Vec w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = static_cast<double>(i + 1);
  return make_cfg(LegendreMap::squared_euclidean(d), LegendreMap::squared_euclidean(d),
                  NonsmoothTerm::weighted_l1(w), lambda, gamma);
}

}  // namespace

TEST_CASE("zero drift and zero noise leave the state unchanged") {
  auto cfg = make_cfg(LegendreMap::squared_euclidean(2), LegendreMap::squared_euclidean(2), NonsmoothTerm::zero(2),
                      0.1, 0.05);
  const Vec x{0.4, -1.7};
  CHECK(bplmc::bmumla_update(cfg, x, Vec{0.0, 0.0}) == x);
  CHECK(bplmc::bmumla_dual_update(cfg, x, Vec{0.0, 0.0}) == x);
  cfg.inner_steps = 3;
  CHECK(bplmc::bmmmla_update(cfg, x, Vec(6, 0.0)) == x);
}

TEST_CASE("with gamma = lambda and no noise the Euclidean step is the prox") {
  bplmc_test::for_all(200, 41, [](bplmc_test::Gen& g) {
    const double lambda = g.log_uniform(1e-3, 1.0);
    const auto cfg = euclid_l1(3, lambda, lambda);
    const Vec x = g.vec(3, -5.0, 5.0);
    const Vec step = bplmc::bmumla_update(cfg, x, Vec(3, 0.0));
    const Vec p = bplmc::prox(cfg.surrogate.pair(), x);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(step[i] - p[i]) <= 1e-12 * (1.0 + std::fabs(x[i])));
  });
}

TEST_CASE("hypentropy BMUMLA step matches a hand computation") {
  const auto cfg = make_cfg(LegendreMap::hypentropy({1.0}), LegendreMap::squared_euclidean(1),
                            NonsmoothTerm::weighted_l1({1.0}), 1e-3, 1e-3);
  const double got = bplmc::bmumla_update(cfg, Vec{0.5}, Vec{0.3})[0];
  CHECK(got == doctest::Approx(0.513102543093578999).epsilon(1e-12));
}

TEST_CASE("hypentropy BMMMLA with four inner steps matches a hand computation") {
  auto cfg = make_cfg(LegendreMap::hypentropy({1.0}), LegendreMap::squared_euclidean(1),
                      NonsmoothTerm::weighted_l1({1.0}), 1e-3, 1e-3);
  cfg.variant = Variant::BMMMLA;
  cfg.inner_steps = 4;
  const double got = bplmc::bmmmla_update(cfg, Vec{0.5}, Vec{0.3, -0.5, 1.1, 0.2})[0];
  CHECK(got == doctest::Approx(0.525042696449427344).epsilon(1e-12));
}

TEST_CASE("primal and dual BMUMLA disagree for hypentropy") {
  const auto cfg = make_cfg(LegendreMap::hypentropy({1.0}), LegendreMap::squared_euclidean(1), NonsmoothTerm::zero(1),
                            0.1, 0.01);
  const auto& phi = cfg.mirror;
  const double primal = bplmc::bmumla_update(cfg, Vec{1.0}, Vec{1.0})[0];
  const double dual_y = bplmc::bmumla_dual_update(cfg, phi.grad(Vec{1.0}), Vec{1.0})[0];
  const double dual = phi.conj_grad_at(0, dual_y);
  CHECK(primal == doctest::Approx(1.17565537089017766).epsilon(1e-12));
  CHECK(dual == doctest::Approx(1.25313970529850406).epsilon(1e-12));
  CHECK(std::fabs(primal - dual) > 0.05);
}

TEST_CASE("variants coincide for the unit quadratic mirror") {
  bplmc_test::for_all(100, 42, [](bplmc_test::Gen& g) {
    auto cfg = euclid_l1(2, 0.1, 0.01);
    const Vec x = g.vec(2, -3.0, 3.0);
    const Vec xi = g.vec(2, -2.0, 2.0);
    const Vec primal = bplmc::bmumla_update(cfg, x, xi);
    CHECK(bplmc::bmumla_dual_update(cfg, x, xi) == primal);
    cfg.inner_steps = 1;
    CHECK(bplmc::bmmmla_update(cfg, x, xi) == primal);
  });
}

TEST_CASE("zero-noise BMMMLA is the mirror-descent half step") {
  auto cfg = make_cfg(LegendreMap::hypentropy({2.0, 0.5}), LegendreMap::squared_euclidean(2),
                      NonsmoothTerm::weighted_l1({1.0, 3.0}), 0.01, 0.005);
  cfg.inner_steps = 5;
  const Vec x{1.3, -0.8};
  const Vec grad = cfg.surrogate.grad(x);
  const Vec got = bplmc::bmmmla_update(cfg, x, Vec(10, 0.0));
  for (std::size_t i = 0; i < 2; ++i) {
    const double want = cfg.mirror.conj_grad_at(i, cfg.mirror.grad_at(i, x[i]) - cfg.gamma * grad[i]);
    CHECK(got[i] == want);
  }
}

TEST_CASE("right BMUMLA with psi = phi is the convex combination of mirror images") {
  // y+ = (1 - gamma/lambda) grad phi(x) + (gamma/lambda) grad phi(rprox(x)) + noise
  bplmc_test::for_all(200, 43, [](bplmc_test::Gen& g) {
    const auto phi = LegendreMap::exponential(1);
    const double lambda = g.log_uniform(1e-2, 0.5);
    const double gamma = lambda * g.uniform(0.05, 0.95);
    const auto cfg = make_cfg(phi, phi, NonsmoothTerm::weighted_l1({g.log_uniform(0.1, 2.0)}), lambda, gamma,
                              Side::Right);
    const double x = g.uniform(-2.0, 2.0);
    const double xi = g.uniform(-2.0, 2.0);
    const double p = bplmc::prox(cfg.surrogate.pair(), Vec{x})[0];
    const double t = gamma / lambda;
    const double y = (1.0 - t) * phi.grad_at(0, x) + t * phi.grad_at(0, p) +
                     std::sqrt(2.0 * gamma) * std::sqrt(phi.hess_at(0, x)) * xi;
    if (y <= 0.0) return;  // the step would leave the conjugate domain
    const double got = bplmc::bmumla_update(cfg, Vec{x}, Vec{xi})[0];
    CHECK(std::fabs(got - phi.conj_grad_at(0, y)) <= 1e-12 * (1.0 + std::fabs(got)));
  });
}

TEST_CASE("Euclidean chain reproduces an independent MYULA recursion bitwise") {
  auto cfg = euclid_l1(3, 0.05, 0.02);
  cfg.iterations = 500;
  cfg.seed = 99;
  cfg.x0 = {1.0, -2.0, 0.5};
  const auto batch = bplmc::run_chain(cfg);

  bplmc::Rng rng(99);
  Vec x = cfg.x0, xi(3);
  const double s2g = std::sqrt(2.0 * cfg.gamma);
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    rng.fill_normal(xi);
    Vec next(3);
    for (std::size_t i = 0; i < 3; ++i) {
      const double thr = static_cast<double>(i + 1) * cfg.surrogate.pair().lambda();
      const double a = std::fabs(x[i]) - thr;
      const double p = a <= 0.0 ? 0.0 : std::copysign(a, x[i]);
      const double grad = (x[i] - p) / 0.05;
      next[i] = (x[i] - cfg.gamma * grad) + s2g * xi[i];
    }
    x = next;
    for (std::size_t i = 0; i < 3; ++i) REQUIRE(batch.at(k, i) == x[i]);
  }
}

TEST_CASE("zero nonsmooth term gives the Hessian Riemannian recursion bitwise") {
  auto cfg = make_cfg(LegendreMap::hypentropy({0.7, 2.0}), LegendreMap::squared_euclidean(2), NonsmoothTerm::zero(2),
                      0.1, 1e-3);
  cfg.iterations = 300;
  cfg.seed = 5;
  cfg.x0 = {0.3, -0.4};
  const auto batch = bplmc::run_chain(cfg);
  bplmc::Rng rng(5);
  Vec x = cfg.x0, xi(2);
  const double beta[2] = {0.7, 2.0};
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    rng.fill_normal(xi);
    for (std::size_t i = 0; i < 2; ++i) {
      const double hess = 1.0 / std::sqrt(x[i] * x[i] + beta[i] * beta[i]);
      const double y = bplmc::arsinh(x[i] / beta[i]) - cfg.gamma * 0.0 + std::sqrt(2.0 * cfg.gamma) * std::sqrt(hess) * xi[i];
      x[i] = beta[i] * std::sinh(y);
    }
    for (std::size_t i = 0; i < 2; ++i) CHECK(batch.at(k, i) == doctest::Approx(x[i]).epsilon(1e-13));
  }
}

TEST_CASE("run_chain bookkeeping and determinism") {
  auto cfg = euclid_l1(2, 0.1, 0.01);
  cfg.iterations = 10;
  CHECK(bplmc::run_chain(cfg).rows == 10);
  cfg.iterations = 103;
  cfg.burn_in = 10;
  cfg.thin = 7;
  const auto a = bplmc::run_chain(cfg);
  CHECK(a.rows == 14);  // ceil(93 / 7)
  CHECK(a.data.size() == 28);
  const auto b = bplmc::run_chain(cfg);
  CHECK(a.data == b.data);
  CHECK(a.config_hash == b.config_hash);
  cfg.seed = 1;
  CHECK(bplmc::run_chain(cfg).data != a.data);
  CHECK(bplmc::run_chain(cfg).config_hash != a.config_hash);
}

TEST_CASE("every variant is deterministic and the step functions agree with run_chain") {
  for (Variant v : {Variant::BMUMLA, Variant::BMUMLA_Dual, Variant::BMMMLA}) {
    auto cfg = make_cfg(LegendreMap::hypentropy({1.0, 3.0}), LegendreMap::weighted_quadratic({0.5, 1.0}),
                        NonsmoothTerm::weighted_l1({1.0, 2.0}), 0.01, 0.005);
    cfg.variant = v;
    cfg.inner_steps = 3;
    cfg.iterations = 20;
    cfg.seed = 11;
    const auto batch = bplmc::run_chain(cfg);
    auto s = bplmc::initial_state(cfg);
    for (std::size_t k = 0; k < 20; ++k) {
      switch (v) {
        case Variant::BMUMLA: s = bplmc::bmumla_step(cfg, s); break;
        case Variant::BMUMLA_Dual: s = bplmc::bmumla_dual_step(cfg, s); break;
        case Variant::BMMMLA: s = bplmc::bmmmla_step(cfg, s); break;
      }
      CHECK(s.step_index == k + 1);
      for (std::size_t i = 0; i < 2; ++i) REQUIRE(batch.at(k, i) == s.position[i]);
    }
  }
}

TEST_CASE("replicas: seeds, serial equivalence and the replica mean") {
  auto cfg = euclid_l1(3, 0.1, 0.01);
  cfg.iterations = 50;
  cfg.seed = 1000;
  const auto par = bplmc::run_replicas(cfg, 4, 2);
  const auto ser = bplmc::run_replicas_serial(cfg, 4);
  REQUIRE(par.size() == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(par[r].data == ser[r].data);
    CHECK(par[r].seed == 1000 + r);
  }
  CHECK(par[0].data != par[1].data);
  CHECK(bplmc::run_replicas(cfg, 1)[0].data == bplmc::run_chain(cfg).data);

  // Mean over replicas at a fixed iteration, by direct arithmetic.
  const std::size_t k = 37;
  for (std::size_t i = 0; i < 3; ++i) {
    double mean = 0.0;
    for (const auto& b : par) mean += b.at(k, i);
    mean /= 4.0;
    const double want = (par[0].at(k, i) + par[1].at(k, i) + par[2].at(k, i) + par[3].at(k, i)) / 4.0;
    CHECK(mean == doctest::Approx(want).epsilon(1e-15));
  }
  CHECK_THROWS_AS(bplmc::run_replicas(cfg, 0), bplmc::ConfigError);
}

TEST_CASE("invalid configurations are rejected") {
  auto cfg = euclid_l1(2, 0.1, 0.01);
  cfg.iterations = 10;
  cfg.burn_in = 10;
  CHECK_THROWS_AS(cfg.validate(), bplmc::ConfigError);
  cfg.burn_in = 0;
  cfg.gamma = -1.0;
  CHECK_THROWS_AS(cfg.validate(), bplmc::ConfigError);
  cfg.gamma = 0.01;
  cfg.thin = 0;
  CHECK_THROWS_AS(cfg.validate(), bplmc::ConfigError);
  cfg.thin = 1;
  cfg.x0 = {1.0};
  CHECK_THROWS_AS(cfg.validate(), bplmc::DimensionError);
}

TEST_CASE("a huge step size diverges with a step index") {
  auto cfg = make_cfg(LegendreMap::exponential(1), LegendreMap::squared_euclidean(1),
                      NonsmoothTerm::weighted_l1({1.0}), 0.01, 50.0);
  cfg.iterations = 1000;
  cfg.x0 = {0.5};
  try {
    (void)bplmc::run_chain(cfg);
    FAIL("expected divergence");
  } catch (const bplmc::DivergenceError& e) {
    CHECK(e.step() < 1000);
    REQUIRE(e.last_finite_position().size() == 1);
    CHECK(std::isfinite(e.last_finite_position()[0]));
  }
}
