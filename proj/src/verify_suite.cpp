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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bplmc/envelope.hpp"
#include "bplmc/error.hpp"
#include "bplmc/rng.hpp"
#include "bplmc/special.hpp"
#include "bplmc/verify.hpp"

namespace bplmc {

namespace {

struct Check {
  std::string name;
  std::function<CheckResult()> run;
};

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

CheckResult at_most(std::string name, double metric, double threshold, std::string detail = {}) {
  return {std::move(name), metric <= threshold, metric, threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double metric, double threshold, std::string detail = {}) {
  return {std::move(name), metric >= threshold, metric, threshold, std::move(detail)};
}

struct Instance {
  ProxPair pair;
  double x;
};

using InstanceMaker = std::function<Instance(Rng&)>;

Instance make_quadratic_l1(Rng& rng) {
  const double m = log_uniform(rng, 0.25, 4.0);
  const double w = log_uniform(rng, 0.1, 5.0);
  const double lambda = log_uniform(rng, 1e-3, 1.0);
  const Side side = rng.uniform() < 0.5 ? Side::Left : Side::Right;
  return {ProxPair(LegendreMap::weighted_quadratic({m}), NonsmoothTerm::weighted_l1({w}), side,
                   lambda),
          uniform_in(rng, -5.0, 5.0)};
}

Instance make_hypentropy_l1(Rng& rng) {
  const double sigma = log_uniform(rng, 0.1, 10.0);
  const double w = log_uniform(rng, 0.1, 5.0);
  const double lambda = log_uniform(rng, 1e-3, 1.0);
  return {ProxPair(LegendreMap::hypentropy({sigma}), NonsmoothTerm::weighted_l1({w}), Side::Left,
                   lambda),
          uniform_in(rng, -5.0, 5.0)};
}

Instance make_exponential_l1(Rng& rng, Side side) {
  const double w = log_uniform(rng, 0.1, 5.0);
  const double lambda = log_uniform(rng, 1e-3, 1.0);
  return {ProxPair(LegendreMap::exponential(1), NonsmoothTerm::weighted_l1({w}), side, lambda),
          uniform_in(rng, -3.0, 3.0)};
}

LegendreMap random_map(Rng& rng) {
  switch (static_cast<int>(rng.uniform() * 4.0)) {
    case 0: return LegendreMap::squared_euclidean(1);
    case 1: return LegendreMap::weighted_quadratic({log_uniform(rng, 0.25, 4.0)});
    case 2: return LegendreMap::hypentropy({log_uniform(rng, 0.1, 10.0)});
    default: return LegendreMap::exponential(1);
  }
}

Instance make_box(Rng& rng) {
  const double a = uniform_in(rng, -3.0, 1.0);
  const double b = a + log_uniform(rng, 0.05, 4.0);
  const Side side = rng.uniform() < 0.5 ? Side::Left : Side::Right;
  return {ProxPair(random_map(rng), NonsmoothTerm::box({a}, {b}), side,
                   log_uniform(rng, 1e-3, 1.0)),
          uniform_in(rng, -5.0, 5.0)};
}

// Worst |closed form - oracle| over n random instances.
CheckResult oracle_check(const std::string& name, const InstanceMaker& make,
                         const VerifyOptions& opt, std::uint64_t salt) {
  Rng rng(opt.seed + salt);
  std::vector<Instance> instances;
  instances.reserve(static_cast<std::size_t>(opt.instances));
  for (int k = 0; k < opt.instances; ++k) instances.push_back(make(rng));
  std::vector<double> err(instances.size(), 0.0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(instances.size()); ++k) {
    try {
      const Instance& in = instances[k];
      const double closed = prox_at(in.pair, 0, in.x) + opt.prox_corruption;
      const double ref =
          grid_prox_oracle(in.pair.psi(), in.pair.g(), in.pair.lambda(), in.pair.side(), in.x);
      err[k] = std::fabs(closed - ref);
    } catch (...) {
#pragma omp critical(bplmc_verify_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  const auto worst = std::max_element(err.begin(), err.end());
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d instances, worst at x=%.6g", opt.instances,
                instances[worst - err.begin()].x);
  return at_most(name, *worst, 1e-6, detail);
}

std::vector<ProxPair> envelope_catalog() {
  return {
      ProxPair(LegendreMap::weighted_quadratic({2.0}), NonsmoothTerm::weighted_l1({1.5}),
               Side::Left, 0.2),
      ProxPair(LegendreMap::hypentropy({0.7}), NonsmoothTerm::weighted_l1({2.0}), Side::Left,
               0.1),
      ProxPair(LegendreMap::exponential(1), NonsmoothTerm::weighted_l1({0.8}), Side::Left, 0.5),
      ProxPair(LegendreMap::exponential(1), NonsmoothTerm::weighted_l1({1.2}), Side::Right, 0.3),
      ProxPair(LegendreMap::squared_euclidean(1), NonsmoothTerm::box({-1.0}, {2.0}), Side::Left,
               0.4),
      ProxPair(LegendreMap::hypentropy({1.5}), NonsmoothTerm::weighted_l1({1.0}), Side::Right,
               0.2),
  };
}

// Which smooth piece of the envelope x falls in, read off the prox value.
int branch_of(const ProxPair& pair, double x) {
  const double p = prox_at(pair, 0, x);
  const NonsmoothTerm& g = pair.g();
  if (g.kind() == NonsmoothKind::BoxIndicator) {
    if (p <= g.lower()[0]) return -1;
    if (p >= g.upper()[0]) return 1;
    return 0;
  }
  return p < 0.0 ? -1 : (p > 0.0 ? 1 : 0);
}

CheckResult envelope_lower_bound(const VerifyOptions& opt) {
  Rng rng(opt.seed + 11);
  double worst = 0.0;
  for (const ProxPair& pair : envelope_catalog()) {
    for (int k = 0; k < 200; ++k) {
      const double x = uniform_in(rng, -4.0, 4.0);
      const double gx = pair.g().value_at(0, x);
      if (std::isinf(gx)) continue;
      const double t[1] = {x};
      worst = std::max(worst, env_value(pair, t) - gx);
    }
  }
  return at_most("envelope.lower_bound", worst, 1e-12, "max env - g");
}

CheckResult envelope_monotone(const VerifyOptions& opt) {
  Rng rng(opt.seed + 12);
  const double lambdas[] = {1e-4, 1e-3, 1e-2, 1e-1, 0.3, 1.0};
  double worst = 0.0;
  for (const ProxPair& base : envelope_catalog()) {
    for (int k = 0; k < 100; ++k) {
      const double t[1] = {uniform_in(rng, -4.0, 4.0)};
      double prev = std::numeric_limits<double>::infinity();
      for (double l : lambdas) {
        const double e = env_value(base.with_lambda(l), t);
        worst = std::max(worst, (e - prev) / (1.0 + std::fabs(prev)));
        prev = e;
      }
    }
  }
  return at_most("envelope.monotone_lambda", worst, 1e-12, "max relative increase in lambda");
}

CheckResult envelope_convergence(const VerifyOptions& opt) {
  Rng rng(opt.seed + 13);
  double worst = 0.0;
  for (const ProxPair& base : envelope_catalog()) {
    const ProxPair pair = base.with_lambda(1e-8);
    for (int k = 0; k < 100; ++k) {
      const double x = uniform_in(rng, -1.0, 2.0);
      const double t[1] = {x};
      const double gx = pair.g().value_at(0, x);
      worst = std::max(worst, std::fabs(gx - env_value(pair, t)) / (1.0 + std::fabs(gx)));
    }
  }
  return at_most("envelope.small_lambda_limit", worst, 1e-6, "max |g - env| at lambda 1e-8");
}

CheckResult envelope_fd(const VerifyOptions& opt) {
  Rng rng(opt.seed + 14);
  double worst = 0.0;
  for (const ProxPair& pair : envelope_catalog()) {
    std::vector<Vec> points;
    while (points.size() < 100) {
      const double x = uniform_in(rng, -3.0, 3.0);
      const int b = branch_of(pair, x);
      if (branch_of(pair, x - 1e-3) != b || branch_of(pair, x + 1e-3) != b) continue;
      points.push_back({x});
    }
    worst = std::max(worst, fd_gradient_check([&](ConstSpan t) { return env_value(pair, t); },
                                              [&](ConstSpan t) { return env_grad(pair, t); },
                                              points));
  }
  return at_most("envelope.fd_gradient", worst, 1e-5, "central FD, h = 1e-6");
}

std::vector<LegendreMap> legendre_catalog() {
  return {LegendreMap::squared_euclidean(3), LegendreMap::weighted_quadratic({0.5, 2.0, 7.0}),
          LegendreMap::hypentropy({0.1, 1.0, 20.0}), LegendreMap::exponential(3)};
}

CheckResult legendre_inverse(const VerifyOptions& opt) {
  Rng rng(opt.seed + 21);
  double worst = 0.0;
  for (const LegendreMap& map : legendre_catalog()) {
    for (int k = 0; k < 300; ++k) {
      const Vec x{uniform_in(rng, -8.0, 8.0), uniform_in(rng, -8.0, 8.0),
                  uniform_in(rng, -8.0, 8.0)};
      const Vec back = map.conj_grad(map.grad(x));
      for (std::size_t i = 0; i < 3; ++i) {
        worst = std::max(worst, std::fabs(back[i] - x[i]) / (1.0 + std::fabs(x[i])));
      }
    }
  }
  return at_most("legendre.conjugate_inverse", worst, 1e-12, "conj_grad(grad(x)) vs x");
}

CheckResult legendre_grad_fd(const VerifyOptions& opt) {
  Rng rng(opt.seed + 22);
  double worst = 0.0;
  for (const LegendreMap& map : legendre_catalog()) {
    std::vector<Vec> points;
    for (int k = 0; k < 50; ++k) {
      points.push_back({uniform_in(rng, -4.0, 4.0), uniform_in(rng, -4.0, 4.0),
                        uniform_in(rng, -4.0, 4.0)});
    }
    worst = std::max(worst, fd_gradient_check([&](ConstSpan t) { return map.value(t); },
                                              [&](ConstSpan t) { return map.grad(t); }, points));
    for (std::size_t i = 0; i < 3; ++i) {
      worst = std::max(
          worst, fd_gradient_check([&](ConstSpan t) { return map.grad_at(i, t[0]); },
                                   [&](ConstSpan t) { return Vec{map.hess_at(i, t[0])}; },
                                   [&] {
                                     std::vector<Vec> pts;
                                     for (const Vec& p : points) pts.push_back({p[i]});
                                     return pts;
                                   }()));
    }
  }
  return at_most("legendre.derivatives_fd", worst, 1e-6, "value->grad and grad->hess");
}

CheckResult legendre_conj_hess(const VerifyOptions& opt) {
  Rng rng(opt.seed + 23);
  double worst = 0.0;
  for (const LegendreMap& map : legendre_catalog()) {
    for (int k = 0; k < 300; ++k) {
      const std::size_t i = static_cast<std::size_t>(rng.uniform() * 3.0);
      const double x = uniform_in(rng, -6.0, 6.0);
      const double y = map.grad_at(i, x);
      const double s = map.conj_hess_inv_sqrt_at(i, y);
      const double h = map.hess_at(i, x);
      worst = std::max(worst, std::fabs(s * s - h) / h);
    }
  }
  return at_most("legendre.conjugate_hessian", worst, 1e-12,
                 "conj_hess_inv_sqrt(grad x)^2 vs hess(x)");
}

CheckResult lambert_roundtrip(const VerifyOptions& opt) {
  Rng rng(opt.seed + 31);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double w = uniform_in(rng, -1.0, 20.0);
    worst = std::max(worst, std::fabs(lambert_w0(w * std::exp(w)) - w) / (1.0 + std::fabs(w)));
  }
  return at_most("special.lambert_roundtrip", worst, 1e-10, "w in [-1, 20]");
}

CheckResult lambert_fixed_points(const VerifyOptions&) {
  const double e = std::exp(1.0);
  const double worst = std::max({std::fabs(lambert_w0(-1.0 / e) + 1.0),
                                 std::fabs(lambert_w0(e) - 1.0), std::fabs(lambert_w0(0.0))});
  return at_most("special.lambert_fixed_points", worst, 1e-12, "W(-1/e), W(0), W(e)");
}

CompositePotential laplace_1d(double rate) {
  return CompositePotential(SmoothTerm::zero(1), NonsmoothTerm::weighted_l1({rate}));
}

CheckResult tv_check(double lambda) {
  const TvBoundResult r =
      tv_bound_check_1d(1.0, 1.0, lambda, laplace_1d(1.0), LegendreMap::squared_euclidean(1));
  char name[48];
  std::snprintf(name, sizeof name, "tv_bound.lambda_%g", lambda);
  CheckResult c = at_most(name, r.tv_estimate, r.bound + 1e-6, "Laplace(1), psi = x^2/2");
  return c;
}

CheckResult tv_monotone(const VerifyOptions&) {
  double prev = 0.0;
  double worst = 0.0;
  for (double lambda : {1e-3, 1e-2, 1e-1}) {
    const double tv =
        tv_bound_check_1d(1.0, 1.0, lambda, laplace_1d(1.0), LegendreMap::squared_euclidean(1))
            .tv_estimate;
    worst = std::max(worst, prev - tv);
    prev = tv;
  }
  return at_most("tv_bound.monotone", worst, 0.0, "max decrease as lambda grows");
}

// The 1-d slices of the two experiments whose assumptions are certified on grids.
constexpr int kGridDim = 100;
constexpr int kGridIndices[] = {1, 10, 40, 70, 100};

double hypentropy_beta(int i) { return 2.0 * std::sqrt(static_cast<double>(kGridDim - i + 1)); }

double full_mirror_constant() {
  Vec beta(kGridDim);
  for (int i = 1; i <= kGridDim; ++i) beta[i - 1] = hypentropy_beta(i);
  return self_concordance_constant(beta);
}

AssumptionReport laplace_report(int i) {
  const double m_phi = full_mirror_constant();
  const ProxPair pair(LegendreMap::hypentropy({static_cast<double>(kGridDim - i + 1)}),
                      NonsmoothTerm::weighted_l1({static_cast<double>(i)}), Side::Left, 1e-5);
  return check_relative_assumptions(pair, LegendreMap::hypentropy({hypentropy_beta(i)}),
                                    2.0 * m_phi + 0.1, 2500.0, -3.0, 3.0, 2001, m_phi);
}

AssumptionReport box_report(int i) {
  const double m_phi = full_mirror_constant();
  const double half = static_cast<double>(i);
  const ProxPair pair(LegendreMap::squared_euclidean(1), NonsmoothTerm::box({-half}, {half}),
                      Side::Left, 1.0);
  return check_relative_assumptions(pair, LegendreMap::hypentropy({hypentropy_beta(i)}),
                                    2.0 * m_phi + 0.1, 250.0, -(half + 3.0), half + 3.0, 2001,
                                    m_phi);
}

CheckResult constants_self_concordance(const VerifyOptions&) {
  const double one[1] = {1.0};
  const double expected = 1.0 / (2.0 * std::pow(3.0, 1.5));
  double err = std::fabs(self_concordance_constant(one) - expected);
  // The derivative of (phi*'')^{-1/2} = (beta cosh t)^{-1/2} stays below 1/(sqrt2 3^{3/4}).
  double peak = 0.0;
  for (int k = 0; k <= 200000; ++k) {
    const double t = -10.0 + 20.0 * k / 200000.0;
    peak = std::max(peak, std::fabs(0.5 * std::sinh(t) * std::pow(std::cosh(t), -1.5)));
  }
  const double cap = 1.0 / (std::sqrt(2.0) * std::pow(3.0, 0.75));
  err = std::max(err, std::max(0.0, peak - cap));
  char detail[96];
  std::snprintf(detail, sizeof detail, "grid peak %.10f vs bound %.10f", peak, cap);
  return at_most("constants.self_concordance", err, 1e-12, detail);
}

CheckResult constants_relative_smoothness(const VerifyOptions& opt) {
  Rng rng(opt.seed + 41);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double a[1] = {log_uniform(rng, 0.1, 10.0)};
    const double b[1] = {log_uniform(rng, 0.01, 10.0)};
    const double m[1] = {log_uniform(rng, 0.1, 10.0)};
    const double lambda = log_uniform(rng, 1e-5, 1.0);
    const double formula = relative_smoothness_constant(a, b, lambda, m);
    const double reach = lambda * a[0] / m[0];
    double grid = 0.0;
    for (int j = 0; j <= 1000; ++j) {
      const double t = -reach + 2.0 * reach * j / 1000.0;
      grid = std::max(grid, m[0] * std::sqrt(t * t + b[0] * b[0]) / lambda);
    }
    worst = std::max(worst, std::fabs(formula - grid) / formula);
  }
  return at_most("constants.relative_smoothness", worst, 1e-8, "formula vs dense grid sup");
}

std::vector<Check> build_checks(const VerifyOptions& opt) {
  std::vector<Check> checks;
  auto add = [&](std::string name, std::function<CheckResult()> fn) {
    checks.push_back({std::move(name), std::move(fn)});
  };
  add("oracle.quadratic_l1",
      [&opt] { return oracle_check("oracle.quadratic_l1", make_quadratic_l1, opt, 1); });
  add("oracle.hypentropy_l1_left",
      [&opt] { return oracle_check("oracle.hypentropy_l1_left", make_hypentropy_l1, opt, 2); });
  add("oracle.exponential_l1_left", [&opt] {
    return oracle_check("oracle.exponential_l1_left",
                        [](Rng& r) { return make_exponential_l1(r, Side::Left); }, opt, 3);
  });
  add("oracle.exponential_l1_right", [&opt] {
    return oracle_check("oracle.exponential_l1_right",
                        [](Rng& r) { return make_exponential_l1(r, Side::Right); }, opt, 4);
  });
  add("oracle.box", [&opt] { return oracle_check("oracle.box", make_box, opt, 5); });
  add("envelope.lower_bound", [&opt] { return envelope_lower_bound(opt); });
  add("envelope.monotone_lambda", [&opt] { return envelope_monotone(opt); });
  add("envelope.small_lambda_limit", [&opt] { return envelope_convergence(opt); });
  add("envelope.fd_gradient", [&opt] { return envelope_fd(opt); });
  add("legendre.conjugate_inverse", [&opt] { return legendre_inverse(opt); });
  add("legendre.derivatives_fd", [&opt] { return legendre_grad_fd(opt); });
  add("legendre.conjugate_hessian", [&opt] { return legendre_conj_hess(opt); });
  add("special.lambert_roundtrip", [&opt] { return lambert_roundtrip(opt); });
  add("special.lambert_fixed_points", [&opt] { return lambert_fixed_points(opt); });
  for (double lambda : {1e-3, 1e-2, 1e-1}) {
    char name[48];
    std::snprintf(name, sizeof name, "tv_bound.lambda_%g", lambda);
    add(name, [lambda] { return tv_check(lambda); });
  }
  add("tv_bound.monotone", [&opt] { return tv_monotone(opt); });
  for (int i : kGridIndices) {
    const std::string suffix = ".i" + std::to_string(i);
    add("assumptions.laplace_convexity" + suffix, [i, suffix] {
      const AssumptionReport r = laplace_report(i);
      return at_least("assumptions.laplace_convexity" + suffix,
                      r.min_second_difference_convexity, kGridCheckTolerance,
                      "env - alpha phi, alpha = " + std::to_string(r.alpha));
    });
    add("assumptions.laplace_smoothness" + suffix, [i, suffix] {
      const AssumptionReport r = laplace_report(i);
      return at_least("assumptions.laplace_smoothness" + suffix,
                      r.min_second_difference_smoothness, kGridCheckTolerance,
                      "beta_g phi - env, beta_g = 2500");
    });
  }
  for (int i : kGridIndices) {
    const std::string suffix = ".i" + std::to_string(i);
    add("assumptions.box_convexity" + suffix, [i, suffix] {
      const AssumptionReport r = box_report(i);
      return at_least("assumptions.box_convexity" + suffix, r.min_second_difference_convexity,
                      kGridCheckTolerance,
                      "env - alpha phi, alpha = " + std::to_string(r.alpha));
    });
    add("assumptions.box_smoothness" + suffix, [i, suffix] {
      const AssumptionReport r = box_report(i);
      return at_least("assumptions.box_smoothness" + suffix, r.min_second_difference_smoothness,
                      kGridCheckTolerance, "beta_g phi - env, beta_g = 250");
    });
  }
  add("constants.self_concordance", [&opt] { return constants_self_concordance(opt); });
  add("constants.relative_smoothness", [&opt] { return constants_relative_smoothness(opt); });
  return checks;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  for (const Check& c : build_checks(opt)) {
    if (!opt.filter.empty() && c.name.find(opt.filter) == std::string::npos) continue;
    try {
      out.push_back(c.run());
    } catch (const std::exception& e) {
      out.push_back({c.name, false, std::numeric_limits<double>::quiet_NaN(), 0.0,
                     std::string("error: ") + e.what()});
    }
  }
  return out;
}

std::vector<std::string> verify_check_names() {
  std::vector<std::string> names;
  for (const Check& c : build_checks(VerifyOptions{})) names.push_back(c.name);
  return names;
}

}  // namespace bplmc
