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

#include "bplmc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bplmc/error.hpp"
#include "bplmc/minimize.hpp"
#include "bplmc/special.hpp"

namespace bplmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_quadratic(LegendreKind k) {
  return k == LegendreKind::SquaredEuclidean || k == LegendreKind::WeightedQuadratic;
}

double quad_weight(const LegendreMap& psi, std::size_t i) {
  return psi.kind() == LegendreKind::WeightedQuadratic ? psi.params()[i] : 1.0;
}

double soft_threshold(double x, double mu) {
  const double a = std::fabs(x) - mu;
  if (a <= 0.0) return 0.0;
  return std::copysign(a, x);
}

double hypentropy_left_l1(double x, double sigma, double c) {
  const double thr = sigma * std::sinh(c);
  if (x > thr) return sigma * std::sinh(arsinh(x / sigma) - c);
  if (x < -thr) return sigma * std::sinh(arsinh(x / sigma) + c);
  return 0.0;
}

double exponential_left_l1(double x, double c) {
  if (x > std::log1p(c)) return x + std::log1p(-c * std::exp(-x));
  if (c < 1.0 && x < std::log1p(-c)) return x + std::log1p(c * std::exp(-x));
  return 0.0;
}

double exponential_right_l1(double x, double c) {
  if (x > c) return lambert_w0(-c * std::exp(-x)) + x;
  // D_exp(x, .) is not convex in its second argument: for c > 1 and
  // 1 + log c <= x <= c a positive local minimum competes with 0.
  if (x > 0.0 && x >= 1.0 + std::log(c)) {
    const double v = lambert_w0(-c * std::exp(-x)) + x;
    // objective(v) - objective(0), using e^v (x - v) = c at the stationary point
    const double gain = c * v - std::exp(v) - c + 1.0 + x;
    if (v > 0.0 && gain < 0.0) return v;
  }
  if (x < -c) {
    const double arg = c * std::exp(-x);
    if (!std::isfinite(arg)) {
      throw DomainError("exponential right prox: argument overflow at x = " + std::to_string(x));
    }
    return lambert_w0(arg) + x;
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(NonsmoothKind kind) {
  switch (kind) {
    case NonsmoothKind::Zero: return "zero";
    case NonsmoothKind::WeightedL1: return "weighted_l1";
    case NonsmoothKind::BoxIndicator: return "box";
  }
  return "unknown";
}

std::string_view to_string(Side side) { return side == Side::Left ? "left" : "right"; }

NonsmoothTerm NonsmoothTerm::zero(std::size_t dim) {
  if (dim == 0) throw ConfigError("NonsmoothTerm: dimension must be positive");
  return NonsmoothTerm(NonsmoothKind::Zero, dim);
}

NonsmoothTerm NonsmoothTerm::weighted_l1(Vec weights) {
  if (weights.empty()) throw ConfigError("weighted_l1: empty weights");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ConfigError("weighted_l1: weights must be finite and nonnegative");
    }
  }
  NonsmoothTerm t(NonsmoothKind::WeightedL1, weights.size());
  t.weights_ = std::move(weights);
  return t;
}

NonsmoothTerm NonsmoothTerm::box(Vec lower, Vec upper) {
  if (lower.empty()) throw ConfigError("box: empty bounds");
  require_dim("box bounds", lower.size(), upper.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) throw ConfigError("box: bounds must satisfy a_i < b_i");
  }
  NonsmoothTerm t(NonsmoothKind::BoxIndicator, lower.size());
  t.lower_ = std::move(lower);
  t.upper_ = std::move(upper);
  return t;
}

NonsmoothTerm NonsmoothTerm::coordinate(std::size_t i) const {
  if (i >= dim_) throw DimensionError("NonsmoothTerm::coordinate", dim_, i);
  switch (kind_) {
    case NonsmoothKind::Zero: return zero(1);
    case NonsmoothKind::WeightedL1: return weighted_l1({weights_[i]});
    case NonsmoothKind::BoxIndicator: return box({lower_[i]}, {upper_[i]});
  }
  return zero(1);
}

double NonsmoothTerm::value_at(std::size_t i, double x) const {
  switch (kind_) {
    case NonsmoothKind::Zero: return 0.0;
    case NonsmoothKind::WeightedL1: return weights_[i] * std::fabs(x);
    case NonsmoothKind::BoxIndicator: return (x >= lower_[i] && x <= upper_[i]) ? 0.0 : kInf;
  }
  return 0.0;
}

double NonsmoothTerm::value(ConstSpan x) const {
  require_dim("NonsmoothTerm::value", dim_, x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += value_at(i, x[i]);
  return s;
}

double NonsmoothTerm::anchor_at(std::size_t i, double x) const {
  switch (kind_) {
    case NonsmoothKind::Zero: return x;
    case NonsmoothKind::WeightedL1: return weights_[i] > 0.0 ? 0.0 : x;
    case NonsmoothKind::BoxIndicator: return std::clamp(x, lower_[i], upper_[i]);
  }
  return x;
}

double NonsmoothTerm::lipschitz_squared() const {
  switch (kind_) {
    case NonsmoothKind::Zero: return 0.0;
    case NonsmoothKind::WeightedL1: {
      double s = 0.0;
      for (double w : weights_) s += w * w;
      return s;
    }
    case NonsmoothKind::BoxIndicator: return kInf;
  }
  return 0.0;
}

ProxPair::ProxPair(LegendreMap psi, NonsmoothTerm g, Side side, double lambda)
    : psi_(std::move(psi)), g_(std::move(g)), side_(side), lambda_(lambda) {
  require_dim("ProxPair: g vs psi", psi_.dim(), g_.dim());
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw ConfigError("ProxPair: lambda must be positive and finite");
  }
}

bool ProxPair::has_closed_form() const {
  const LegendreKind k = psi_.kind();
  switch (g_.kind()) {
    case NonsmoothKind::Zero:
    case NonsmoothKind::BoxIndicator: return true;
    case NonsmoothKind::WeightedL1:
      if (is_quadratic(k) || k == LegendreKind::Exponential) return true;
      return k == LegendreKind::Hypentropy && side_ == Side::Left;
  }
  return false;
}

ProxPair ProxPair::coordinate(std::size_t i) const {
  return ProxPair(psi_.coordinate(i), g_.coordinate(i), side_, lambda_);
}

ProxPair ProxPair::with_lambda(double lambda) const { return ProxPair(psi_, g_, side_, lambda); }

double bregman_div_at(const LegendreMap& map, std::size_t i, double x, double y) {
  double d = 0.0;
  switch (map.kind()) {
    case LegendreKind::SquaredEuclidean: d = 0.5 * (x - y) * (x - y); break;
    case LegendreKind::WeightedQuadratic: d = 0.5 * map.params()[i] * (x - y) * (x - y); break;
    case LegendreKind::Hypentropy: {
      const double b = map.params()[i];
      const double sx = std::hypot(x, b);
      const double sy = std::hypot(y, b);
      // sqrt(x^2+b^2) - sqrt(y^2+b^2) without cancellation.
      const double sdiff = (x - y) * (x + y) / (sx + sy);
      d = x * (arsinh(x / b) - arsinh(y / b)) - sdiff;
      break;
    }
    case LegendreKind::Exponential: {
      const double t = x - y;
      d = std::exp(y) * (std::expm1(t) - t);
      break;
    }
  }
  if (std::isnan(d)) return kInf;
  return d < 0.0 ? 0.0 : d;
}

double bregman_div(const LegendreMap& map, ConstSpan x, ConstSpan y) {
  require_dim("bregman_div", map.dim(), x.size());
  require_dim("bregman_div", map.dim(), y.size());
  double s = 0.0;
  for (std::size_t i = 0; i < map.dim(); ++i) s += bregman_div_at(map, i, x[i], y[i]);
  return s;
}

double prox_numeric_at(const ProxPair& pair, std::size_t i, double x) {
  const NonsmoothTerm& g = pair.g();
  const LegendreMap& psi = pair.psi();
  const double lambda = pair.lambda();
  const bool left = pair.side() == Side::Left;
  // g + D/lambda is unimodal between x and the nearest minimizer of g_i.
  const double anchor = g.anchor_at(i, x);
  if (anchor == x) return x;
  const double lo0 = std::min(x, anchor);
  const double hi0 = std::max(x, anchor);
  const double pad = 0.05 * (hi0 - lo0) + 1e-9 * (1.0 + std::fabs(x));
  double lo = lo0 - pad;
  double hi = hi0 + pad;
  if (g.kind() == NonsmoothKind::BoxIndicator) {
    lo = std::max(lo, g.lower()[i]);
    hi = std::min(hi, g.upper()[i]);
  }
  auto objective = [&](long double v) -> long double {
    const double vd = static_cast<double>(v);
    const double gv = g.value_at(i, vd);
    if (std::isinf(gv)) return std::numeric_limits<long double>::infinity();
    const double d = left ? bregman_div_at(psi, i, vd, x) : bregman_div_at(psi, i, x, vd);
    return static_cast<long double>(gv) + static_cast<long double>(d) / lambda;
  };
  return grid_golden_minimize(objective, lo, hi, 200, 1e-10 * (1.0 + std::fabs(x))).argmin;
}

double prox_at(const ProxPair& pair, std::size_t i, double x) {
  const NonsmoothTerm& g = pair.g();
  const LegendreMap& psi = pair.psi();
  switch (g.kind()) {
    case NonsmoothKind::Zero: return x;
    // Bregman projections onto an interval under any separable Legendre
    // function reduce to clamping: D_psi(., x) and D_psi(x, .) are both
    // decreasing towards x.
    case NonsmoothKind::BoxIndicator: return std::clamp(x, g.lower()[i], g.upper()[i]);
    case NonsmoothKind::WeightedL1: break;
  }
  const double w = g.weights()[i];
  if (w == 0.0) return x;
  const double c = w * pair.lambda();
  switch (psi.kind()) {
    case LegendreKind::SquaredEuclidean:
    case LegendreKind::WeightedQuadratic: return soft_threshold(x, c / quad_weight(psi, i));
    case LegendreKind::Hypentropy:
      if (pair.side() == Side::Left) return hypentropy_left_l1(x, psi.params()[i], c);
      return prox_numeric_at(pair, i, x);
    case LegendreKind::Exponential:
      return pair.side() == Side::Left ? exponential_left_l1(x, c) : exponential_right_l1(x, c);
  }
  return prox_numeric_at(pair, i, x);
}

Vec prox(const ProxPair& pair, ConstSpan x) {
  require_dim("prox", pair.dim(), x.size());
  const std::size_t d = x.size();
  Vec out(d);
  // Coordinates are independent, so the parallel result is bit-identical.
#pragma omp parallel for schedule(static) if (d >= 4096)
  for (std::size_t i = 0; i < d; ++i) out[i] = prox_at(pair, i, x[i]);
  return out;
}

double env_value(const ProxPair& pair, ConstSpan x) {
  require_dim("env_value", pair.dim(), x.size());
  const Vec p = prox(pair, x);
  const double lambda = pair.lambda();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = pair.side() == Side::Left ? bregman_div_at(pair.psi(), i, p[i], x[i])
                                               : bregman_div_at(pair.psi(), i, x[i], p[i]);
    s += pair.g().value_at(i, p[i]) + d / lambda;
  }
  return s;
}

double env_grad_at(const ProxPair& pair, std::size_t i, double x) {
  if (pair.g().kind() == NonsmoothKind::Zero) return 0.0;
  const double p = prox_at(pair, i, x);
  const LegendreMap& psi = pair.psi();
  // For quadratic psi both sides reduce to the same expression; sharing it
  // keeps left and right gradients bit-identical.
  if (pair.side() == Side::Left || is_quadratic(psi.kind())) {
    return psi.hess_at(i, x) * (x - p) / pair.lambda();
  }
  return (psi.grad_at(i, x) - psi.grad_at(i, p)) / pair.lambda();
}

Vec env_grad(const ProxPair& pair, ConstSpan x) {
  require_dim("env_grad", pair.dim(), x.size());
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = env_grad_at(pair, i, x[i]);
  return out;
}

}  // namespace bplmc
