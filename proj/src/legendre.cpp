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

#include "bplmc/legendre.hpp"

#include <cmath>
#include <string>

#include "bplmc/error.hpp"
#include "bplmc/special.hpp"

namespace bplmc {

std::string_view to_string(LegendreKind kind) {
  switch (kind) {
    case LegendreKind::SquaredEuclidean: return "squared_euclidean";
    case LegendreKind::WeightedQuadratic: return "weighted_quadratic";
    case LegendreKind::Hypentropy: return "hypentropy";
    case LegendreKind::Exponential: return "exponential";
  }
  return "unknown";
}

namespace {

void check_params(const Vec& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string(what) + ": empty parameter vector");
  for (double v : p) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(what) + ": parameters must be positive and finite");
    }
  }
}

}  // namespace

LegendreMap::LegendreMap(LegendreKind kind, std::size_t dim, Vec params)
    : kind_(kind), dim_(dim), params_(std::move(params)) {
  if (dim_ == 0) throw ConfigError("LegendreMap: dimension must be positive");
}

LegendreMap LegendreMap::squared_euclidean(std::size_t dim) {
  return LegendreMap(LegendreKind::SquaredEuclidean, dim, {});
}

LegendreMap LegendreMap::weighted_quadratic(Vec m) {
  check_params(m, "weighted_quadratic");
  const std::size_t d = m.size();
  return LegendreMap(LegendreKind::WeightedQuadratic, d, std::move(m));
}

LegendreMap LegendreMap::hypentropy(Vec beta) {
  check_params(beta, "hypentropy");
  const std::size_t d = beta.size();
  return LegendreMap(LegendreKind::Hypentropy, d, std::move(beta));
}

LegendreMap LegendreMap::exponential(std::size_t dim) {
  return LegendreMap(LegendreKind::Exponential, dim, {});
}

LegendreMap LegendreMap::coordinate(std::size_t i) const {
  if (i >= dim_) throw DimensionError("LegendreMap::coordinate", dim_, i);
  if (params_.empty()) return LegendreMap(kind_, 1, {});
  return LegendreMap(kind_, 1, Vec{params_[i]});
}

double LegendreMap::value_at(std::size_t i, double x) const {
  switch (kind_) {
    case LegendreKind::SquaredEuclidean: return 0.5 * x * x;
    case LegendreKind::WeightedQuadratic: return 0.5 * param(i) * x * x;
    case LegendreKind::Hypentropy: {
      const double b = param(i);
      return x * arsinh(x / b) - std::hypot(x, b);
    }
    case LegendreKind::Exponential: return std::exp(x);
  }
  return 0.0;
}

double LegendreMap::grad_at(std::size_t i, double x) const {
  switch (kind_) {
    case LegendreKind::SquaredEuclidean: return x;
    case LegendreKind::WeightedQuadratic: return param(i) * x;
    case LegendreKind::Hypentropy: return arsinh(x / param(i));
    case LegendreKind::Exponential: return std::exp(x);
  }
  return 0.0;
}

double LegendreMap::conj_grad_at(std::size_t i, double y) const {
  switch (kind_) {
    case LegendreKind::SquaredEuclidean: return y;
    case LegendreKind::WeightedQuadratic: return y / param(i);
    case LegendreKind::Hypentropy: return param(i) * std::sinh(y);
    case LegendreKind::Exponential:
      if (!(y > 0.0)) {
        throw DomainError("exponential conj_grad: dual coordinate must be positive, got " +
                          std::to_string(y));
      }
      return std::log(y);
  }
  return 0.0;
}

double LegendreMap::hess_at(std::size_t i, double x) const {
  switch (kind_) {
    case LegendreKind::SquaredEuclidean: return 1.0;
    case LegendreKind::WeightedQuadratic: return param(i);
    case LegendreKind::Hypentropy: return 1.0 / std::sqrt(x * x + param(i) * param(i));
    case LegendreKind::Exponential: return std::exp(x);
  }
  return 0.0;
}

double LegendreMap::conj_hess_inv_sqrt_at(std::size_t i, double y) const {
  switch (kind_) {
    case LegendreKind::SquaredEuclidean: return 1.0;
    case LegendreKind::WeightedQuadratic: return std::sqrt(param(i));
    case LegendreKind::Hypentropy: return 1.0 / std::sqrt(param(i) * std::cosh(y));
    case LegendreKind::Exponential:
      // hess phi*(y) = 1/y on the positive orthant.
      if (!(y > 0.0)) {
        throw DomainError("exponential conj_hess: dual coordinate must be positive");
      }
      return std::sqrt(y);
  }
  return 0.0;
}

double LegendreMap::value(ConstSpan x) const {
  require_dim("LegendreMap::value", dim_, x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += value_at(i, x[i]);
  return s;
}

Vec LegendreMap::grad(ConstSpan x) const {
  require_dim("LegendreMap::grad", dim_, x.size());
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = grad_at(i, x[i]);
  return out;
}

Vec LegendreMap::conj_grad(ConstSpan y) const {
  require_dim("LegendreMap::conj_grad", dim_, y.size());
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = conj_grad_at(i, y[i]);
  return out;
}

Vec LegendreMap::hess_diag(ConstSpan x) const {
  require_dim("LegendreMap::hess_diag", dim_, x.size());
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = hess_at(i, x[i]);
  return out;
}

Vec LegendreMap::conj_hess_inv_sqrt_diag(ConstSpan y) const {
  require_dim("LegendreMap::conj_hess_inv_sqrt_diag", dim_, y.size());
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = conj_hess_inv_sqrt_at(i, y[i]);
  return out;
}

}  // namespace bplmc
