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

#include <cstddef>
#include <string_view>

#include "bplmc/legendre.hpp"

namespace bplmc {

enum class NonsmoothKind { Zero, WeightedL1, BoxIndicator };
enum class Side { Left, Right };

std::string_view to_string(NonsmoothKind kind);
std::string_view to_string(Side side);

/// Separable nonsmooth part g of a composite potential.
///   Zero          g = 0
///   WeightedL1    g(x) = sum_i w_i |x_i|          (w_i >= 0)
///   BoxIndicator  g = indicator of prod_i [a_i, b_i]   (a_i < b_i)
class NonsmoothTerm {
 public:
  static NonsmoothTerm zero(std::size_t dim);
  static NonsmoothTerm weighted_l1(Vec weights);
  static NonsmoothTerm box(Vec lower, Vec upper);

  NonsmoothKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const Vec& weights() const { return weights_; }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

  NonsmoothTerm coordinate(std::size_t i) const;

  // May return +infinity (box indicator outside the box).
  double value(ConstSpan x) const;
  double value_at(std::size_t i, double x) const;
  // The minimizer of g_i nearest to x.
  double anchor_at(std::size_t i, double x) const;
  // Lipschitz constant sum_i w_i^2 under the Euclidean norm, squared.
  double lipschitz_squared() const;

 private:
  NonsmoothTerm(NonsmoothKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  NonsmoothKind kind_;
  std::size_t dim_;
  Vec weights_;
  Vec lower_;
  Vec upper_;
};

/// Pairing of a Legendre function psi with g and a smoothing parameter.
///
/// Left:  prox(x) = argmin_v g(v) + D_psi(v, x) / lambda
/// Right: prox(x) = argmin_v g(v) + D_psi(x, v) / lambda
class ProxPair {
 public:
  ProxPair(LegendreMap psi, NonsmoothTerm g, Side side, double lambda);

  const LegendreMap& psi() const { return psi_; }
  const NonsmoothTerm& g() const { return g_; }
  Side side() const { return side_; }
  double lambda() const { return lambda_; }
  std::size_t dim() const { return psi_.dim(); }

  // True if prox is served by an explicit formula rather than the
  // numeric fallback.
  bool has_closed_form() const;

  ProxPair coordinate(std::size_t i) const;
  ProxPair with_lambda(double lambda) const;

 private:
  LegendreMap psi_;
  NonsmoothTerm g_;
  Side side_;
  double lambda_;
};

// D_phi(x, y) = phi(x) - phi(y) - <grad phi(y), x - y>. Evaluations that
// overflow return +infinity.
double bregman_div(const LegendreMap& map, ConstSpan x, ConstSpan y);
double bregman_div_at(const LegendreMap& map, std::size_t i, double x, double y);

Vec prox(const ProxPair& pair, ConstSpan x);
double prox_at(const ProxPair& pair, std::size_t i, double x);
// Numeric per-coordinate solve; used for combinations with no closed form.
double prox_numeric_at(const ProxPair& pair, std::size_t i, double x);

double env_value(const ProxPair& pair, ConstSpan x);
Vec env_grad(const ProxPair& pair, ConstSpan x);
double env_grad_at(const ProxPair& pair, std::size_t i, double x);

}  // namespace bplmc
