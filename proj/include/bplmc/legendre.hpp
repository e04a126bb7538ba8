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
#include <span>
#include <string_view>
#include <vector>

namespace bplmc {

using Vec = std::vector<double>;
using ConstSpan = std::span<const double>;

enum class LegendreKind { SquaredEuclidean, WeightedQuadratic, Hypentropy, Exponential };

std::string_view to_string(LegendreKind kind);

/// A separable Legendre function phi(x) = sum_i phi_i(x_i).
///
/// Every map here has dom phi = R^d. The conjugate domain is R^d except for
/// Exponential, whose conjugate lives on the open positive orthant. Because
/// the maps are separable, Hessians are carried as their diagonals.
///
///   SquaredEuclidean   phi_i(x) = x^2 / 2
///   WeightedQuadratic  phi_i(x) = m_i x^2 / 2                      (m_i > 0)
///   Hypentropy         phi_i(x) = x arsinh(x/b_i) - sqrt(x^2+b_i^2) (b_i > 0)
///   Exponential        phi_i(x) = exp(x)
class LegendreMap {
 public:
  static LegendreMap squared_euclidean(std::size_t dim);
  static LegendreMap weighted_quadratic(Vec m);
  static LegendreMap hypentropy(Vec beta);
  static LegendreMap exponential(std::size_t dim);

  LegendreKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  // Per-dimension parameters (m for WeightedQuadratic, beta for Hypentropy).
  const Vec& params() const { return params_; }

  // Restriction to a single coordinate.
  LegendreMap coordinate(std::size_t i) const;

  double value(ConstSpan x) const;
  Vec grad(ConstSpan x) const;
  // (grad phi)^{-1} = grad phi*. Throws DomainError off the conjugate domain.
  Vec conj_grad(ConstSpan y) const;
  Vec hess_diag(ConstSpan x) const;
  // Diagonal of [hess phi*(y)]^{-1/2}.
  Vec conj_hess_inv_sqrt_diag(ConstSpan y) const;

  // Scalar kernels for coordinate i; the vector operations are built from
  // these and the samplers call them directly in their inner loops.
  double value_at(std::size_t i, double x) const;
  double grad_at(std::size_t i, double x) const;
  double conj_grad_at(std::size_t i, double y) const;
  double hess_at(std::size_t i, double x) const;
  double conj_hess_inv_sqrt_at(std::size_t i, double y) const;

 private:
  LegendreMap(LegendreKind kind, std::size_t dim, Vec params);

  double param(std::size_t i) const { return params_[i]; }

  LegendreKind kind_;
  std::size_t dim_;
  Vec params_;
};

}  // namespace bplmc
