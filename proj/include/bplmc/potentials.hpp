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
#include <cstdint>
#include <string>

#include "bplmc/envelope.hpp"

namespace bplmc {

enum class SmoothKind { Zero, LogisticRidge };

/// Logistic regression data: X is N x d, row-major; y is 0/1.
struct LogisticData {
  std::size_t n = 0;
  std::size_t dim = 0;
  Vec x;
  std::vector<int> y;
};

/// Smooth part f of a composite potential.
///   Zero           f = 0
///   LogisticRidge  f(t) = sum_n [log(1 + exp<t, x_n>) - y_n <t, x_n>] + c_ridge |t|^2
class SmoothTerm {
 public:
  static SmoothTerm zero(std::size_t dim);
  static SmoothTerm logistic_ridge(LogisticData data, double c_ridge);

  SmoothKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const LogisticData& data() const { return data_; }
  double ridge() const { return ridge_; }

  double value(ConstSpan theta) const;
  Vec grad(ConstSpan theta) const;
  // Adds grad f(theta) into out.
  void add_grad(ConstSpan theta, std::span<double> out) const;

 private:
  SmoothTerm(SmoothKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  SmoothKind kind_;
  std::size_t dim_;
  LogisticData data_;
  double ridge_ = 0.0;
};

/// U = f + g.
struct CompositePotential {
  CompositePotential(SmoothTerm f, NonsmoothTerm g);

  SmoothTerm f;
  NonsmoothTerm g;
  std::size_t dim() const { return f.dim(); }
  double value(ConstSpan theta) const { return f.value(theta) + g.value(theta); }
};

/// U_lambda^psi = f + env_{lambda, g}^psi; the smooth target the samplers
/// differentiate.
class SurrogatePotential {
 public:
  SurrogatePotential(CompositePotential base, LegendreMap psi, Side side, double lambda);

  const CompositePotential& base() const { return base_; }
  const ProxPair& pair() const { return pair_; }
  std::size_t dim() const { return base_.dim(); }

  double value(ConstSpan theta) const;
  Vec grad(ConstSpan theta) const;
  void grad_into(ConstSpan theta, std::span<double> out) const;

 private:
  CompositePotential base_;
  ProxPair pair_;
};

double sigmoid(double t);
// log(1 + exp(t)) without overflow.
double softplus(double t);

Vec smooth_grad(const SmoothTerm& f, ConstSpan theta);
Vec surrogate_grad(const SurrogatePotential& s, ConstSpan theta);

// X_{n,i} ~ N(0,1), y_n ~ Bernoulli(sigmoid(<theta_star, x_n>)); deterministic
// in seed.
LogisticData generate_logistic_data(std::size_t dim, std::size_t n, ConstSpan theta_star,
                                    std::uint64_t seed);

// CSV with columns x_1..x_d, y and an optional header line.
LogisticData load_logistic_csv(const std::string& path);

}  // namespace bplmc
