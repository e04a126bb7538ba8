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

#include "bplmc/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bplmc/error.hpp"
#include "bplmc/rng.hpp"

namespace bplmc {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::fabs(t)));
}

SmoothTerm SmoothTerm::zero(std::size_t dim) {
  if (dim == 0) throw ConfigError("SmoothTerm: dimension must be positive");
  return SmoothTerm(SmoothKind::Zero, dim);
}

SmoothTerm SmoothTerm::logistic_ridge(LogisticData data, double c_ridge) {
  if (data.n == 0 || data.dim == 0) throw ConfigError("logistic_ridge: empty data set");
  require_dim("logistic_ridge design matrix", data.n * data.dim, data.x.size());
  require_dim("logistic_ridge labels", data.n, data.y.size());
  for (double v : data.x) {
    if (!std::isfinite(v)) throw ConfigError("logistic_ridge: non-finite design entry");
  }
  for (int v : data.y) {
    if (v != 0 && v != 1) throw ConfigError("logistic_ridge: labels must be 0 or 1");
  }
  if (!(c_ridge >= 0.0)) throw ConfigError("logistic_ridge: ridge coefficient must be >= 0");
  SmoothTerm t(SmoothKind::LogisticRidge, data.dim);
  t.data_ = std::move(data);
  t.ridge_ = c_ridge;
  return t;
}

double SmoothTerm::value(ConstSpan theta) const {
  require_dim("SmoothTerm::value", dim_, theta.size());
  if (kind_ == SmoothKind::Zero) return 0.0;
  double s = 0.0;
  for (std::size_t n = 0; n < data_.n; ++n) {
    const double* row = data_.x.data() + n * dim_;
    double z = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) z += row[i] * theta[i];
    s += softplus(z) - data_.y[n] * z;
  }
  double sq = 0.0;
  for (double t : theta) sq += t * t;
  return s + ridge_ * sq;
}

void SmoothTerm::add_grad(ConstSpan theta, std::span<double> out) const {
  require_dim("SmoothTerm::grad", dim_, theta.size());
  require_dim("SmoothTerm::grad output", dim_, out.size());
  if (kind_ == SmoothKind::Zero) return;
  for (std::size_t n = 0; n < data_.n; ++n) {
    const double* row = data_.x.data() + n * dim_;
    double z = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) z += row[i] * theta[i];
    const double r = sigmoid(z) - data_.y[n];
    for (std::size_t i = 0; i < dim_; ++i) out[i] += r * row[i];
  }
  for (std::size_t i = 0; i < dim_; ++i) out[i] += 2.0 * ridge_ * theta[i];
}

Vec SmoothTerm::grad(ConstSpan theta) const {
  Vec out(dim_, 0.0);
  add_grad(theta, out);
  return out;
}

CompositePotential::CompositePotential(SmoothTerm f_, NonsmoothTerm g_)
    : f(std::move(f_)), g(std::move(g_)) {
  require_dim("CompositePotential: g vs f", f.dim(), g.dim());
}

SurrogatePotential::SurrogatePotential(CompositePotential base, LegendreMap psi, Side side,
                                       double lambda)
    : base_(std::move(base)), pair_(std::move(psi), base_.g, side, lambda) {
  require_dim("SurrogatePotential: psi vs potential", base_.dim(), pair_.dim());
}

double SurrogatePotential::value(ConstSpan theta) const {
  return base_.f.value(theta) + env_value(pair_, theta);
}

void SurrogatePotential::grad_into(ConstSpan theta, std::span<double> out) const {
  require_dim("SurrogatePotential::grad", dim(), theta.size());
  require_dim("SurrogatePotential::grad output", dim(), out.size());
  std::fill(out.begin(), out.end(), 0.0);
  base_.f.add_grad(theta, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += env_grad_at(pair_, i, theta[i]);
}

Vec SurrogatePotential::grad(ConstSpan theta) const {
  Vec out(dim());
  grad_into(theta, out);
  return out;
}

Vec smooth_grad(const SmoothTerm& f, ConstSpan theta) { return f.grad(theta); }

Vec surrogate_grad(const SurrogatePotential& s, ConstSpan theta) { return s.grad(theta); }

LogisticData generate_logistic_data(std::size_t dim, std::size_t n, ConstSpan theta_star,
                                    std::uint64_t seed) {
  require_dim("generate_logistic_data theta_star", dim, theta_star.size());
  if (n == 0) throw ConfigError("generate_logistic_data: need at least one sample");
  Rng rng(seed);
  LogisticData data;
  data.n = n;
  data.dim = dim;
  data.x.resize(n * dim);
  data.y.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double z = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double v = rng.normal();
      data.x[k * dim + i] = v;
      z += v * theta_star[i];
    }
    data.y[k] = rng.uniform() < sigmoid(z) ? 1 : 0;
  }
  return data;
}

LogisticData load_logistic_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open logistic data file: " + path);
  LogisticData data;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw FormatError(path + ": non-numeric entry in data row");
    }
    first = false;
    if (row.size() < 2) throw FormatError(path + ": need at least one feature and a label");
    if (data.dim == 0) data.dim = row.size() - 1;
    if (row.size() != data.dim + 1) throw FormatError(path + ": ragged row");
    const double label = row.back();
    if (label != 0.0 && label != 1.0) throw FormatError(path + ": labels must be 0 or 1");
    data.x.insert(data.x.end(), row.begin(), row.end() - 1);
    data.y.push_back(static_cast<int>(label));
    ++data.n;
  }
  if (data.n == 0) throw FormatError(path + ": no data rows");
  return data;
}

}  // namespace bplmc
