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
#include <utility>
#include <vector>

#include "bplmc/legendre.hpp"
#include "bplmc/rng.hpp"
#include "bplmc/samplers.hpp"

namespace bplmc {

enum class MarginalKind { Laplace, Uniform };

/// Reference 1-D marginal for separable targets with f = 0:
/// Laplace(rate) has density (rate/2) exp(-rate |x|); Uniform(a, b).
class MarginalReference {
 public:
  static MarginalReference laplace(double rate);
  static MarginalReference uniform(double a, double b);

  MarginalKind kind() const { return kind_; }
  double pdf(double x) const;
  double cdf(double x) const;
  // Generalized inverse CDF; quantile(0) / quantile(1) may be infinite.
  double quantile(double u) const;
  bool in_support(double x) const;
  // Central interval carrying the given probability mass.
  std::pair<double, double> central_range(double mass = 0.999) const;
  // Exact draw via the inverse CDF.
  double sample(Rng& rng) const { return quantile(rng.uniform()); }

 private:
  MarginalReference(MarginalKind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}

  MarginalKind kind_;
  double p1_;
  double p2_;
};

MarginalReference laplace_marginal(double rate);

// Order-statistics W1 estimate (1/K) sum_i |x_(i) - F^{-1}((i - 1/2)/K)|.
// samples must be sorted ascending.
double w1_marginal(ConstSpan sorted_samples, const MarginalReference& ref);

// Histogram TV 1/2 sum_b |phat_b - p_b| over `bins` equal bins on [lo, hi]
// plus one tail bin on each side, with p_b the exact reference mass.
double tv_marginal(ConstSpan samples, const MarginalReference& ref, int bins, double lo,
                   double hi);
// Same, over the reference's central 99.9% range.
double tv_marginal(ConstSpan samples, const MarginalReference& ref, int bins = 100);

// Kolmogorov-Smirnov statistic sup |F_n - F|; samples sorted ascending.
double ks_marginal(ConstSpan sorted_samples, const MarginalReference& ref);

// Fraction of samples inside the reference support.
double inside_fraction(ConstSpan samples, const MarginalReference& ref);

// Effective sample size of a chain trace under an AR(1) model,
// n (1 - rho) / (1 + rho) with rho the lag-1 autocorrelation, clipped to [1, n].
double effective_sample_size(ConstSpan trace);

// Sampling noise floor of w1_marginal: the given quantile of the W1
// estimate over `reps` sets of n exact i.i.d. reference draws.
double w1_noise_floor(const MarginalReference& ref, std::size_t n, int reps, double quantile,
                      std::uint64_t seed);

struct DimensionDiagnostics {
  std::size_t dim = 0;  // 1-based
  double w1 = 0.0;
  double tv = 0.0;
  double ks = 0.0;
  double inside_fraction = 0.0;
};

// One row per column of the batch; evaluated in parallel over dimensions.
std::vector<DimensionDiagnostics> marginal_diagnostics(const SampleBatch& batch,
                                                       const std::vector<MarginalReference>& refs,
                                                       int bins = 100);

struct ErrorCurves {
  std::vector<double> err_l2;     // |mean_s theta_{k,s} - theta*|
  std::vector<double> err_norm2;  // | |mean|^2 - |theta*|^2 | / d
  std::vector<std::size_t> tracked;            // 1-based coordinates
  std::vector<std::vector<double>> coord_err;  // per tracked coordinate, per row
};

// Replicas must share the same shape. tracked holds 1-based coordinates.
ErrorCurves posterior_mean_error(const std::vector<SampleBatch>& batches, ConstSpan theta_star,
                                 const std::vector<std::size_t>& tracked = {});

// diagnostics.csv: dim,w1,tv,ks,inside_fraction
void write_diagnostics_csv(const std::vector<DimensionDiagnostics>& diags,
                           const std::string& path);
// error_curves.csv: iteration,err_l2,err_norm2,err_coord_<j>... Row k is
// labelled first_iteration + k * stride.
void write_error_curves_csv(const ErrorCurves& curves, const std::string& path,
                            std::size_t first_iteration = 1, std::size_t stride = 1);

}  // namespace bplmc
