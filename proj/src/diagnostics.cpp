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

#include "bplmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "bplmc/error.hpp"

namespace bplmc {

MarginalReference MarginalReference::laplace(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ConfigError("laplace: rate must be positive");
  return MarginalReference(MarginalKind::Laplace, rate, 0.0);
}

MarginalReference MarginalReference::uniform(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("uniform: need finite a < b");
  }
  return MarginalReference(MarginalKind::Uniform, a, b);
}

MarginalReference laplace_marginal(double rate) { return MarginalReference::laplace(rate); }

double MarginalReference::pdf(double x) const {
  if (kind_ == MarginalKind::Laplace) return 0.5 * p1_ * std::exp(-p1_ * std::fabs(x));
  return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
}

double MarginalReference::cdf(double x) const {
  if (kind_ == MarginalKind::Laplace) {
    return x < 0.0 ? 0.5 * std::exp(p1_ * x) : 1.0 - 0.5 * std::exp(-p1_ * x);
  }
  if (x <= p1_) return 0.0;
  if (x >= p2_) return 1.0;
  return (x - p1_) / (p2_ - p1_);
}

double MarginalReference::quantile(double u) const {
  if (kind_ == MarginalKind::Laplace) {
    const double c = u - 0.5;
    if (c == 0.0) return 0.0;
    const double m = std::fabs(c);
    // -sign(c) log(1 - 2|c|) / rate
    const double q = -std::log1p(-2.0 * m) / p1_;
    return c < 0.0 ? -q : q;
  }
  return p1_ + std::clamp(u, 0.0, 1.0) * (p2_ - p1_);
}

bool MarginalReference::in_support(double x) const {
  if (kind_ == MarginalKind::Laplace) return std::isfinite(x);
  return x >= p1_ && x <= p2_;
}

std::pair<double, double> MarginalReference::central_range(double mass) const {
  const double tail = 0.5 * (1.0 - mass);
  return {quantile(tail), quantile(1.0 - tail)};
}

double w1_marginal(ConstSpan s, const MarginalReference& ref) {
  if (s.empty()) throw Error("w1_marginal: no samples");
  if (!std::is_sorted(s.begin(), s.end())) throw Error("w1_marginal: samples must be sorted");
  const double k = static_cast<double>(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += std::fabs(s[i] - ref.quantile((static_cast<double>(i) + 0.5) / k));
  }
  return acc / k;
}

double tv_marginal(ConstSpan samples, const MarginalReference& ref, int bins, double lo,
                   double hi) {
  if (samples.empty()) throw Error("tv_marginal: no samples");
  if (bins < 10) throw Error("tv_marginal: need at least 10 bins");
  if (!(hi > lo)) throw Error("tv_marginal: empty range");
  // Slots 0 and bins+1 are the tails.
  std::vector<double> counts(static_cast<std::size_t>(bins) + 2, 0.0);
  const double width = (hi - lo) / bins;
  for (double x : samples) {
    std::size_t slot;
    if (x < lo) {
      slot = 0;
    } else if (x >= hi) {
      slot = static_cast<std::size_t>(bins) + (x == hi ? 0 : 1);
    } else {
      slot = 1 + std::min(static_cast<std::size_t>((x - lo) / width),
                          static_cast<std::size_t>(bins - 1));
    }
    counts[slot] += 1.0;
  }
  const double n = static_cast<double>(samples.size());
  double tv = 0.0;
  tv += std::fabs(counts[0] / n - ref.cdf(lo));
  for (int b = 0; b < bins; ++b) {
    const double a = lo + width * b;
    const double e = (b == bins - 1) ? hi : lo + width * (b + 1);
    tv += std::fabs(counts[b + 1] / n - (ref.cdf(e) - ref.cdf(a)));
  }
  tv += std::fabs(counts[bins + 1] / n - (1.0 - ref.cdf(hi)));
  return 0.5 * tv;
}

double tv_marginal(ConstSpan samples, const MarginalReference& ref, int bins) {
  const auto [lo, hi] = ref.kind() == MarginalKind::Uniform ? ref.central_range(1.0)
                                                            : ref.central_range(0.999);
  return tv_marginal(samples, ref, bins, lo, hi);
}

double ks_marginal(ConstSpan s, const MarginalReference& ref) {
  if (s.empty()) throw Error("ks_marginal: no samples");
  if (!std::is_sorted(s.begin(), s.end())) throw Error("ks_marginal: samples must be sorted");
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = ref.cdf(s[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double inside_fraction(ConstSpan samples, const MarginalReference& ref) {
  if (samples.empty()) return 0.0;
  std::size_t inside = 0;
  for (double x : samples) inside += ref.in_support(x) ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(samples.size());
}

double effective_sample_size(ConstSpan trace) {
  const std::size_t n = trace.size();
  if (n < 3) return static_cast<double>(n);
  double mean = 0.0;
  for (double v : trace) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = trace[k] - mean;
    c0 += a * a;
    if (k > 0) c1 += a * (trace[k - 1] - mean);
  }
  if (c0 <= 0.0) return 1.0;
  const double rho = c1 / c0;
  const double ess = static_cast<double>(n) * (1.0 - rho) / (1.0 + rho);
  return std::clamp(ess, 1.0, static_cast<double>(n));
}

double w1_noise_floor(const MarginalReference& ref, std::size_t n, int reps, double quantile,
                      std::uint64_t seed) {
  if (n == 0 || reps < 1) throw ConfigError("w1_noise_floor: need n >= 1 and reps >= 1");
  if (!(quantile >= 0.0 && quantile <= 1.0)) {
    throw ConfigError("w1_noise_floor: quantile must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<double> draws(n);
  std::vector<double> w1(static_cast<std::size_t>(reps));
  for (auto& w : w1) {
    for (double& x : draws) x = ref.sample(rng);
    std::sort(draws.begin(), draws.end());
    w = w1_marginal(draws, ref);
  }
  std::sort(w1.begin(), w1.end());
  const auto idx = static_cast<std::size_t>(std::ceil(quantile * (reps - 1)));
  return w1[idx];
}

std::vector<DimensionDiagnostics> marginal_diagnostics(const SampleBatch& batch,
                                                       const std::vector<MarginalReference>& refs,
                                                       int bins) {
  require_dim("marginal_diagnostics references", batch.cols, refs.size());
  if (batch.rows == 0) throw Error("marginal_diagnostics: empty batch");
  std::vector<DimensionDiagnostics> out(batch.cols);
  const long d = static_cast<long>(batch.cols);
#pragma omp parallel for schedule(dynamic, 4)
  for (long c = 0; c < d; ++c) {
    Vec col = batch.column(static_cast<std::size_t>(c));
    const MarginalReference& ref = refs[static_cast<std::size_t>(c)];
    DimensionDiagnostics& r = out[static_cast<std::size_t>(c)];
    r.dim = static_cast<std::size_t>(c) + 1;
    r.inside_fraction = inside_fraction(col, ref);
    r.tv = tv_marginal(col, ref, bins);
    std::sort(col.begin(), col.end());
    r.w1 = w1_marginal(col, ref);
    r.ks = ks_marginal(col, ref);
  }
  return out;
}

ErrorCurves posterior_mean_error(const std::vector<SampleBatch>& batches, ConstSpan theta_star,
                                 const std::vector<std::size_t>& tracked) {
  if (batches.empty()) throw Error("posterior_mean_error: no replicas");
  const std::size_t rows = batches.front().rows;
  const std::size_t d = batches.front().cols;
  for (const auto& b : batches) {
    if (b.rows != rows || b.cols != d) throw DimensionError("posterior_mean_error replicas", rows * d, b.rows * b.cols);
  }
  require_dim("posterior_mean_error theta_star", d, theta_star.size());
  for (std::size_t t : tracked) {
    if (t == 0 || t > d) throw Error("posterior_mean_error: tracked coordinate out of range");
  }
  double star2 = 0.0;
  for (double v : theta_star) star2 += v * v;

  ErrorCurves ec;
  ec.tracked = tracked;
  ec.err_l2.resize(rows);
  ec.err_norm2.resize(rows);
  ec.coord_err.assign(tracked.size(), std::vector<double>(rows));
  const double inv_s = 1.0 / static_cast<double>(batches.size());
  Vec mean(d);
  for (std::size_t k = 0; k < rows; ++k) {
    std::fill(mean.begin(), mean.end(), 0.0);
    for (const auto& b : batches) {
      for (std::size_t i = 0; i < d; ++i) mean[i] += b.at(k, i);
    }
    double e2 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      mean[i] *= inv_s;
      e2 += (mean[i] - theta_star[i]) * (mean[i] - theta_star[i]);
      m2 += mean[i] * mean[i];
    }
    ec.err_l2[k] = std::sqrt(e2);
    ec.err_norm2[k] = std::fabs(m2 - star2) / static_cast<double>(d);
    for (std::size_t j = 0; j < tracked.size(); ++j) {
      const std::size_t i = tracked[j] - 1;
      ec.coord_err[j][k] = std::fabs(mean[i] - theta_star[i]);
    }
  }
  return ec;
}

namespace {

void put(std::ofstream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_diagnostics_csv(const std::vector<DimensionDiagnostics>& diags, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << "dim,w1,tv,ks,inside_fraction\n";
  for (const auto& r : diags) {
    out << r.dim << ',';
    put(out, r.w1);
    out << ',';
    put(out, r.tv);
    out << ',';
    put(out, r.ks);
    out << ',';
    put(out, r.inside_fraction);
    out << '\n';
  }
}

void write_error_curves_csv(const ErrorCurves& c, const std::string& path,
                            std::size_t first_iteration, std::size_t stride) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << "iteration,err_l2,err_norm2";
  for (std::size_t t : c.tracked) out << ",err_coord_" << t;
  out << '\n';
  for (std::size_t k = 0; k < c.err_l2.size(); ++k) {
    out << first_iteration + k * stride << ',';
    put(out, c.err_l2[k]);
    out << ',';
    put(out, c.err_norm2[k]);
    for (const auto& col : c.coord_err) {
      out << ',';
      put(out, col[k]);
    }
    out << '\n';
  }
}

}  // namespace bplmc
