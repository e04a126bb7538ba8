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

#include "bplmc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bplmc/envelope.hpp"
#include "bplmc/error.hpp"
#include "bplmc/minimize.hpp"
#include "bplmc/quadrature.hpp"

namespace bplmc {

namespace {

using ld = long double;
constexpr ld kInfL = std::numeric_limits<ld>::infinity();

ld psi_value(const LegendreMap& psi, ld v) {
  switch (psi.kind()) {
    case LegendreKind::SquaredEuclidean: return 0.5L * v * v;
    case LegendreKind::WeightedQuadratic: return 0.5L * psi.params()[0] * v * v;
    case LegendreKind::Hypentropy: {
      const ld b = psi.params()[0];
      return v * std::asinh(v / b) - std::sqrt(v * v + b * b);
    }
    case LegendreKind::Exponential: return std::exp(v);
  }
  return 0.0L;
}

ld psi_slope(const LegendreMap& psi, ld v) {
  switch (psi.kind()) {
    case LegendreKind::SquaredEuclidean: return v;
    case LegendreKind::WeightedQuadratic: return psi.params()[0] * v;
    case LegendreKind::Hypentropy: return std::asinh(v / static_cast<ld>(psi.params()[0]));
    case LegendreKind::Exponential: return std::exp(v);
  }
  return 0.0L;
}

ld divergence(const LegendreMap& psi, ld u, ld w) {
  return psi_value(psi, u) - psi_value(psi, w) - psi_slope(psi, w) * (u - w);
}

ld g_value(const NonsmoothTerm& g, ld v) {
  switch (g.kind()) {
    case NonsmoothKind::Zero: return 0.0L;
    case NonsmoothKind::WeightedL1: return g.weights()[0] * std::fabs(v);
    case NonsmoothKind::BoxIndicator:
      return (v >= g.lower()[0] && v <= g.upper()[0]) ? 0.0L : kInfL;
  }
  return 0.0L;
}

}  // namespace

double grid_prox_oracle(const LegendreMap& psi, const NonsmoothTerm& g, double lambda, Side side,
                        double x) {
  require_dim("grid_prox_oracle psi", 1, psi.dim());
  require_dim("grid_prox_oracle g", 1, g.dim());
  if (!(lambda > 0.0)) throw ConfigError("grid_prox_oracle: lambda must be positive");

  // The minimizer lies between x and the point of argmin g nearest to x.
  double target = x;
  if (g.kind() == NonsmoothKind::WeightedL1 && g.weights()[0] > 0.0) target = 0.0;
  if (g.kind() == NonsmoothKind::BoxIndicator) {
    target = std::min(std::max(x, g.lower()[0]), g.upper()[0]);
  }
  const double lo0 = std::min(x, target);
  const double hi0 = std::max(x, target);
  const double pad = 0.05 * (hi0 - lo0) + 1e-3 * (1.0 + std::fabs(x));
  double lo = lo0 - pad;
  double hi = hi0 + pad;
  if (g.kind() == NonsmoothKind::BoxIndicator) {
    lo = std::max(lo, g.lower()[0]);
    hi = std::min(hi, g.upper()[0]);
  }
  const ld inv_lambda = 1.0L / lambda;
  auto objective = [&](ld v) -> ld {
    const ld gv = g_value(g, v);
    if (std::isinf(gv)) return kInfL;
    const ld d = side == Side::Left ? divergence(psi, v, x) : divergence(psi, x, v);
    return gv + d * inv_lambda;
  };
  return grid_golden_minimize(objective, lo, hi, 200, 1e-10).argmin;
}

double fd_gradient_check(const ScalarField& fn, const VectorField& grad_fn,
                         const std::vector<Vec>& points, double h) {
  double worst = 0.0;
  for (const Vec& p : points) {
    const Vec g = grad_fn(p);
    require_dim("fd_gradient_check", p.size(), g.size());
    Vec q = p;
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] = p[i] + h;
      const double fp = fn(q);
      q[i] = p[i] - h;
      const double fm = fn(q);
      q[i] = p[i];
      const double fd = (fp - fm) / (2.0 * h);
      worst = std::max(worst, std::fabs(fd - g[i]) / (1.0 + std::fabs(g[i])));
    }
  }
  return worst;
}

double convexity_grid_check(const std::function<double(double)>& fn, double lo, double hi, int n) {
  if (n < 3) throw ConfigError("convexity_grid_check: need at least 3 points");
  if (!(hi > lo)) throw ConfigError("convexity_grid_check: empty interval");
  const double h = (hi - lo) / (n - 1);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[k] = fn(k == n - 1 ? hi : lo + h * k);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 1; k + 1 < n; ++k) worst = std::min(worst, v[k - 1] - 2.0 * v[k] + v[k + 1]);
  return worst;
}

double self_concordance_constant(ConstSpan beta) {
  if (beta.empty()) throw ConfigError("self_concordance_constant: empty beta");
  double bmin = std::numeric_limits<double>::infinity();
  for (double b : beta) {
    if (!(b > 0.0)) throw ConfigError("self_concordance_constant: beta must be positive");
    bmin = std::min(bmin, b);
  }
  return 1.0 / (2.0 * std::pow(3.0, 1.5) * bmin);
}

double relative_smoothness_constant(ConstSpan alpha_w, ConstSpan beta, double lambda, ConstSpan m) {
  require_dim("relative_smoothness_constant beta", alpha_w.size(), beta.size());
  require_dim("relative_smoothness_constant m", alpha_w.size(), m.size());
  if (!(lambda > 0.0)) throw ConfigError("relative_smoothness_constant: lambda must be positive");
  double best = 0.0;
  for (std::size_t i = 0; i < alpha_w.size(); ++i) {
    // m sqrt(t^2 + beta^2) / lambda is increasing in |t|.
    const double t = lambda * alpha_w[i] / m[i];
    best = std::max(best, m[i] * std::sqrt(t * t + beta[i] * beta[i]) / lambda);
  }
  return best;
}

TvBoundResult tv_bound_check_1d(double g_lip, double rho, double lambda,
                                const CompositePotential& potential, const LegendreMap& psi) {
  require_dim("tv_bound_check_1d potential", 1, potential.dim());
  require_dim("tv_bound_check_1d psi", 1, psi.dim());
  const NonsmoothTerm& g = potential.g;
  const ProxPair pair(psi, g, Side::Left, lambda);

  auto u_true = [&](double x) {
    const double t[1] = {x};
    return potential.f.value(t) + g.value_at(0, x);
  };
  auto u_smooth = [&](double x) {
    const double t[1] = {x};
    return potential.f.value(t) + env_value(pair, t);
  };

  // Truncation from the tail bounds: Laplace tails decay like exp(-w|x|),
  // the box surrogate like a Gaussian of variance lambda / rho.
  std::vector<double> breaks{0.0};
  double half_width = 40.0;
  const double log_tail = std::log(1e10) + 5.0;
  if (g.kind() == NonsmoothKind::WeightedL1 && g.weights()[0] > 0.0) {
    const double w = g.weights()[0];
    const double thr = lambda * w / rho;
    half_width = log_tail / w + 2.0 * thr;
    breaks.push_back(thr);
    breaks.push_back(-thr);
  } else if (g.kind() == NonsmoothKind::BoxIndicator) {
    const double a = g.lower()[0], b = g.upper()[0];
    half_width = std::max(std::fabs(a), std::fabs(b)) + std::sqrt(2.0 * lambda / rho * log_tail);
    breaks.push_back(a);
    breaks.push_back(b);
  }
  const double lo = -half_width, hi = half_width;

  const double shift = std::min(u_true(0.0), u_smooth(0.0));
  auto p_true = [&](double x) { return std::exp(-(u_true(x) - shift)); };
  auto p_smooth = [&](double x) { return std::exp(-(u_smooth(x) - shift)); };
  const double z_true = simpson_integrate(p_true, lo, hi, breaks);
  const double z_smooth = simpson_integrate(p_smooth, lo, hi, breaks);
  auto diff = [&](double x) { return p_smooth(x) / z_smooth - p_true(x) / z_true; };

  // Sign changes of the difference become extra panel ends so every panel
  // integrates a smooth function.
  std::vector<double> pts = breaks;
  const int scan = 4001;
  double xa = lo, fa = diff(lo);
  for (int k = 1; k < scan; ++k) {
    const double xb = lo + (hi - lo) * k / (scan - 1);
    const double fb = diff(xb);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      double l = xa, r = xb, fl = fa;
      for (int it = 0; it < 200 && r - l > 1e-15 * (1.0 + std::fabs(l)); ++it) {
        const double m = 0.5 * (l + r);
        const double fm = diff(m);
        if ((fm < 0.0) == (fl < 0.0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      pts.push_back(0.5 * (l + r));
    }
    xa = xb;
    fa = fb;
  }
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  const double tv = 0.5 * simpson_integrate([&](double x) { return std::fabs(diff(x)); }, lo, hi, pts, opt);

  TvBoundResult r;
  r.tv_estimate = tv;
  r.bound = lambda * g_lip * g_lip / rho;
  r.holds = tv <= r.bound + 1e-6;
  return r;
}

AssumptionReport check_relative_assumptions(const ProxPair& pair, const LegendreMap& phi,
                                            double alpha, double beta_g, double lo, double hi,
                                            int n, double m_phi) {
  require_dim("check_relative_assumptions pair", 1, pair.dim());
  require_dim("check_relative_assumptions phi", 1, phi.dim());
  AssumptionReport r;
  if (m_phi > 0.0) {
    r.M_phi = m_phi;
  } else if (phi.kind() == LegendreKind::Hypentropy) {
    r.M_phi = self_concordance_constant(phi.params());
  }
  r.alpha = alpha;
  r.beta_g = beta_g;
  auto env = [&](double x) {
    const double t[1] = {x};
    return env_value(pair, t);
  };
  r.min_second_difference_convexity =
      convexity_grid_check([&](double x) { return env(x) - alpha * phi.value_at(0, x); }, lo, hi, n);
  r.min_second_difference_smoothness =
      convexity_grid_check([&](double x) { return beta_g * phi.value_at(0, x) - env(x); }, lo, hi, n);
  r.convexity_pass = r.min_second_difference_convexity >= kGridCheckTolerance;
  r.smoothness_pass = r.min_second_difference_smoothness >= kGridCheckTolerance;
  return r;
}

double relative_lipschitz_on_points(const VectorField& grad_fn, const LegendreMap& phi,
                                    const std::vector<Vec>& points) {
  double worst = 0.0;
  for (const Vec& p : points) {
    const Vec g = grad_fn(p);
    const Vec h = phi.hess_diag(p);
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * g[i] / h[i];
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace bplmc
