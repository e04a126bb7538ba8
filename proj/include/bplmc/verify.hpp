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
#include <functional>
#include <string>
#include <vector>

#include "bplmc/potentials.hpp"

namespace bplmc {

/// Brute-force Bregman prox for one coordinate: a 200-point scan of the
/// defining objective over a bracket enclosing x and the nearest minimizer
/// of g, refined by golden-section search to 1e-10. The objective is
/// evaluated from first principles in extended precision and shares no code
/// with the closed forms in envelope.
double grid_prox_oracle(const LegendreMap& psi_1d, const NonsmoothTerm& g_1d, double lambda,
                        Side side, double x);

using ScalarField = std::function<double(ConstSpan)>;
using VectorField = std::function<Vec(ConstSpan)>;

// Max over points and coordinates of |central FD - analytic| / (1 + |analytic|).
double fd_gradient_check(const ScalarField& fn, const VectorField& grad_fn,
                         const std::vector<Vec>& points, double h = 1e-6);

// min over interior grid points of f(x-h) - 2 f(x) + f(x+h), h = (hi-lo)/(n-1).
double convexity_grid_check(const std::function<double(double)>& fn, double lo, double hi, int n);

// Modified self-concordance constant of the hypentropy map,
// 1 / (2 * 3^{3/2} * min_i beta_i).
double self_concordance_constant(ConstSpan beta);

// Smoothness constant of the quadratic-psi envelope of sum_i w_i |x_i|
// relative to the hypentropy map:
// sup_i sup_{|t| <= lambda w_i / m_i} m_i sqrt(t^2 + beta_i^2) / lambda.
double relative_smoothness_constant(ConstSpan alpha_w, ConstSpan beta, double lambda, ConstSpan m);

struct TvBoundResult {
  double tv_estimate = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// Total variation between exp(-U) and exp(-U_lambda^psi) in one dimension,
// by quadrature, against the bound lambda * g_lip^2 / rho.
TvBoundResult tv_bound_check_1d(double g_lip, double rho, double lambda,
                                const CompositePotential& potential, const LegendreMap& psi);

struct AssumptionReport {
  double M_phi = 0.0;
  double beta_g = 0.0;
  double alpha = 0.0;
  double min_second_difference_convexity = 0.0;
  double min_second_difference_smoothness = 0.0;
  bool convexity_pass = false;
  bool smoothness_pass = false;
};

inline constexpr double kGridCheckTolerance = -1e-8;

// Grid checks that env - alpha * phi (relative strong convexity) and
// beta_g * phi - env (relative smoothness) are convex on [lo, hi] for a
// one-dimensional pair and hypentropy mirror map. M_phi is taken from
// phi_1d unless m_phi > 0 is given.
AssumptionReport check_relative_assumptions(const ProxPair& pair_1d, const LegendreMap& phi_1d,
                                            double alpha, double beta_g, double lo, double hi,
                                            int n, double m_phi = 0.0);

// Relative Lipschitz constant of a gradient field on a point set:
// max |grad f(x)|_{[hess phi(x)]^{-1}}.
double relative_lipschitz_on_points(const VectorField& grad_fn, const LegendreMap& phi,
                                    const std::vector<Vec>& points);

// ---------------------------------------------------------------------------
// The suite behind the `verify` command.

struct CheckResult {
  std::string name;
  bool pass = false;
  double metric = 0.0;     // the measured quantity (max error, min difference, ...)
  double threshold = 0.0;  // what it was compared against
  std::string detail;
};

struct VerifyOptions {
  // Substring filter on check names; empty runs everything.
  std::string filter;
  // Test-only hook: added to every closed-form prox output the suite
  // compares against the oracle.
  double prox_corruption = 0.0;
  std::uint64_t seed = 20260117;
  int instances = 1000;
};

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt = {});

// Names of all checks, in execution order.
std::vector<std::string> verify_check_names();

}  // namespace bplmc
