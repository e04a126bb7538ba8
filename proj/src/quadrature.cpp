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

#include "bplmc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bplmc/error.hpp"

namespace bplmc {

namespace {

double simpson_panel(const std::function<double(double)>& f, double a, double b,
                     const QuadratureOptions& opt) {
  // Running sums: ends, interior points with odd index, interior with even.
  const double ends = f(a) + f(b);
  double even = 0.0;
  double odd = f(0.5 * (a + b));
  std::size_t n = 2;
  double prev = (b - a) / 6.0 * (ends + 4.0 * odd);
  for (int level = 2; level <= opt.max_level; ++level) {
    even += odd;
    n *= 2;
    const double h = (b - a) / static_cast<double>(n);
    odd = 0.0;
    for (std::size_t k = 1; k < n; k += 2) odd += f(a + h * static_cast<double>(k));
    const double s = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const double diff = std::fabs(s - prev);
    if (level >= opt.min_level && (diff <= opt.rel_tol * std::fabs(s) || diff <= opt.abs_tol)) {
      return s;
    }
    prev = s;
  }
  throw QuadratureError("simpson_integrate: no convergence on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
}

}  // namespace

double simpson_integrate(const std::function<double(double)>& f, double a, double b,
                         std::span<const double> breakpoints, const QuadratureOptions& opt) {
  if (!(b > a)) throw QuadratureError("simpson_integrate: empty interval");
  std::vector<double> pts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) total += simpson_panel(f, pts[k], pts[k + 1], opt);
  return total;
}

}  // namespace bplmc
