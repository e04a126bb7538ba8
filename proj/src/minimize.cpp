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

#include "bplmc/minimize.hpp"

#include <cmath>
#include <string>

#include "bplmc/error.hpp"

namespace bplmc {

ScalarMinimum grid_golden_minimize(const ScalarObjective& f, double lo, double hi,
                                   int n_grid, double tol) {
  if (!(hi > lo) || n_grid < 3) {
    throw BracketError("grid_golden_minimize: empty bracket [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  const long double a0 = lo;
  const long double step = (static_cast<long double>(hi) - a0) / (n_grid - 1);
  int best = 0;
  long double best_val = f(a0);
  for (int k = 1; k < n_grid; ++k) {
    const long double v = f(a0 + step * k);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  if (best == 0 && f(a0 - step) < best_val) {
    throw BracketError("grid_golden_minimize: objective decreasing below lower end");
  }
  if (best == n_grid - 1 && f(a0 + step * n_grid) < best_val) {
    throw BracketError("grid_golden_minimize: objective decreasing above upper end");
  }

  long double a = a0 + step * (best - 1);
  long double b = a0 + step * (best + 1);
  const long double invphi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double c = b - invphi * (b - a);
  long double d = a + invphi * (b - a);
  long double fc = f(c);
  long double fd = f(d);
  for (int it = 0; it < 400 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const long double x = 0.5L * (a + b);
  long double fx = f(x);
  // The grid point itself may still be the best available value (kinks).
  const long double xg = a0 + step * best;
  if (best_val < fx && std::fabs(static_cast<double>(xg - x)) > tol) {
    return {static_cast<double>(xg), best_val};
  }
  return {static_cast<double>(x), fx};
}

}  // namespace bplmc
