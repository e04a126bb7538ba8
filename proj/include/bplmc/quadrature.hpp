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

#include <functional>
#include <span>

namespace bplmc {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int min_level = 4;   // at least 2^min_level intervals per panel
  int max_level = 24;
};

// Composite Simpson rule on [a, b], split into panels at the breakpoints
// that fall strictly inside (a, b). Each panel doubles its interval count
// until successive estimates agree to rel_tol (or abs_tol); throws
// QuadratureError if a panel has not converged by max_level.
double simpson_integrate(const std::function<double(double)>& f, double a, double b,
                         std::span<const double> breakpoints = {},
                         const QuadratureOptions& opt = {});

}  // namespace bplmc
