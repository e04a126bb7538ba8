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

namespace bplmc {

struct ScalarMinimum {
  double argmin;
  long double value;
};

using ScalarObjective = std::function<long double(long double)>;

// Minimizes a unimodal scalar function on [lo, hi]: an n_grid-point scan
// locates the best grid cell, then golden-section search shrinks the
// neighbouring cells until the bracket is narrower than tol.
//
// Throws BracketError when the best grid point sits on an end of the
// interval and the objective keeps decreasing past it.
ScalarMinimum grid_golden_minimize(const ScalarObjective& f, double lo, double hi,
                                   int n_grid = 200, double tol = 1e-10);

}  // namespace bplmc
