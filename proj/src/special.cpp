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

#include "bplmc/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bplmc/error.hpp"

namespace bplmc {

namespace {

constexpr double kInvE = 0.36787944117144232159552377016146087;  // 1/e
constexpr double kBranchSlack = 1e-12;

}  // namespace

double arsinh(double x) {
  const double a = std::fabs(x);
  double r;
  if (a > 1e150) {
    // sqrt(a^2 + 1) == a in double precision here.
    r = std::log(a) + std::log(2.0);
  } else {
    // log(a + sqrt(a^2+1)) = log1p(a + a^2 / (1 + sqrt(1 + a^2)))
    r = std::log1p(a + a * a / (1.0 + std::sqrt(1.0 + a * a)));
  }
  return std::signbit(x) ? -r : r;
}

double lambert_w0(double x) {
  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  if (x < -kInvE - kBranchSlack) {
    throw DomainError("lambert_w0: argument below -1/e: " + std::to_string(x));
  }
  if (x <= -kInvE) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x >= 0.0) {
    w = std::log1p(x);
    if (x > 3.0) {
      // Asymptotic start is closer for large arguments.
      const double l1 = std::log(x);
      const double l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    }
  } else {
    // Expansion about the branch point: W = -1 + p - p^2/3 + 11 p^3 / 72,
    // p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  }

  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    // Halley step.
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double dw = f / denom;
    w -= dw;
    if (w < -1.0) w = -1.0;
    if (std::fabs(dw) <= 1e-14 * (1.0 + std::fabs(w))) break;
  }
  return w;
}

}  // namespace bplmc
