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
#include <string>
#include <string_view>

#include "bplmc/legendre.hpp"

namespace bplmc {

/// Arithmetic over the variables d (dimension) and i (1-based coordinate),
/// used for per-coordinate parameters such as "2*sqrt(d-i+1)".
///
/// Grammar: numbers, d, i, parentheses, binary + - * / ^ (^ is right
/// associative and binds tighter than unary minus), unary minus, and the
/// functions sqrt, floor, abs, exp, log (one argument) and pow, min, max
/// (two arguments). Parse errors throw ConfigError naming the offset.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double eval(double d, double i) const { return fn_(d, i); }
  const std::string& source() const { return source_; }

 private:
  using Fn = std::function<double(double, double)>;
  Expression(std::string source, Fn fn) : source_(std::move(source)), fn_(std::move(fn)) {}

  std::string source_;
  Fn fn_;
};

// (eval(d, 1), ..., eval(d, d)).
Vec eval_per_coordinate(const Expression& expr, std::size_t d);

}  // namespace bplmc
