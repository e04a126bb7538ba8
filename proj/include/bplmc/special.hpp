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

namespace bplmc {

// Inverse hyperbolic sine, odd-symmetric and free of cancellation for
// large negative arguments.
double arsinh(double x);

// Principal branch W0 of the Lambert W function: the w >= -1 solving
// w * exp(w) = x. Inputs within 1e-12 below -1/e are treated as -1/e;
// anything lower throws DomainError.
double lambert_w0(double x);

}  // namespace bplmc
