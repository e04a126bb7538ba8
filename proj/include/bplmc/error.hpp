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
#include <stdexcept>
#include <string>
#include <vector>

namespace bplmc {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, std::size_t expected, std::size_t got)
      : Error(what + ": expected dimension " + std::to_string(expected) +
              ", got " + std::to_string(got)),
        expected_(expected),
        got_(got) {}

  std::size_t expected() const { return expected_; }
  std::size_t got() const { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

// Argument outside the domain of a map, conjugate, or special function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bracketed scalar minimization could not enclose the minimizer.
class BracketError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// A chain produced a non-finite coordinate.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, std::vector<double> last_finite)
      : Error("chain diverged at step " + std::to_string(step)),
        step_(step),
        last_finite_(std::move(last_finite)) {}

  std::size_t step() const { return step_; }
  const std::vector<double>& last_finite_position() const { return last_finite_; }

 private:
  std::size_t step_;
  std::vector<double> last_finite_;
};

inline void require_dim(const char* what, std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionError(what, expected, got);
}

}  // namespace bplmc
