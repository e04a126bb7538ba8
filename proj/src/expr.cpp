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

#include "bplmc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "bplmc/error.hpp"

namespace bplmc {

namespace {

using Fn = std::function<double(double, double)>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Fn parse_all() {
    Fn f = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression \"" + std::string(text_) + "\" at offset " +
                      std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Fn sum() {
    Fn lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = [a = lhs, b = product()](double d, double i) { return a(d, i) + b(d, i); };
      } else if (accept('-')) {
        lhs = [a = lhs, b = product()](double d, double i) { return a(d, i) - b(d, i); };
      } else {
        return lhs;
      }
    }
  }

  Fn product() {
    Fn lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = [a = lhs, b = unary()](double d, double i) { return a(d, i) * b(d, i); };
      } else if (accept('/')) {
        lhs = [a = lhs, b = unary()](double d, double i) { return a(d, i) / b(d, i); };
      } else {
        return lhs;
      }
    }
  }

  Fn unary() {
    if (accept('-')) return [a = unary()](double d, double i) { return -a(d, i); };
    if (accept('+')) return unary();
    return power();
  }

  Fn power() {
    Fn base = atom();
    if (accept('^')) {
      return [a = base, b = unary()](double d, double i) { return std::pow(a(d, i), b(d, i)); };
    }
    return base;
  }

  Fn atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      Fn inner = sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Fn number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("bad number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return [v](double, double) { return v; };
  }

  Fn name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string id(text_.substr(start, pos_ - start));
    if (id == "d") return [](double d, double) { return d; };
    if (id == "i") return [](double, double i) { return i; };

    using F1 = double (*)(double);
    using F2 = double (*)(double, double);
    F1 f1 = nullptr;
    F2 f2 = nullptr;
    if (id == "sqrt") f1 = [](double x) { return std::sqrt(x); };
    else if (id == "floor") f1 = [](double x) { return std::floor(x); };
    else if (id == "abs") f1 = [](double x) { return std::fabs(x); };
    else if (id == "exp") f1 = [](double x) { return std::exp(x); };
    else if (id == "log") f1 = [](double x) { return std::log(x); };
    else if (id == "pow") f2 = [](double x, double y) { return std::pow(x, y); };
    else if (id == "min") f2 = [](double x, double y) { return std::fmin(x, y); };
    else if (id == "max") f2 = [](double x, double y) { return std::fmax(x, y); };
    else {
      pos_ = start;
      fail("unknown name '" + id + "'");
    }

    expect('(');
    Fn a = sum();
    if (f1 != nullptr) {
      expect(')');
      return [f1, a](double d, double i) { return f1(a(d, i)); };
    }
    expect(',');
    Fn b = sum();
    expect(')');
    return [f2, a, b](double d, double i) { return f2(a(d, i), b(d, i)); };
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser p(text);
  return Expression(std::string(text), p.parse_all());
}

Vec eval_per_coordinate(const Expression& expr, std::size_t d) {
  Vec out(d);
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = expr.eval(static_cast<double>(d), static_cast<double>(i + 1));
  }
  return out;
}

}  // namespace bplmc
