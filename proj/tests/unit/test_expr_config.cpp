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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "bplmc/error.hpp"
#include "bplmc/experiment.hpp"
#include "bplmc/expr.hpp"
#include "bplmc/sample_io.hpp"

using bplmc::ConfigError;
using bplmc::Expression;
using bplmc::Json;

namespace {

double ev(const char* text, double d = 100, double i = 1) { return Expression::parse(text).eval(d, i); }

std::string config_error(const Json& doc) {
  try {
    (void)bplmc::parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("expression arithmetic and precedence") {
  CHECK(ev("1 + 2 * 3") == 7.0);
  CHECK(ev("(1 + 2) * 3") == 9.0);
  CHECK(ev("2^3^2") == 512.0);
  CHECK(ev("-2^2") == -4.0);
  CHECK(ev("2^-1") == 0.5);
  CHECK(ev("10 - 4 - 3") == 3.0);
  CHECK(ev("12 / 3 / 2") == 2.0);
  CHECK(ev("1.5e2") == 150.0);
  CHECK(ev("2*sqrt(d-i+1)", 100, 1) == 20.0);
  CHECK(ev("2*sqrt(d-i+1)", 100, 100) == 2.0);
  CHECK(ev("floor((i-1)/(d/10))", 20, 3) == 1.0);
  CHECK(ev("min(i, 3) + max(d, 1) + abs(-2) + pow(2, 5)", 4, 7) == 3 + 4 + 2 + 32);
  CHECK(ev("log(exp(1.25))") == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(Expression::parse(" i/2 ").source() == " i/2 ");
}

TEST_CASE("expression errors carry a position") {
  for (const char* bad : {"", "1 +", "2 * (3", "foo(1)", "x", "1 2", "sqrt(1, 2)", "max(1)", ")"}) {
    CHECK_THROWS_AS(Expression::parse(bad), ConfigError);
  }
  try {
    (void)Expression::parse("1 + $");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find('4') != std::string::npos);
  }
}

TEST_CASE("per-coordinate evaluation and parameter resolution") {
  const auto v = bplmc::eval_per_coordinate(Expression::parse("i*i"), 4);
  CHECK(v == bplmc::Vec{1.0, 4.0, 9.0, 16.0});
  CHECK(bplmc::resolve_param(Json(2.5), 3, "p") == bplmc::Vec{2.5, 2.5, 2.5});
  CHECK(bplmc::resolve_param(Json("d"), 2, "p") == bplmc::Vec{2.0, 2.0});
  CHECK(bplmc::resolve_param(Json::array({1.0, 2.0}), 2, "p") == bplmc::Vec{1.0, 2.0});
  CHECK_THROWS_AS(bplmc::resolve_param(Json::array({1.0, 2.0}), 3, "p"), ConfigError);
  CHECK_THROWS_AS(bplmc::resolve_param(Json(true), 3, "p"), ConfigError);
}

TEST_CASE("presets resolve to the experiment parameters") {
  const auto lap = bplmc::parse_config(Json{{"preset", "an_laplace"}});
  CHECK(lap.dim == 100);
  CHECK(lap.gamma == 5e-6);
  CHECK(lap.lambda == 1e-5);
  CHECK(lap.iterations == 100000);
  const auto built = bplmc::build_experiment(lap);
  const auto& beta = built.chain.mirror.params();
  CHECK(beta.front() == doctest::Approx(20.0));
  CHECK(beta.back() == doctest::Approx(2.0));
  CHECK(built.chain.surrogate.pair().psi().params()[9] == 5.0);
  CHECK(built.chain.surrogate.base().g.weights()[99] == 100.0);
  REQUIRE(built.references.size() == 100);
  CHECK(built.references[2].pdf(0.0) == 1.5);

  const auto box = bplmc::build_experiment(bplmc::parse_config(Json{{"preset", "an_uniform"}, {"dim", 10}}));
  CHECK(box.chain.surrogate.base().g.lower()[3] == -4.0);
  CHECK(box.chain.surrogate.base().g.upper()[3] == 4.0);
  CHECK(box.chain.gamma == 0.01);
  CHECK(box.chain.surrogate.pair().lambda() == 1.0);

  const auto logi = bplmc::parse_config(Json{{"preset", "logistic"}, {"dim", 20}, {"potential", {{"samples", 50}}}});
  CHECK(logi.replicas == 30);
  CHECK(logi.potential.samples == 50);
  const auto lb = bplmc::build_experiment(logi);
  REQUIRE(lb.theta_star.has_value());
  CHECK((*lb.theta_star)[0] == 0.0);
  CHECK((*lb.theta_star)[19] == doctest::Approx(0.9));
  // Envelope parameter is the squared penalty weight in each block.
  const auto& sigma = lb.chain.surrogate.pair().psi().params();
  const auto& w = lb.chain.surrogate.base().g.weights();
  for (std::size_t i = 0; i < 20; ++i) CHECK(sigma[i] == doctest::Approx(w[i] * w[i]));
  CHECK(w[0] == 10.0);
  CHECK(w[19] == 1.0);
  CHECK(lb.references.empty());
}

TEST_CASE("explicit fields override presets and round trip") {
  for (const auto& name : bplmc::preset_names()) {
    const auto cfg = bplmc::parse_config(Json{{"preset", name}, {"seed", 17}, {"dim", 6}});
    CHECK(cfg.seed == 17);
    CHECK(cfg.dim == 6);
    const Json once = bplmc::to_json(cfg);
    const Json twice = bplmc::to_json(bplmc::parse_config(once));
    CHECK(once == twice);
  }
}

TEST_CASE("myula resets both maps to the Euclidean one") {
  const auto cfg = bplmc::parse_config(Json{{"preset", "an_laplace"}, {"sampler", "myula"}});
  CHECK(cfg.mirror.kind == bplmc::LegendreKind::SquaredEuclidean);
  CHECK(cfg.envelope.kind == bplmc::LegendreKind::SquaredEuclidean);
  const auto built = bplmc::build_experiment(cfg);
  CHECK(built.chain.variant == bplmc::Variant::BMUMLA);
}

TEST_CASE("config errors name the field") {
  CHECK(config_error(Json{{"dim", 2}, {"gamma", -1.0}}).find("'gamma'") != std::string::npos);
  CHECK(config_error(Json{{"dim", 2}, {"bogus", 1}}).find("'bogus'") != std::string::npos);
  CHECK(config_error(Json{{"dim", 2}, {"mirror", {{"kind", "nope"}}}}).find("mirror") != std::string::npos);
  CHECK(config_error(Json{{"preset", "unknown"}}).find("'preset'") != std::string::npos);
  CHECK(config_error(Json{{"dim", 2}, {"sampler", "gibbs"}}).find("'sampler'") != std::string::npos);
  CHECK(config_error(Json{{"dim", 2}, {"potential", {{"weights", "i"}, {"extra", 1}}}}).find("potential.extra") !=
        std::string::npos);
  CHECK_FALSE(config_error(Json{{"dim", 2}, {"format", "xml"}}).empty());
  CHECK_FALSE(config_error(Json{{"dim", 2}, {"iterations", 1.5}}).empty());
}

TEST_CASE("reference specs") {
  const auto lap = bplmc::parse_reference_spec("laplace:i", 3);
  REQUIRE(lap.size() == 3);
  CHECK(lap[2].pdf(0.0) == 1.5);
  const auto uni = bplmc::parse_reference_spec("uniform:-i:i", 2);
  CHECK(uni[1].cdf(0.0) == 0.5);
  CHECK_THROWS_AS(bplmc::parse_reference_spec("gauss:1", 2), ConfigError);
  CHECK_THROWS_AS(bplmc::parse_reference_spec("uniform:1:1", 2), ConfigError);
  CHECK_THROWS_AS(bplmc::parse_reference_spec("laplace:-1", 2), ConfigError);
}

TEST_CASE("run_sample writes samples, diagnostics and a manifest") {
  const auto dir = std::filesystem::temp_directory_path() / "bplmc_test_run_sample";
  std::filesystem::remove_all(dir);
  auto cfg = bplmc::parse_config(
      Json{{"preset", "an_laplace"}, {"dim", 5}, {"iterations", 1000}, {"burn_in", 100}, {"format", "csv"}});
  const auto summary = bplmc::run_sample(cfg, dir.string());
  CHECK(summary.rows == 900);
  const auto batch = bplmc::read_samples((dir / "samples.csv").string());
  CHECK(batch.rows == 900);
  CHECK(batch.cols == 5);
  CHECK(std::filesystem::exists(dir / "diagnostics.csv"));
  std::ifstream in(dir / "manifest.json");
  const Json manifest = Json::parse(in);
  CHECK(manifest.at("seed") == 0);
  CHECK(manifest.at("replicas").size() == 1);
  // The resolved config in the manifest reproduces the run.
  const auto again = bplmc::parse_config(manifest.at("config"));
  const auto dir2 = dir / "again";
  bplmc::run_sample(again, dir2.string());
  CHECK(bplmc::read_samples((dir2 / "samples.csv").string()).data == batch.data);
}
