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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bplmc/diagnostics.hpp"
#include "bplmc/samplers.hpp"

namespace bplmc {

using Json = nlohmann::json;

enum class SamplerChoice { BMUMLA, BMUMLA_Dual, BMMMLA, MYULA };

std::string_view to_string(SamplerChoice s);

// A per-coordinate parameter is a JSON number (same for every coordinate),
// a formula string over d and i, or an array of exactly d numbers.
Vec resolve_param(const Json& value, std::size_t d, const std::string& field);

struct MapSpec {
  LegendreKind kind = LegendreKind::SquaredEuclidean;
  Json param;  // m for weighted_quadratic, beta/sigma for hypentropy
};

struct PotentialSpec {
  SmoothKind smooth = SmoothKind::Zero;
  NonsmoothKind nonsmooth = NonsmoothKind::Zero;
  Json weights;  // weighted_l1
  Json lower;    // box
  Json upper;
  // logistic_ridge
  std::size_t samples = 0;
  Json theta_star;
  double ridge = 0.0;
  std::uint64_t data_seed = 0;
  std::string data_path;  // CSV x_1..x_d,y; overrides generation when set
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string preset;  // informational once resolved
  std::size_t dim = 0;
  SamplerChoice sampler = SamplerChoice::BMUMLA;
  Side side = Side::Left;
  MapSpec mirror;
  MapSpec envelope;
  PotentialSpec potential;
  double gamma = 1e-3;
  double lambda = 1e-2;
  std::size_t iterations = 1000;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  std::size_t inner_steps = 10;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  Json x0 = 0.0;
  std::string output;
  std::string format = "csv";  // csv | binary
  std::vector<std::size_t> track;  // 1-based coordinates for error_curves.csv
};

std::vector<std::string> preset_names();
// The JSON document a preset expands to; throws ConfigError if unknown.
Json preset_json(std::string_view name);

// Defaults, then the preset named by "preset" (if any), then the document's
// own fields as a JSON merge patch. Unknown or ill-typed fields throw
// ConfigError naming the field.
ExperimentConfig parse_config(const Json& doc);
ExperimentConfig load_config(const std::string& path);
// Fully resolved document; parse_config(to_json(c)) reproduces c.
Json to_json(const ExperimentConfig& cfg);

struct BuiltExperiment {
  ChainConfig chain;
  std::optional<Vec> theta_star;              // logistic targets
  std::vector<MarginalReference> references;  // separable f = 0 targets
};

BuiltExperiment build_experiment(const ExperimentConfig& cfg);

struct SampleRunSummary {
  std::string output_dir;
  std::vector<std::string> files;
  std::size_t rows = 0;
};

// Runs the chains and writes samples, diagnostics, config.resolved.json and
// manifest.json into out_dir (created if missing; cfg.output when empty).
SampleRunSummary run_sample(const ExperimentConfig& cfg, const std::string& out_dir = {});

// "laplace:<rate formula>" or "uniform:<lower formula>:<upper formula>".
std::vector<MarginalReference> parse_reference_spec(const std::string& spec, std::size_t d);

// Reads a CSV or binary sample file and writes diagnostics.csv to out_dir.
std::vector<DimensionDiagnostics> run_diag(const std::string& samples_path,
                                           const std::string& reference_spec,
                                           const std::string& out_dir);

}  // namespace bplmc
