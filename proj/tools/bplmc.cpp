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

// bplmc command-line entry point: sample, verify, diag.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bplmc/error.hpp"
#include "bplmc/experiment.hpp"
#include "bplmc/verify.hpp"

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;

int cmd_sample(const std::string& config_path, const std::string& out_dir, const std::uint64_t* seed) {
  bplmc::ExperimentConfig cfg = bplmc::load_config(config_path);
  if (seed != nullptr) cfg.seed = *seed;
  const auto summary = bplmc::run_sample(cfg, out_dir);
  std::printf("%s: %zu rows written to %s\n", cfg.name.c_str(), summary.rows,
              summary.output_dir.c_str());
  return 0;
}

int cmd_verify(const std::string& filter, const std::string& out_dir, double corruption) {
  bplmc::VerifyOptions opt;
  opt.filter = filter;
  opt.prox_corruption = corruption;
  const auto results = bplmc::run_verify_suite(opt);
  if (results.empty()) {
    std::fprintf(stderr, "verify: no check matches '%s'\n", filter.c_str());
    return kExitConfig;
  }

  std::filesystem::create_directories(out_dir);
  const auto csv_path = std::filesystem::path(out_dir) / "verify_report.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw bplmc::FormatError("cannot write " + csv_path.string());
  csv << "check,pass,metric,threshold,detail\n";

  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-4s  %-38s  metric %-12.5g threshold %-12.5g %s\n", r.pass ? "ok" : "FAIL",
                r.name.c_str(), r.metric, r.threshold, r.detail.c_str());
    char nums[64];
    std::snprintf(nums, sizeof nums, "%.17g,%.17g", r.metric, r.threshold);
    std::string detail = r.detail;
    for (char& c : detail) {
      if (c == ',' || c == '\n') c = ';';
    }
    csv << r.name << ',' << (r.pass ? 1 : 0) << ',' << nums << ',' << detail << '\n';
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed; report written to %s\n", results.size(), failed,
              csv_path.string().c_str());
  return failed == 0 ? 0 : kExitFailedChecks;
}

int cmd_diag(const std::string& input, const std::string& ref, const std::string& out_dir) {
  const auto diags = bplmc::run_diag(input, ref, out_dir);
  double worst_w1 = 0.0;
  for (const auto& d : diags) worst_w1 = std::max(worst_w1, d.w1);
  std::printf("%zu dimensions, max w1 %.6g; wrote %s\n", diags.size(), worst_w1,
              (std::filesystem::path(out_dir) / "diagnostics.csv").string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman proximal Langevin Monte Carlo samplers"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "Run an experiment from a JSON config");
  std::string config_path;
  std::string sample_out;
  std::uint64_t seed = 0;
  sample->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
  sample->add_option("-o,--output", sample_out, "Output directory (default: config 'output')");
  auto* seed_opt = sample->add_option("--seed", seed, "Override the config seed");

  auto* verify = app.add_subcommand("verify", "Run the numerical verification suite");
  std::string filter;
  std::string verify_out = ".";
  double corruption = 0.0;
  verify->add_option("--filter", filter, "Only run checks whose name contains this text");
  verify->add_option("-o,--output", verify_out, "Directory for verify_report.csv");
  // Negative control for the test suite: shifts every closed-form prox value.
  verify->add_option("--corrupt-prox", corruption)->group("");

  auto* diag = app.add_subcommand("diag", "Compare a sample file against reference marginals");
  std::string input;
  std::string ref;
  std::string diag_out = ".";
  diag->add_option("-i,--input", input, "Sample file (CSV or binary)")->required();
  diag->add_option("-r,--reference", ref, "laplace:<rate> or uniform:<lower>:<upper>")
      ->required();
  diag->add_option("-o,--output", diag_out, "Directory for diagnostics.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) return cmd_sample(config_path, sample_out, *seed_opt ? &seed : nullptr);
    if (*verify) return cmd_verify(filter, verify_out, corruption);
    if (*diag) return cmd_diag(input, ref, diag_out);
  } catch (const bplmc::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const bplmc::DivergenceError& e) {
    std::fprintf(stderr, "error: chain diverged at step %zu\n", e.step());
    return kExitDiverged;
  } catch (const bplmc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return 0;
}
