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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bplmc/potentials.hpp"
#include "bplmc/rng.hpp"

namespace bplmc {

enum class Variant { BMUMLA, BMUMLA_Dual, BMMMLA };

std::string_view to_string(Variant v);

/// Everything a chain needs. The mirror map phi drives the geometry; the
/// surrogate carries f, g, psi, lambda and the envelope side.
///
/// Special cases: phi = psi = squared Euclidean gives MYULA; g = Zero gives
/// the Hessian-Riemannian LMC; both together give ULA. BMMMLA with g = Zero
/// is the mirror-Langevin algorithm with an Euler-Maruyama inner loop.
struct ChainConfig {
  ChainConfig(SurrogatePotential surrogate, LegendreMap mirror);

  SurrogatePotential surrogate;
  LegendreMap mirror;
  Variant variant = Variant::BMUMLA;
  double gamma = 1e-3;
  std::size_t inner_steps = 10;
  std::size_t iterations = 1000;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  Vec x0;

  std::size_t dim() const { return mirror.dim(); }
  // Throws ConfigError on any violated invariant.
  void validate() const;
  // Number of retained rows, ceil((iterations - burn_in) / thin).
  std::size_t retained_rows() const;
  // Noise draws consumed per step.
  std::size_t noise_per_step() const;
};

struct ChainState {
  Vec position;
  // Dual point whose image under grad phi* is position: grad phi(x0) at the
  // start, then the pre-image each step produced. The dual variant evolves
  // this coordinate directly.
  Vec dual;
  Rng rng;
  std::size_t step_index = 0;
};

ChainState initial_state(const ChainConfig& cfg);

struct SampleBatch {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;  // row-major
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;

  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  Vec column(std::size_t c) const;
};

// Deterministic updates with caller-supplied standard normal draws. xi has
// dim() entries, or inner_steps * dim() for BMMMLA (inner step n uses
// xi[n*d .. n*d + d)).
Vec bmumla_update(const ChainConfig& cfg, ConstSpan x, ConstSpan xi);
// Returns the new dual position.
Vec bmumla_dual_update(const ChainConfig& cfg, ConstSpan y, ConstSpan xi);
Vec bmmmla_update(const ChainConfig& cfg, ConstSpan x, ConstSpan xi);

// One step drawing noise from the state's stream; the variant-specific
// functions ignore cfg.variant.
ChainState bmumla_step(const ChainConfig& cfg, ChainState state);
ChainState bmumla_dual_step(const ChainConfig& cfg, ChainState state);
ChainState bmmmla_step(const ChainConfig& cfg, ChainState state);
// In-place step dispatching on cfg.variant. Throws DivergenceError.
void advance(const ChainConfig& cfg, ChainState& state);

SampleBatch run_chain(const ChainConfig& cfg);

// Replica r runs with seed cfg.seed + r. Replicas execute in parallel
// (OpenMP) and the result equals run_replicas_serial exactly.
// max_threads <= 0 means: BPLMC_THREADS if set, else the OpenMP default.
std::vector<SampleBatch> run_replicas(const ChainConfig& cfg, std::size_t replicas,
                                      int max_threads = 0);
std::vector<SampleBatch> run_replicas_serial(const ChainConfig& cfg, std::size_t replicas);

// Thread cap from BPLMC_THREADS, or 0 if unset/invalid.
int replica_thread_cap();

// FNV-1a hash over every field that influences the output.
std::uint64_t config_fingerprint(const ChainConfig& cfg);

}  // namespace bplmc
