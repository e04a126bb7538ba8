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

#include "bplmc/samplers.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <exception>

#include "bplmc/error.hpp"

namespace bplmc {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::BMUMLA: return "bmumla";
    case Variant::BMUMLA_Dual: return "bmumla_dual";
    case Variant::BMMMLA: return "bmmmla";
  }
  return "unknown";
}

ChainConfig::ChainConfig(SurrogatePotential surrogate_, LegendreMap mirror_)
    : surrogate(std::move(surrogate_)), mirror(std::move(mirror_)), x0(mirror.dim(), 0.0) {}

void ChainConfig::validate() const {
  require_dim("ChainConfig: surrogate vs mirror", mirror.dim(), surrogate.dim());
  require_dim("ChainConfig: x0", mirror.dim(), x0.size());
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be positive");
  if (iterations == 0) throw ConfigError("iterations must be at least 1");
  if (burn_in >= iterations) throw ConfigError("burn_in must be smaller than iterations");
  if (thin == 0) throw ConfigError("thin must be at least 1");
  if (variant == Variant::BMMMLA && inner_steps == 0) {
    throw ConfigError("inner_steps must be at least 1");
  }
  for (double v : x0) {
    if (!std::isfinite(v)) throw ConfigError("x0 must be finite");
  }
}

std::size_t ChainConfig::retained_rows() const {
  return (iterations - burn_in + thin - 1) / thin;
}

std::size_t ChainConfig::noise_per_step() const {
  return variant == Variant::BMMMLA ? inner_steps * dim() : dim();
}

Vec SampleBatch::column(std::size_t c) const {
  Vec out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = data[r * cols + c];
  return out;
}

ChainState initial_state(const ChainConfig& cfg) {
  cfg.validate();
  ChainState s{cfg.x0, cfg.mirror.grad(cfg.x0), Rng(cfg.seed), 0};
  return s;
}

namespace {

void check_finite(ConstSpan v, std::size_t step, ConstSpan last) {
  for (double e : v) {
    if (!std::isfinite(e)) throw DivergenceError(step, Vec(last.begin(), last.end()));
  }
}

// x+ = grad phi*( grad phi(x) - gamma grad U(x) + sqrt(2 gamma) hess phi(x)^{1/2} xi )
void bmumla_kernel(const ChainConfig& cfg, ConstSpan x, ConstSpan xi, std::span<double> grad_buf,
                   std::span<double> out, std::span<double> dual_out = {}) {
  const LegendreMap& phi = cfg.mirror;
  cfg.surrogate.grad_into(x, grad_buf);
  const double gamma = cfg.gamma;
  const double s2g = std::sqrt(2.0 * gamma);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double y = phi.grad_at(i, x[i]) - gamma * grad_buf[i] +
                     s2g * std::sqrt(phi.hess_at(i, x[i])) * xi[i];
    out[i] = phi.conj_grad_at(i, y);
    if (!dual_out.empty()) dual_out[i] = y;
  }
}

// y+ = y - gamma grad U(grad phi*(y)) + sqrt(2 gamma) hess phi*(y)^{1/2} xi
void bmumla_dual_kernel(const ChainConfig& cfg, ConstSpan y, ConstSpan xi,
                        std::span<double> x_buf, std::span<double> grad_buf,
                        std::span<double> out) {
  const LegendreMap& phi = cfg.mirror;
  for (std::size_t i = 0; i < y.size(); ++i) x_buf[i] = phi.conj_grad_at(i, y[i]);
  cfg.surrogate.grad_into(x_buf, grad_buf);
  const double gamma = cfg.gamma;
  const double s2g = std::sqrt(2.0 * gamma);
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] - gamma * grad_buf[i] + s2g * (1.0 / phi.conj_hess_inv_sqrt_at(i, y[i])) * xi[i];
  }
}

// Mirror half step, then inner_steps Euler-Maruyama steps of
// dY = sqrt(2) hess phi*(Y)^{-1/2} dW over a time interval gamma.
void bmmmla_kernel(const ChainConfig& cfg, ConstSpan x, ConstSpan xi, std::span<double> grad_buf,
                   std::span<double> dual_buf, std::span<double> out) {
  const LegendreMap& phi = cfg.mirror;
  const std::size_t d = x.size();
  cfg.surrogate.grad_into(x, grad_buf);
  const double gamma = cfg.gamma;
  for (std::size_t i = 0; i < d; ++i) dual_buf[i] = phi.grad_at(i, x[i]) - gamma * grad_buf[i];
  const std::size_t n_inner = cfg.inner_steps;
  const double c = std::sqrt(2.0 * gamma / static_cast<double>(n_inner));
  for (std::size_t n = 0; n < n_inner; ++n) {
    const double* z = xi.data() + n * d;
    for (std::size_t i = 0; i < d; ++i) {
      dual_buf[i] = dual_buf[i] + c * phi.conj_hess_inv_sqrt_at(i, dual_buf[i]) * z[i];
    }
  }
  for (std::size_t i = 0; i < d; ++i) out[i] = phi.conj_grad_at(i, dual_buf[i]);
}

void check_noise(const ChainConfig& cfg, ConstSpan xi, std::size_t expected) {
  require_dim("sampler noise", expected, xi.size());
  (void)cfg;
}

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Vec bmumla_update(const ChainConfig& cfg, ConstSpan x, ConstSpan xi) {
  require_dim("bmumla_update", cfg.dim(), x.size());
  check_noise(cfg, xi, cfg.dim());
  Vec g(cfg.dim()), out(cfg.dim());
  bmumla_kernel(cfg, x, xi, g, out);
  return out;
}

Vec bmumla_dual_update(const ChainConfig& cfg, ConstSpan y, ConstSpan xi) {
  require_dim("bmumla_dual_update", cfg.dim(), y.size());
  check_noise(cfg, xi, cfg.dim());
  Vec xb(cfg.dim()), g(cfg.dim()), out(cfg.dim());
  bmumla_dual_kernel(cfg, y, xi, xb, g, out);
  return out;
}

Vec bmmmla_update(const ChainConfig& cfg, ConstSpan x, ConstSpan xi) {
  require_dim("bmmmla_update", cfg.dim(), x.size());
  check_noise(cfg, xi, cfg.inner_steps * cfg.dim());
  Vec g(cfg.dim()), yb(cfg.dim()), out(cfg.dim());
  bmmmla_kernel(cfg, x, xi, g, yb, out);
  return out;
}

namespace {

struct Workspace {
  explicit Workspace(const ChainConfig& cfg)
      : noise(cfg.noise_per_step()), grad(cfg.dim()), buf(cfg.dim()), next(cfg.dim()) {}
  Vec noise, grad, buf, next;
};

void advance_with(const ChainConfig& cfg, Variant variant, ChainState& s, Workspace& w) {
  const std::size_t step = s.step_index;
  try {
    switch (variant) {
      case Variant::BMUMLA:
        s.rng.fill_normal({w.noise.data(), cfg.dim()});
        bmumla_kernel(cfg, s.position, {w.noise.data(), cfg.dim()}, w.grad, w.next, w.buf);
        check_finite(w.next, step, s.position);
        s.position.swap(w.next);
        s.dual.swap(w.buf);
        break;
      case Variant::BMUMLA_Dual:
        s.rng.fill_normal({w.noise.data(), cfg.dim()});
        bmumla_dual_kernel(cfg, s.dual, {w.noise.data(), cfg.dim()}, w.buf, w.grad, w.next);
        check_finite(w.next, step, s.position);
        for (std::size_t i = 0; i < cfg.dim(); ++i) w.buf[i] = cfg.mirror.conj_grad_at(i, w.next[i]);
        check_finite(w.buf, step, s.position);
        s.dual.swap(w.next);
        s.position.swap(w.buf);
        break;
      case Variant::BMMMLA:
        w.noise.resize(cfg.inner_steps * cfg.dim());
        s.rng.fill_normal(w.noise);
        bmmmla_kernel(cfg, s.position, w.noise, w.grad, w.buf, w.next);
        check_finite(w.next, step, s.position);
        s.position.swap(w.next);
        s.dual.swap(w.buf);
        break;
    }
  } catch (const DomainError&) {
    // The image left the conjugate domain; report it like any divergence.
    throw DivergenceError(step, s.position);
  }
  ++s.step_index;
}

ChainState step_copy(const ChainConfig& cfg, Variant v, ChainState s) {
  Workspace w(cfg);
  advance_with(cfg, v, s, w);
  return s;
}

}  // namespace

ChainState bmumla_step(const ChainConfig& cfg, ChainState state) {
  return step_copy(cfg, Variant::BMUMLA, std::move(state));
}

ChainState bmumla_dual_step(const ChainConfig& cfg, ChainState state) {
  return step_copy(cfg, Variant::BMUMLA_Dual, std::move(state));
}

ChainState bmmmla_step(const ChainConfig& cfg, ChainState state) {
  return step_copy(cfg, Variant::BMMMLA, std::move(state));
}

void advance(const ChainConfig& cfg, ChainState& state) {
  Workspace w(cfg);
  advance_with(cfg, cfg.variant, state, w);
}

SampleBatch run_chain(const ChainConfig& cfg) {
  ChainState s = initial_state(cfg);
  SampleBatch batch;
  batch.cols = cfg.dim();
  batch.rows = cfg.retained_rows();
  batch.data.reserve(batch.rows * batch.cols);
  batch.config_hash = config_fingerprint(cfg);
  batch.seed = cfg.seed;
  batch.started = now_iso8601();
  Workspace w(cfg);
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    advance_with(cfg, cfg.variant, s, w);
    if (k >= cfg.burn_in && (k - cfg.burn_in) % cfg.thin == 0) {
      batch.data.insert(batch.data.end(), s.position.begin(), s.position.end());
    }
  }
  batch.finished = now_iso8601();
  return batch;
}

namespace {

ChainConfig replica_config(const ChainConfig& cfg, std::size_t r) {
  ChainConfig c = cfg;
  c.seed = cfg.seed + r;
  return c;
}

}  // namespace

std::vector<SampleBatch> run_replicas_serial(const ChainConfig& cfg, std::size_t replicas) {
  if (replicas == 0) throw ConfigError("replicas must be at least 1");
  std::vector<SampleBatch> out;
  out.reserve(replicas);
  for (std::size_t r = 0; r < replicas; ++r) out.push_back(run_chain(replica_config(cfg, r)));
  return out;
}

int replica_thread_cap() {
  const char* env = std::getenv("BPLMC_THREADS");
  if (env == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v <= 0) return 0;
  return static_cast<int>(v);
}

std::vector<SampleBatch> run_replicas(const ChainConfig& cfg, std::size_t replicas,
                                      int max_threads) {
  if (replicas == 0) throw ConfigError("replicas must be at least 1");
  cfg.validate();
  int threads = max_threads > 0 ? max_threads : replica_thread_cap();
  if (threads <= 0) threads = omp_get_max_threads();
  std::vector<SampleBatch> out(replicas);
  std::vector<std::exception_ptr> errors(replicas);
  const long n = static_cast<long>(replicas);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long r = 0; r < n; ++r) {
    try {
      out[r] = run_chain(replica_config(cfg, static_cast<std::size_t>(r)));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ull;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { bytes(&v, sizeof v); }
  void vec(const Vec& v) {
    u64(v.size());
    for (double e : v) f64(e);
  }
};

}  // namespace

std::uint64_t config_fingerprint(const ChainConfig& cfg) {
  Fnv h;
  const SurrogatePotential& s = cfg.surrogate;
  const SmoothTerm& f = s.base().f;
  const NonsmoothTerm& g = s.base().g;
  const ProxPair& pair = s.pair();
  h.u64(static_cast<std::uint64_t>(cfg.variant));
  h.f64(cfg.gamma);
  h.u64(cfg.inner_steps);
  h.u64(cfg.iterations);
  h.u64(cfg.burn_in);
  h.u64(cfg.thin);
  h.u64(cfg.seed);
  h.vec(cfg.x0);
  h.u64(static_cast<std::uint64_t>(cfg.mirror.kind()));
  h.u64(cfg.mirror.dim());
  h.vec(cfg.mirror.params());
  h.u64(static_cast<std::uint64_t>(pair.psi().kind()));
  h.vec(pair.psi().params());
  h.u64(static_cast<std::uint64_t>(pair.side()));
  h.f64(pair.lambda());
  h.u64(static_cast<std::uint64_t>(g.kind()));
  h.vec(g.weights());
  h.vec(g.lower());
  h.vec(g.upper());
  h.u64(static_cast<std::uint64_t>(f.kind()));
  h.f64(f.ridge());
  h.vec(f.data().x);
  for (int y : f.data().y) h.u64(static_cast<std::uint64_t>(y));
  return h.h;
}

}  // namespace bplmc
