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

#include "bplmc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "bplmc/error.hpp"
#include "bplmc/expr.hpp"
#include "bplmc/sample_io.hpp"

namespace bplmc {

namespace fs = std::filesystem;

std::string_view to_string(SamplerChoice s) {
  switch (s) {
    case SamplerChoice::BMUMLA: return "bmumla";
    case SamplerChoice::BMUMLA_Dual: return "bmumla_dual";
    case SamplerChoice::BMMMLA: return "bmmmla";
    case SamplerChoice::MYULA: return "myula";
  }
  return "unknown";
}

Vec resolve_param(const Json& value, std::size_t d, const std::string& field) {
  if (value.is_number()) return Vec(d, value.get<double>());
  if (value.is_string()) {
    try {
      return eval_per_coordinate(Expression::parse(value.get<std::string>()), d);
    } catch (const ConfigError& e) {
      throw ConfigError("config field '" + field + "': " + e.what());
    }
  }
  if (value.is_array()) {
    if (value.size() != d) {
      throw ConfigError("config field '" + field + "': expected " + std::to_string(d) +
                        " entries, got " + std::to_string(value.size()));
    }
    Vec out;
    out.reserve(d);
    for (const Json& v : value) {
      if (!v.is_number()) throw ConfigError("config field '" + field + "': non-numeric entry");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (value.is_null()) throw ConfigError("config field '" + field + "': missing");
  throw ConfigError("config field '" + field + "': expected number, formula string or array");
}

namespace {

// Block index 0..9 of coordinate i when d coordinates are cut into ten blocks.
constexpr const char* kBlock = "floor((i-1)/(d/10))";

std::string with_block(const std::string& pattern) {
  std::string out;
  for (char c : pattern) {
    if (c == 'B') {
      out += kBlock;
    } else {
      out += c;
    }
  }
  return out;
}

Json defaults_json() {
  return Json{{"name", "experiment"},
              {"sampler", "bmumla"},
              {"side", "left"},
              {"mirror", {{"kind", "squared_euclidean"}}},
              {"envelope", {{"kind", "squared_euclidean"}}},
              {"potential", {{"smooth", "zero"}, {"nonsmooth", "zero"}}},
              {"gamma", 1e-3},
              {"lambda", 1e-2},
              {"iterations", 1000},
              {"burn_in", 0},
              {"thin", 1},
              {"inner_steps", 10},
              {"seed", 0},
              {"replicas", 1},
              {"x0", 0.0},
              {"format", "csv"},
              {"track", Json::array()}};
}

const std::set<std::string> kTopKeys = {
    "name",  "preset",     "dim",         "sampler", "side",     "mirror", "envelope",
    "potential", "gamma",  "lambda",      "iterations", "burn_in", "thin", "inner_steps",
    "seed",  "replicas",   "x0",          "output",  "format",   "track"};
const std::set<std::string> kMapKeys = {"kind", "param"};
const std::set<std::string> kPotentialKeys = {"smooth",     "nonsmooth", "weights", "lower",
                                              "upper",      "samples",   "theta_star",
                                              "ridge",      "data_seed", "data_path"};

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("config field '" + where + "': expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("config field '" + (where.empty() ? "" : where + ".") + item.key() +
                        "': unknown field");
    }
  }
}

std::string field_string(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError("config field '" + path + "': expected a string");
  return v.get<std::string>();
}

double field_number(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("config field '" + path + "': expected a number");
  return v.get<double>();
}

std::uint64_t as_uint(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x >= 0.0 && x == std::floor(x) && x < 1.8e19) return static_cast<std::uint64_t>(x);
  }
  throw ConfigError("config field '" + path + "': expected a nonnegative integer");
}

std::uint64_t field_uint(const Json& obj, const std::string& key, const std::string& path) {
  return as_uint(obj.at(key), path);
}

LegendreKind parse_legendre(const std::string& s, const std::string& path) {
  for (LegendreKind k : {LegendreKind::SquaredEuclidean, LegendreKind::WeightedQuadratic,
                         LegendreKind::Hypentropy, LegendreKind::Exponential}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("config field '" + path + "': unknown map kind '" + s + "'");
}

MapSpec parse_map(const Json& obj, const std::string& path) {
  check_keys(obj, kMapKeys, path);
  if (!obj.contains("kind")) throw ConfigError("config field '" + path + ".kind': missing");
  MapSpec m;
  m.kind = parse_legendre(field_string(obj, "kind", path + ".kind"), path + ".kind");
  if (obj.contains("param")) m.param = obj.at("param");
  if ((m.kind == LegendreKind::WeightedQuadratic || m.kind == LegendreKind::Hypentropy) &&
      m.param.is_null()) {
    throw ConfigError("config field '" + path + ".param': required for " +
                      std::string(to_string(m.kind)));
  }
  return m;
}

Json map_to_json(const MapSpec& m) {
  Json j{{"kind", to_string(m.kind)}};
  if (!m.param.is_null()) j["param"] = m.param;
  return j;
}

LegendreMap make_map(const MapSpec& m, std::size_t d, const std::string& path) {
  switch (m.kind) {
    case LegendreKind::SquaredEuclidean: return LegendreMap::squared_euclidean(d);
    case LegendreKind::Exponential: return LegendreMap::exponential(d);
    case LegendreKind::WeightedQuadratic:
      return LegendreMap::weighted_quadratic(resolve_param(m.param, d, path + ".param"));
    case LegendreKind::Hypentropy:
      return LegendreMap::hypentropy(resolve_param(m.param, d, path + ".param"));
  }
  throw ConfigError("config field '" + path + "': unsupported map");
}

PotentialSpec parse_potential(const Json& obj) {
  check_keys(obj, kPotentialKeys, "potential");
  PotentialSpec p;
  const std::string smooth = obj.contains("smooth") ? field_string(obj, "smooth", "potential.smooth")
                                                    : "zero";
  if (smooth == "zero") {
    p.smooth = SmoothKind::Zero;
  } else if (smooth == "logistic_ridge") {
    p.smooth = SmoothKind::LogisticRidge;
  } else {
    throw ConfigError("config field 'potential.smooth': unknown kind '" + smooth + "'");
  }
  const std::string ns = obj.contains("nonsmooth")
                             ? field_string(obj, "nonsmooth", "potential.nonsmooth")
                             : "zero";
  if (ns == "zero") {
    p.nonsmooth = NonsmoothKind::Zero;
  } else if (ns == "weighted_l1") {
    p.nonsmooth = NonsmoothKind::WeightedL1;
  } else if (ns == "box") {
    p.nonsmooth = NonsmoothKind::BoxIndicator;
  } else {
    throw ConfigError("config field 'potential.nonsmooth': unknown kind '" + ns + "'");
  }
  if (obj.contains("weights")) p.weights = obj.at("weights");
  if (obj.contains("lower")) p.lower = obj.at("lower");
  if (obj.contains("upper")) p.upper = obj.at("upper");
  if (obj.contains("theta_star")) p.theta_star = obj.at("theta_star");
  if (obj.contains("samples")) p.samples = field_uint(obj, "samples", "potential.samples");
  if (obj.contains("ridge")) p.ridge = field_number(obj, "ridge", "potential.ridge");
  if (obj.contains("data_seed")) p.data_seed = field_uint(obj, "data_seed", "potential.data_seed");
  if (obj.contains("data_path")) p.data_path = field_string(obj, "data_path", "potential.data_path");

  if (p.nonsmooth == NonsmoothKind::WeightedL1 && p.weights.is_null()) {
    throw ConfigError("config field 'potential.weights': required for weighted_l1");
  }
  if (p.nonsmooth == NonsmoothKind::BoxIndicator && (p.lower.is_null() || p.upper.is_null())) {
    throw ConfigError("config field 'potential.lower'/'potential.upper': required for box");
  }
  if (p.smooth == SmoothKind::LogisticRidge) {
    if (p.theta_star.is_null()) {
      throw ConfigError("config field 'potential.theta_star': required for logistic_ridge");
    }
    if (p.data_path.empty() && p.samples == 0) {
      throw ConfigError("config field 'potential.samples': must be positive for logistic_ridge");
    }
    if (p.ridge < 0.0) throw ConfigError("config field 'potential.ridge': must be nonnegative");
  }
  return p;
}

Json potential_to_json(const PotentialSpec& p) {
  Json j{{"smooth", p.smooth == SmoothKind::Zero ? "zero" : "logistic_ridge"},
         {"nonsmooth", to_string(p.nonsmooth)}};
  if (!p.weights.is_null()) j["weights"] = p.weights;
  if (!p.lower.is_null()) j["lower"] = p.lower;
  if (!p.upper.is_null()) j["upper"] = p.upper;
  if (p.smooth == SmoothKind::LogisticRidge) {
    j["samples"] = p.samples;
    j["theta_star"] = p.theta_star;
    j["ridge"] = p.ridge;
    j["data_seed"] = p.data_seed;
    if (!p.data_path.empty()) j["data_path"] = p.data_path;
  }
  return j;
}

}  // namespace

std::vector<std::string> preset_names() { return {"an_laplace", "an_uniform", "logistic"}; }

Json preset_json(std::string_view name) {
  const std::string hyp_beta = "2*sqrt(d-i+1)";
  if (name == "an_laplace") {
    return Json{{"name", "an_laplace"},
                {"dim", 100},
                {"sampler", "bmumla"},
                {"side", "left"},
                {"mirror", {{"kind", "hypentropy"}, {"param", hyp_beta}}},
                {"envelope", {{"kind", "weighted_quadratic"}, {"param", "i/2"}}},
                {"potential", {{"smooth", "zero"}, {"nonsmooth", "weighted_l1"}, {"weights", "i"}}},
                {"gamma", 5e-6},
                {"lambda", 1e-5},
                {"iterations", 100000},
                {"burn_in", 1000},
                {"format", "binary"}};
  }
  if (name == "an_uniform") {
    return Json{{"name", "an_uniform"},
                {"dim", 100},
                {"sampler", "bmumla"},
                {"side", "left"},
                {"mirror", {{"kind", "hypentropy"}, {"param", hyp_beta}}},
                {"envelope", {{"kind", "squared_euclidean"}}},
                {"potential",
                 {{"smooth", "zero"}, {"nonsmooth", "box"}, {"lower", "-i"}, {"upper", "i"}}},
                {"gamma", 0.01},
                {"lambda", 1.0},
                {"iterations", 5000000},
                {"burn_in", 500000},
                {"thin", 50},
                {"format", "binary"}};
  }
  if (name == "logistic") {
    const std::string penalty = with_block("(10-B)");
    return Json{{"name", "logistic"},
                {"dim", 100},
                {"sampler", "bmumla"},
                {"side", "left"},
                {"mirror", {{"kind", "hypentropy"}, {"param", with_block("2*(B+1)^0.25")}}},
                {"envelope", {{"kind", "hypentropy"}, {"param", penalty + "^2"}}},
                {"potential",
                 {{"smooth", "logistic_ridge"},
                  {"nonsmooth", "weighted_l1"},
                  {"weights", penalty},
                  {"samples", 1000},
                  {"theta_star", with_block("0.1*B")},
                  {"ridge", 0.1},
                  {"data_seed", 1}}},
                {"gamma", 5e-4},
                {"lambda", 0.01},
                {"iterations", 4000},
                {"burn_in", 0},
                {"replicas", 30},
                {"format", "binary"}};
  }
  throw ConfigError("config field 'preset': unknown preset '" + std::string(name) + "'");
}

ExperimentConfig parse_config(const Json& doc) {
  check_keys(doc, kTopKeys, "");
  Json full = defaults_json();
  std::string preset;
  if (doc.contains("preset") && !doc.at("preset").is_null()) {
    preset = field_string(doc, "preset", "preset");
    full.merge_patch(preset_json(preset));
  }
  full.merge_patch(doc);

  ExperimentConfig c;
  c.preset = preset;
  c.name = field_string(full, "name", "name");
  if (!full.contains("dim")) throw ConfigError("config field 'dim': missing");
  c.dim = field_uint(full, "dim", "dim");
  if (c.dim == 0) throw ConfigError("config field 'dim': must be positive");

  const std::string sampler = field_string(full, "sampler", "sampler");
  bool known = false;
  for (SamplerChoice s : {SamplerChoice::BMUMLA, SamplerChoice::BMUMLA_Dual,
                          SamplerChoice::BMMMLA, SamplerChoice::MYULA}) {
    if (sampler == to_string(s)) {
      c.sampler = s;
      known = true;
    }
  }
  if (!known) throw ConfigError("config field 'sampler': unknown sampler '" + sampler + "'");

  const std::string side = field_string(full, "side", "side");
  if (side == "left") {
    c.side = Side::Left;
  } else if (side == "right") {
    c.side = Side::Right;
  } else {
    throw ConfigError("config field 'side': expected 'left' or 'right'");
  }

  c.mirror = parse_map(full.at("mirror"), "mirror");
  c.envelope = parse_map(full.at("envelope"), "envelope");
  if (c.sampler == SamplerChoice::MYULA) {
    c.mirror = MapSpec{};
    c.envelope = MapSpec{};
  }
  c.potential = parse_potential(full.at("potential"));

  c.gamma = field_number(full, "gamma", "gamma");
  c.lambda = field_number(full, "lambda", "lambda");
  if (!(c.gamma > 0.0)) throw ConfigError("config field 'gamma': must be positive");
  if (!(c.lambda > 0.0)) throw ConfigError("config field 'lambda': must be positive");
  c.iterations = field_uint(full, "iterations", "iterations");
  c.burn_in = field_uint(full, "burn_in", "burn_in");
  c.thin = field_uint(full, "thin", "thin");
  c.inner_steps = field_uint(full, "inner_steps", "inner_steps");
  c.seed = field_uint(full, "seed", "seed");
  c.replicas = field_uint(full, "replicas", "replicas");
  if (c.iterations == 0) throw ConfigError("config field 'iterations': must be positive");
  if (c.burn_in >= c.iterations) {
    throw ConfigError("config field 'burn_in': must be smaller than iterations");
  }
  if (c.thin == 0) throw ConfigError("config field 'thin': must be positive");
  if (c.inner_steps == 0) throw ConfigError("config field 'inner_steps': must be positive");
  if (c.replicas == 0) throw ConfigError("config field 'replicas': must be positive");
  c.x0 = full.at("x0");
  if (full.contains("output")) c.output = field_string(full, "output", "output");
  c.format = field_string(full, "format", "format");
  if (c.format != "csv" && c.format != "binary") {
    throw ConfigError("config field 'format': expected 'csv' or 'binary'");
  }
  const Json& track = full.at("track");
  if (!track.is_array()) throw ConfigError("config field 'track': expected an array");
  for (std::size_t k = 0; k < track.size(); ++k) {
    const std::string path = "track[" + std::to_string(k) + "]";
    const std::uint64_t t = as_uint(track[k], path);
    if (t == 0 || t > c.dim) {
      throw ConfigError("config field '" + path + "': coordinate out of range 1.." +
                        std::to_string(c.dim));
    }
    c.track.push_back(t);
  }
  // Parameter formulas are checked now so errors surface before any run.
  (void)resolve_param(c.x0, c.dim, "x0");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return parse_config(doc);
}

Json to_json(const ExperimentConfig& c) {
  Json j{{"name", c.name},
         {"dim", c.dim},
         {"sampler", to_string(c.sampler)},
         {"side", to_string(c.side)},
         {"mirror", map_to_json(c.mirror)},
         {"envelope", map_to_json(c.envelope)},
         {"potential", potential_to_json(c.potential)},
         {"gamma", c.gamma},
         {"lambda", c.lambda},
         {"iterations", c.iterations},
         {"burn_in", c.burn_in},
         {"thin", c.thin},
         {"inner_steps", c.inner_steps},
         {"seed", c.seed},
         {"replicas", c.replicas},
         {"x0", c.x0},
         {"format", c.format},
         {"track", c.track}};
  if (!c.preset.empty()) j["preset"] = c.preset;
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

BuiltExperiment build_experiment(const ExperimentConfig& c) {
  const std::size_t d = c.dim;
  const PotentialSpec& p = c.potential;

  NonsmoothTerm g = NonsmoothTerm::zero(d);
  if (p.nonsmooth == NonsmoothKind::WeightedL1) {
    g = NonsmoothTerm::weighted_l1(resolve_param(p.weights, d, "potential.weights"));
  } else if (p.nonsmooth == NonsmoothKind::BoxIndicator) {
    g = NonsmoothTerm::box(resolve_param(p.lower, d, "potential.lower"),
                           resolve_param(p.upper, d, "potential.upper"));
  }

  SmoothTerm f = SmoothTerm::zero(d);
  std::optional<Vec> theta_star;
  if (p.smooth == SmoothKind::LogisticRidge) {
    theta_star = resolve_param(p.theta_star, d, "potential.theta_star");
    LogisticData data;
    if (!p.data_path.empty()) {
      data = load_logistic_csv(p.data_path);
      if (data.dim != d) {
        throw ConfigError("config field 'potential.data_path': file has " +
                          std::to_string(data.dim) + " features, dim is " + std::to_string(d));
      }
    } else {
      data = generate_logistic_data(d, p.samples, *theta_star, p.data_seed);
    }
    f = SmoothTerm::logistic_ridge(std::move(data), p.ridge);
  }

  const LegendreMap psi = make_map(c.envelope, d, "envelope");
  const LegendreMap phi = make_map(c.mirror, d, "mirror");
  SurrogatePotential surrogate(CompositePotential(std::move(f), g), psi, c.side, c.lambda);

  BuiltExperiment b{ChainConfig(std::move(surrogate), phi), theta_star, {}};
  ChainConfig& chain = b.chain;
  switch (c.sampler) {
    case SamplerChoice::BMUMLA:
    case SamplerChoice::MYULA: chain.variant = Variant::BMUMLA; break;
    case SamplerChoice::BMUMLA_Dual: chain.variant = Variant::BMUMLA_Dual; break;
    case SamplerChoice::BMMMLA: chain.variant = Variant::BMMMLA; break;
  }
  chain.gamma = c.gamma;
  chain.inner_steps = c.inner_steps;
  chain.iterations = c.iterations;
  chain.burn_in = c.burn_in;
  chain.thin = c.thin;
  chain.seed = c.seed;
  chain.x0 = resolve_param(c.x0, d, "x0");
  chain.validate();

  if (p.smooth == SmoothKind::Zero) {
    if (p.nonsmooth == NonsmoothKind::WeightedL1 &&
        std::all_of(g.weights().begin(), g.weights().end(), [](double w) { return w > 0.0; })) {
      for (double w : g.weights()) b.references.push_back(MarginalReference::laplace(w));
    } else if (p.nonsmooth == NonsmoothKind::BoxIndicator) {
      for (std::size_t i = 0; i < d; ++i) {
        b.references.push_back(MarginalReference::uniform(g.lower()[i], g.upper()[i]));
      }
    }
  }
  return b;
}

namespace {

SampleBatch pool(const std::vector<SampleBatch>& batches) {
  if (batches.size() == 1) return batches.front();
  SampleBatch all = batches.front();
  for (std::size_t r = 1; r < batches.size(); ++r) {
    all.data.insert(all.data.end(), batches[r].data.begin(), batches[r].data.end());
    all.rows += batches[r].rows;
  }
  return all;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_json(const Json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace

SampleRunSummary run_sample(const ExperimentConfig& cfg, const std::string& out_dir) {
  std::string dir = out_dir;
  if (dir.empty()) dir = cfg.output;
  if (dir.empty()) dir = "runs/" + cfg.name;
  fs::create_directories(dir);

  const BuiltExperiment built = build_experiment(cfg);
  std::vector<SampleBatch> batches;
  if (cfg.replicas == 1) {
    batches.push_back(run_chain(built.chain));
  } else {
    batches = run_replicas(built.chain, cfg.replicas);
  }

  SampleRunSummary summary;
  summary.output_dir = dir;
  const std::string ext = cfg.format == "csv" ? ".csv" : ".bin";
  Json replicas = Json::array();
  for (std::size_t r = 0; r < batches.size(); ++r) {
    const std::string file =
        batches.size() == 1 ? "samples" + ext : "samples_r" + std::to_string(r) + ext;
    const fs::path path = fs::path(dir) / file;
    if (cfg.format == "csv") {
      write_samples_csv(batches[r], path.string());
    } else {
      write_samples_binary(batches[r], path.string());
    }
    summary.files.push_back(path.string());
    summary.rows += batches[r].rows;
    replicas.push_back({{"index", r},
                        {"seed", batches[r].seed},
                        {"file", file},
                        {"rows", batches[r].rows},
                        {"cols", batches[r].cols},
                        {"config_hash", hex64(batches[r].config_hash)},
                        {"started", batches[r].started},
                        {"finished", batches[r].finished}});
  }

  Json outputs = Json::object();
  if (!built.references.empty()) {
    const fs::path path = fs::path(dir) / "diagnostics.csv";
    write_diagnostics_csv(marginal_diagnostics(pool(batches), built.references), path.string());
    summary.files.push_back(path.string());
    outputs["diagnostics"] = "diagnostics.csv";
  }
  if (built.theta_star) {
    const fs::path path = fs::path(dir) / "error_curves.csv";
    const ErrorCurves curves = posterior_mean_error(batches, *built.theta_star, cfg.track);
    write_error_curves_csv(curves, path.string(), cfg.burn_in + 1, cfg.thin);
    summary.files.push_back(path.string());
    outputs["error_curves"] = "error_curves.csv";
  }

  const Json resolved = to_json(cfg);
  write_json(resolved, fs::path(dir) / "config.resolved.json");
  summary.files.push_back((fs::path(dir) / "config.resolved.json").string());

  Json manifest{{"tool", "bplmc"},
                {"manifest_version", 1},
                {"name", cfg.name},
                {"config_file", "config.resolved.json"},
                {"config", resolved},
                {"seed", cfg.seed},
                {"replica_seed_rule", "seed + replica index"},
                {"format", cfg.format},
                {"replicas", replicas},
                {"outputs", outputs}};
  write_json(manifest, fs::path(dir) / "manifest.json");
  summary.files.push_back((fs::path(dir) / "manifest.json").string());
  return summary;
}

std::vector<MarginalReference> parse_reference_spec(const std::string& spec, std::size_t d) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  std::vector<MarginalReference> refs;
  if (parts.size() == 2 && parts[0] == "laplace") {
    const Vec rate = eval_per_coordinate(Expression::parse(parts[1]), d);
    for (double r : rate) {
      if (!(r > 0.0)) throw ConfigError("reference spec '" + spec + "': rates must be positive");
      refs.push_back(MarginalReference::laplace(r));
    }
    return refs;
  }
  if (parts.size() == 3 && parts[0] == "uniform") {
    const Vec lo = eval_per_coordinate(Expression::parse(parts[1]), d);
    const Vec hi = eval_per_coordinate(Expression::parse(parts[2]), d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!(hi[i] > lo[i])) {
        throw ConfigError("reference spec '" + spec + "': empty interval at coordinate " +
                          std::to_string(i + 1));
      }
      refs.push_back(MarginalReference::uniform(lo[i], hi[i]));
    }
    return refs;
  }
  throw ConfigError("reference spec '" + spec +
                    "': expected laplace:<rate> or uniform:<lower>:<upper>");
}

std::vector<DimensionDiagnostics> run_diag(const std::string& samples_path,
                                           const std::string& reference_spec,
                                           const std::string& out_dir) {
  const SampleBatch batch = read_samples(samples_path);
  const auto refs = parse_reference_spec(reference_spec, batch.cols);
  const auto diags = marginal_diagnostics(batch, refs);
  fs::create_directories(out_dir);
  write_diagnostics_csv(diags, (fs::path(out_dir) / "diagnostics.csv").string());
  return diags;
}

}  // namespace bplmc
