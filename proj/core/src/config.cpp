#include "manybeam/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

namespace manybeam {

using nlohmann::json;

namespace {

std::string where(const std::string& ctx) { return ctx.empty() ? "config" : "config: " + ctx; }

const json& require_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError(where(ctx) + " must be a JSON object");
  return j;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    if (!ok.count(item.key()))
      throw ConfigError(where(ctx) + " has unknown key '" + item.key() + "'");
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const char* key, const std::string& ctx) {
  const json* p = find(j, key);
  if (!p) throw ConfigError(where(ctx) + " is missing required key '" + key + "'");
  return *p;
}

double as_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw ConfigError(where(ctx) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where(ctx) + " must be finite");
  return v;
}

long as_integer(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw ConfigError(where(ctx) + " must be an integer");
  return j.get<long>();
}

std::vector<double> as_number_list(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw ConfigError(where(ctx) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

std::string as_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw ConfigError(where(ctx) + " must be a string");
  return j.get<std::string>();
}

Vec2 as_vec2(const json& j, const std::string& ctx) {
  std::vector<double> v = as_number_list(j, ctx);
  if (v.size() != 2) throw ConfigError(where(ctx) + " must have exactly 2 components");
  return Vec2(v[0], v[1]);
}

// an axis is a plain list or an inclusive {start, stop, step} range
std::vector<double> parse_axis(const json& j, const std::string& ctx) {
  if (j.is_array()) return as_number_list(j, ctx);
  require_object(j, ctx);
  check_keys(j, {"start", "stop", "step"}, ctx);
  const double start = as_number(require(j, "start", ctx), ctx + ".start");
  const double stop = as_number(require(j, "stop", ctx), ctx + ".stop");
  const double step = as_number(require(j, "step", ctx), ctx + ".step");
  if (!(step > 0.0)) throw ConfigError(where(ctx) + ".step must be positive");
  if (stop < start - 1e-12) throw ConfigError(where(ctx) + ".stop must be >= start");
  const long count = (long)std::floor((stop - start) / step + 1e-9) + 1;
  std::vector<double> out;
  out.reserve((std::size_t)count);
  for (long i = 0; i < count; ++i) out.push_back(start + step * (double)i);
  return out;
}

PotentialField parse_field(const json& j) {
  const std::string ctx = "field";
  require_object(j, ctx);
  const std::string type = as_string(require(j, "type", ctx), ctx + ".type");
  const double z_bottom = as_number(require(j, "z_bottom", ctx), ctx + ".z_bottom");
  std::optional<double> bulk_period;
  if (const json* p = find(j, "bulk_period"))
    bulk_period = as_number(*p, ctx + ".bulk_period");

  if (type == "zero") {
    check_keys(j, {"type", "z_bottom"}, ctx);
    return PotentialField::zero(z_bottom);
  }
  if (type == "gaussian_layers") {
    check_keys(j, {"type", "z_bottom", "bulk_period", "layers"}, ctx);
    const json& jl = require(j, "layers", ctx);
    if (!jl.is_array() || jl.empty())
      throw ConfigError("config: field.layers must be a nonempty array");
    std::vector<GaussianLayer> layers;
    for (std::size_t i = 0; i < jl.size(); ++i) {
      const std::string lctx = "field.layers[" + std::to_string(i) + "]";
      require_object(jl[i], lctx);
      check_keys(jl[i], {"z_center", "amplitude", "sigma_xy", "sigma_z", "absorption"}, lctx);
      GaussianLayer layer;
      layer.z_center = as_number(require(jl[i], "z_center", lctx), lctx + ".z_center");
      layer.amplitude = as_number(require(jl[i], "amplitude", lctx), lctx + ".amplitude");
      layer.sigma_xy = as_number(require(jl[i], "sigma_xy", lctx), lctx + ".sigma_xy");
      layer.sigma_z = as_number(require(jl[i], "sigma_z", lctx), lctx + ".sigma_z");
      if (const json* p = find(jl[i], "absorption"))
        layer.absorption = as_number(*p, lctx + ".absorption");
      layers.push_back(layer);
    }
    return PotentialField::gaussian_layers(z_bottom, std::move(layers), bulk_period);
  }
  if (type == "tabulated") {
    check_keys(j, {"type", "z_bottom", "bulk_period", "z_grid", "coefficients"}, ctx);
    std::vector<double> z_grid = as_number_list(require(j, "z_grid", ctx), ctx + ".z_grid");
    const json& jc = require(j, "coefficients", ctx);
    if (!jc.is_array() || jc.empty())
      throw ConfigError("config: field.coefficients must be a nonempty array");
    std::vector<TabulatedEntry> entries;
    for (std::size_t i = 0; i < jc.size(); ++i) {
      const std::string ectx = "field.coefficients[" + std::to_string(i) + "]";
      require_object(jc[i], ectx);
      check_keys(jc[i], {"dm", "re", "im"}, ectx);
      const json& jdm = require(jc[i], "dm", ectx);
      if (!jdm.is_array() || jdm.size() != 2)
        throw ConfigError(where(ectx) + ".dm must be a 2-element integer array");
      TabulatedEntry entry;
      entry.dm = Eigen::Vector2i((int)as_integer(jdm[0], ectx + ".dm[0]"),
                                 (int)as_integer(jdm[1], ectx + ".dm[1]"));
      std::vector<double> re = as_number_list(require(jc[i], "re", ectx), ectx + ".re");
      std::vector<double> im = as_number_list(require(jc[i], "im", ectx), ectx + ".im");
      if (re.size() != im.size())
        throw ConfigError(where(ectx) + ": re and im lengths differ");
      entry.values.reserve(re.size());
      for (std::size_t k = 0; k < re.size(); ++k) entry.values.emplace_back(re[k], im[k]);
      entries.push_back(std::move(entry));
    }
    return PotentialField::tabulated(z_bottom, std::move(z_grid), std::move(entries),
                                     bulk_period);
  }
  throw ConfigError("config: field.type '" + type +
                    "' not recognized (zero, gaussian_layers, tabulated)");
}

double parse_threshold(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("config: rhst_threshold string form must be \"inf\"");
  }
  const double v = as_number(j, "rhst_threshold");
  if (v < 0.0) throw ConfigError("config: rhst_threshold must be >= 0");
  return v;
}

void check_method_name(const std::string& m, const std::string& ctx) {
  if (m != "conventional" && m != "rk4" && m != "sp4" && m != "sp6")
    throw ConfigError(where(ctx) + ": method '" + m +
                      "' not recognized (conventional, rk4, sp4, sp6)");
}

BenchRunSpec parse_bench_run(const json& j, const std::string& ctx) {
  require_object(j, ctx);
  check_keys(j, {"method", "dz"}, ctx);
  BenchRunSpec spec;
  spec.method = as_string(require(j, "method", ctx), ctx + ".method");
  check_method_name(spec.method, ctx);
  spec.dz = as_number(require(j, "dz", ctx), ctx + ".dz");
  if (!(spec.dz > 0.0)) throw ConfigError(where(ctx) + ".dz must be positive");
  return spec;
}

BenchConfig parse_bench(const json& j) {
  const std::string ctx = "bench";
  require_object(j, ctx);
  check_keys(j, {"reference", "baseline", "methods", "dz_values", "repeats"}, ctx);
  BenchConfig bench;
  bench.reference = parse_bench_run(require(j, "reference", ctx), "bench.reference");
  if (const json* p = find(j, "baseline")) bench.baseline = parse_bench_run(*p, "bench.baseline");
  if (const json* p = find(j, "methods")) {
    if (!p->is_array()) throw ConfigError("config: bench.methods must be an array of strings");
    for (const auto& m : *p) {
      if (!m.is_string()) throw ConfigError("config: bench.methods must be an array of strings");
      bench.methods.push_back(m.get<std::string>());
      check_method_name(bench.methods.back(), "bench.methods");
    }
  }
  if (const json* p = find(j, "dz_values")) {
    bench.dz_values = as_number_list(*p, "bench.dz_values");
    for (double d : bench.dz_values)
      if (!(d > 0.0)) throw ConfigError("config: bench.dz_values must be positive");
  }
  if (const json* p = find(j, "repeats")) {
    bench.repeats = (int)as_integer(*p, "bench.repeats");
    if (bench.repeats < 3) throw ConfigError("config: bench.repeats must be >= 3");
  }
  return bench;
}

}  // namespace

SweepOptions RunConfig::sweep_options() const {
  SweepOptions opts;
  opts.method = method;
  opts.dz = dz;
  opts.rhst_threshold = rhst_threshold;
  opts.threads = threads;
  return opts;
}

RunConfig parse_config(const json& j) {
  require_object(j, "");
  check_keys(j,
             {"gamma", "lattice", "rod_cutoff", "field", "angles", "method", "dz",
              "rhst_threshold", "threads", "out", "bench"},
             "");
  RunConfig cfg;

  cfg.gamma = as_number(require(j, "gamma", ""), "gamma");
  if (!(cfg.gamma > 0.0)) throw ConfigError("config: gamma must be positive");

  const json& jl = require(j, "lattice", "");
  require_object(jl, "lattice");
  check_keys(jl, {"a1", "a2"}, "lattice");
  cfg.lattice.a1 = as_vec2(require(jl, "a1", "lattice"), "lattice.a1");
  cfg.lattice.a2 = as_vec2(require(jl, "a2", "lattice"), "lattice.a2");
  cfg.lattice.validate();

  cfg.rod_cutoff = as_number(require(j, "rod_cutoff", ""), "rod_cutoff");
  if (!(cfg.rod_cutoff >= 0.0)) throw ConfigError("config: rod_cutoff must be >= 0");

  cfg.field = parse_field(require(j, "field", ""));

  const json& ja = require(j, "angles", "");
  require_object(ja, "angles");
  check_keys(ja, {"theta0", "theta1"}, "angles");
  std::vector<double> th0 = parse_axis(require(ja, "theta0", "angles"), "angles.theta0");
  std::vector<double> th1{0.0};
  if (const json* p = find(ja, "theta1")) th1 = parse_axis(*p, "angles.theta1");
  cfg.angles = AngleGrid::validated(std::move(th0), std::move(th1));

  if (const json* p = find(j, "method")) {
    cfg.method = as_string(*p, "method");
    check_method_name(cfg.method, "method");
  }
  if (const json* p = find(j, "dz")) {
    cfg.dz = as_number(*p, "dz");
    if (!(cfg.dz > 0.0)) throw ConfigError("config: dz must be positive");
  }
  if (const json* p = find(j, "rhst_threshold")) cfg.rhst_threshold = parse_threshold(*p);
  if (const json* p = find(j, "threads")) {
    cfg.threads = (int)as_integer(*p, "threads");
    if (cfg.threads < 0) throw ConfigError("config: threads must be >= 0");
  }
  if (const json* p = find(j, "out")) cfg.out = as_string(*p, "out");
  if (const json* p = find(j, "bench")) cfg.bench = parse_bench(*p);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace manybeam
