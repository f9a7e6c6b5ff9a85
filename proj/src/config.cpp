// Copyright 2026 The purcellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "purcellsim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "purcellsim/errors.hpp"

namespace purcell {

using nlohmann::json;

SystemParams ParamsHz::to_system() const {
  SystemParams p;
  p.omega_r = kTwoPi * omega_r;
  p.omega_f = kTwoPi * omega_f;
  p.omega_q = kTwoPi * omega_q;
  p.omega_d = kTwoPi * omega_d;
  p.g_k = kTwoPi * g_k;
  p.g = kTwoPi * g;
  p.kappa_f = kTwoPi * kappa_f;
  p.gamma_s = kTwoPi * gamma_s;
  p.kappa_int = kTwoPi * kappa_int;
  p.epsilon_in = epsilon_in;
  return p;
}

EvolutionConfig EvolutionSettings::to_config() const {
  EvolutionConfig c;
  c.t_start = t_start;
  c.t_end = t_end;
  c.n_steps = n_steps;
  c.method = method;
  c.abs_tol = abs_tol;
  c.rel_tol = rel_tol;
  c.rk4_substeps = rk4_substeps;
  return c;
}

SweepSpec RunConfig::sweep_spec(int threads) const {
  if (!sweep) throw ConfigError("sweep", "section is required for a sweep run");
  SweepSpec s;
  s.parameter = sweep->parameter;
  s.min = kTwoPi * sweep->min_hz;
  s.max = kTwoPi * sweep->max_hz;
  s.count = sweep->count;
  s.t_end = evolution.t_end;
  s.time_count = evolution.n_steps;
  s.base = params.to_system();
  s.topology = topology;
  s.dims = dims;
  s.options = options;
  s.initial = initial;
  s.method = evolution.method;
  s.abs_tol = evolution.abs_tol;
  s.rel_tol = evolution.rel_tol;
  s.metrics = sweep->metrics;
  s.budget = sweep->budget;
  s.threads = threads;
  return s;
}

Complex matched_drive(Complex alpha, double delta_r, double kappa_f) {
  if (!(kappa_f > 0.0)) throw InvalidRate("matched_drive: kappa_f must be positive");
  return alpha * Complex(0.5 * kappa_f, delta_r) / std::sqrt(2.0 * kappa_f);
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3a", "fig3b", "fig4", "appendix"};
}

namespace {

RunConfig fig2_preset() {
  RunConfig c;
  c.preset = "fig2";
  ParamsHz& p = c.params;
  p.omega_r = 6.6e9;
  p.omega_f = 6.328e9;
  p.omega_q = 6.313e9;
  p.omega_d = 6.310e9;
  const double delta_r = p.omega_r - p.omega_d;
  const double delta_q = p.omega_q - p.omega_d;
  p.g_k = 0.08 * delta_r;
  p.g = 0.01 * delta_q;
  p.kappa_f = 0.002 * delta_r;
  c.initial = InitialState{0, 0, Complex(1.0, 1.0)};
  p.epsilon_in = matched_drive(c.initial.readout_alpha, kTwoPi * delta_r, kTwoPi * p.kappa_f);
  c.topology = Topology::kSysII;
  c.dims = ModeDims{2, 2};
  c.evolution.t_end = 1.0e-6;
  c.evolution.n_steps = 2000;
  c.output_dir = "out/fig2";
  return c;
}

// Horizons: the delta_r surfaces need dt << 1/|delta_r| for the time-aggregated
// extrema to converge, the qubit responds on the g timescale.
RunConfig sweep_preset(std::string name, SweepParameter parameter, SweepMetric metric,
                       double t_end, int n_steps) {
  RunConfig c = fig2_preset();
  c.preset = name;
  c.dims = ModeDims{4, 4};
  c.evolution.t_end = t_end;
  c.evolution.n_steps = n_steps;
  SweepSettings s;
  s.parameter = parameter;
  s.metrics = {metric};
  s.budget = 50000;
  c.sweep = s;
  c.output_dir = "out/" + name;
  return c;
}

RunConfig appendix_preset() {
  RunConfig c;
  c.preset = "appendix";
  ParamsHz& p = c.params;
  p.omega_r = 6.74e9;
  p.omega_f = 6.10e9;
  p.omega_q = 6.13e9;
  p.omega_d = 6.74e9;
  p.g_k = 10e6;
  p.g = 10e6;
  p.kappa_f = 5e6;
  p.gamma_s = 1e4;
  p.kappa_int = 1e5;
  c.topology = Topology::kSysII;
  c.output_dir = "out/appendix";
  return c;
}

// Field access with dotted paths for error messages.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(display(), "expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& item : obj_.items()) {
      if (!ok.count(item.key())) throw ConfigError(field(item.key()), "unknown field");
    }
  }

  bool has(const char* key) const { return obj_.contains(key); }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void number(const char* key, double& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) throw ConfigError(field(key), "must be finite");
  }

  void integer(const char* key, int& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    out = v.get<int>();
  }

  void integer(const char* key, long& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    out = v.get<long>();
  }

  void boolean(const char* key, bool& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
    out = v.get<bool>();
  }

  void string(const char* key, std::string& out) const {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    out = v.get<std::string>();
  }

  Reader child(const char* key) const { return Reader(obj_.at(key), field(key)); }
  const json& raw(const char* key) const { return obj_.at(key); }

 private:
  std::string display() const { return path_.empty() ? "config" : path_; }
  const json& obj_;
  std::string path_;
};

template <typename Fn>
auto convert(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw ConfigError(field, e.what());
  }
}

void require_non_negative(const std::string& field, double v) {
  if (v < 0.0) throw ConfigError(field, "must be non-negative");
}

void parse_params(const Reader& r, RunConfig& c) {
  r.allow({"omega_r", "omega_f", "omega_q", "omega_d", "g_k", "g", "kappa_f", "gamma_s",
           "kappa_int", "epsilon_in_re", "epsilon_in_im", "topology", "dim_filter",
           "dim_readout"});
  ParamsHz& p = c.params;
  const std::pair<const char*, double*> fields[] = {
      {"omega_r", &p.omega_r}, {"omega_f", &p.omega_f}, {"omega_q", &p.omega_q},
      {"omega_d", &p.omega_d}, {"g_k", &p.g_k},         {"g", &p.g},
      {"kappa_f", &p.kappa_f}, {"gamma_s", &p.gamma_s}, {"kappa_int", &p.kappa_int}};
  for (const auto& [key, dst] : fields) {
    r.number(key, *dst);
    require_non_negative(r.field(key), *dst);
  }
  double re = p.epsilon_in.real(), im = p.epsilon_in.imag();
  r.number("epsilon_in_re", re);
  r.number("epsilon_in_im", im);
  p.epsilon_in = Complex(re, im);

  std::string topo(to_string(c.topology));
  r.string("topology", topo);
  c.topology = convert(r.field("topology"), [&] { return topology_from_string(topo); });

  r.integer("dim_filter", c.dims.filter);
  r.integer("dim_readout", c.dims.readout);
  if (c.dims.filter < 2) throw ConfigError(r.field("dim_filter"), "must be at least 2");
  if (c.dims.readout < 2) throw ConfigError(r.field("dim_readout"), "must be at least 2");
}

void parse_model(const Reader& r, RunConfig& c) {
  r.allow({"counter_rotating", "qubit_via_readout", "flipped_qubit_signs"});
  r.boolean("counter_rotating", c.options.counter_rotating);
  r.boolean("qubit_via_readout", c.options.qubit_via_readout);
  r.boolean("flipped_qubit_signs", c.options.flipped_qubit_signs);
}

void parse_initial(const Reader& r, RunConfig& c) {
  r.allow({"qubit", "filter_fock", "readout_alpha_re", "readout_alpha_im"});
  r.integer("qubit", c.initial.qubit_level);
  r.integer("filter_fock", c.initial.filter_fock);
  double re = c.initial.readout_alpha.real(), im = c.initial.readout_alpha.imag();
  r.number("readout_alpha_re", re);
  r.number("readout_alpha_im", im);
  c.initial.readout_alpha = Complex(re, im);
  if (c.initial.qubit_level != 0 && c.initial.qubit_level != 1) {
    throw ConfigError(r.field("qubit"), "must be 0 (ground) or 1 (excited)");
  }
  if (c.initial.filter_fock < 0 || c.initial.filter_fock >= c.dims.filter) {
    throw ConfigError(r.field("filter_fock"), "must lie in [0, dim_filter)");
  }
}

void parse_evolution(const Reader& r, RunConfig& c) {
  r.allow({"t_start", "t_end", "n_steps", "method", "abs_tol", "rel_tol", "rk4_substeps"});
  EvolutionSettings& e = c.evolution;
  r.number("t_start", e.t_start);
  r.number("t_end", e.t_end);
  r.integer("n_steps", e.n_steps);
  std::string method(to_string(e.method));
  r.string("method", method);
  e.method = convert(r.field("method"), [&] { return method_from_string(method); });
  r.number("abs_tol", e.abs_tol);
  r.number("rel_tol", e.rel_tol);
  r.integer("rk4_substeps", e.rk4_substeps);
  convert("evolution", [&] {
    e.to_config().validate();
    return 0;
  });
}

void parse_sweep(const Reader& r, RunConfig& c) {
  r.allow({"parameter", "min", "max", "count", "metrics", "budget"});
  SweepSettings s = c.sweep.value_or(SweepSettings{});
  std::string parameter(to_string(s.parameter));
  r.string("parameter", parameter);
  s.parameter =
      convert(r.field("parameter"), [&] { return sweep_parameter_from_string(parameter); });
  r.number("min", s.min_hz);
  r.number("max", s.max_hz);
  r.integer("count", s.count);
  r.integer("budget", s.budget);
  if (r.has("metrics")) {
    const json& m = r.raw("metrics");
    if (!m.is_array() || m.empty()) {
      throw ConfigError(r.field("metrics"), "expected a non-empty array of metric names");
    }
    s.metrics.clear();
    for (const auto& item : m) {
      if (!item.is_string()) throw ConfigError(r.field("metrics"), "expected metric names");
      s.metrics.push_back(convert(r.field("metrics"), [&] {
        return sweep_metric_from_string(item.get<std::string>());
      }));
    }
  }
  if (s.count < 2) throw ConfigError(r.field("count"), "must be at least 2");
  if (!(s.min_hz < s.max_hz)) throw ConfigError(r.field("max"), "must exceed min");
  if (s.budget < 1) throw ConfigError(r.field("budget"), "must be positive");
  c.sweep = s;
}

}  // namespace

RunConfig preset_config(std::string_view name) {
  if (name == "fig2") return fig2_preset();
  if (name == "fig3a") {
    return sweep_preset("fig3a", SweepParameter::kDeltaR, SweepMetric::kFidelityResonator, 1.0e-8,
                        1001);
  }
  if (name == "fig3b") {
    return sweep_preset("fig3b", SweepParameter::kDeltaQ, SweepMetric::kFidelityQubit, 3.0e-7, 201);
  }
  if (name == "fig4") {
    return sweep_preset("fig4", SweepParameter::kDeltaR, SweepMetric::kTwoEta, 1.0e-8, 1001);
  }
  if (name == "appendix") return appendix_preset();
  throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

RunConfig parse_config(const json& j) {
  const Reader root(j, "");
  root.allow({"preset", "params", "model", "initial_state", "evolution", "output_dir", "sweep"});
  RunConfig c;
  if (root.has("preset")) {
    std::string name;
    root.string("preset", name);
    c = preset_config(name);
  }
  if (root.has("params")) parse_params(root.child("params"), c);
  if (root.has("model")) parse_model(root.child("model"), c);
  if (root.has("initial_state")) parse_initial(root.child("initial_state"), c);
  if (root.has("evolution")) parse_evolution(root.child("evolution"), c);
  if (root.has("sweep")) parse_sweep(root.child("sweep"), c);
  root.string("output_dir", c.output_dir);

  // Cross-field checks once every section is in place.
  if (c.initial.filter_fock >= c.dims.filter) {
    throw ConfigError("initial_state.filter_fock", "must lie in [0, dim_filter)");
  }
  convert("params", [&] {
    c.params.to_system().validate();
    return 0;
  });
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  if (!c.preset.empty()) j["preset"] = c.preset;
  const ParamsHz& p = c.params;
  j["params"] = {{"omega_r", p.omega_r},
                 {"omega_f", p.omega_f},
                 {"omega_q", p.omega_q},
                 {"omega_d", p.omega_d},
                 {"g_k", p.g_k},
                 {"g", p.g},
                 {"kappa_f", p.kappa_f},
                 {"gamma_s", p.gamma_s},
                 {"kappa_int", p.kappa_int},
                 {"epsilon_in_re", p.epsilon_in.real()},
                 {"epsilon_in_im", p.epsilon_in.imag()},
                 {"topology", std::string(to_string(c.topology))},
                 {"dim_filter", c.dims.filter},
                 {"dim_readout", c.dims.readout}};
  j["model"] = {{"counter_rotating", c.options.counter_rotating},
                {"qubit_via_readout", c.options.qubit_via_readout},
                {"flipped_qubit_signs", c.options.flipped_qubit_signs}};
  j["initial_state"] = {{"qubit", c.initial.qubit_level},
                        {"filter_fock", c.initial.filter_fock},
                        {"readout_alpha_re", c.initial.readout_alpha.real()},
                        {"readout_alpha_im", c.initial.readout_alpha.imag()}};
  const EvolutionSettings& e = c.evolution;
  j["evolution"] = {{"t_start", e.t_start},
                    {"t_end", e.t_end},
                    {"n_steps", e.n_steps},
                    {"method", std::string(to_string(e.method))},
                    {"abs_tol", e.abs_tol},
                    {"rel_tol", e.rel_tol},
                    {"rk4_substeps", e.rk4_substeps}};
  j["output_dir"] = c.output_dir;
  if (c.sweep) {
    json metrics = json::array();
    for (auto m : c.sweep->metrics) metrics.push_back(std::string(to_string(m)));
    j["sweep"] = {{"parameter", std::string(to_string(c.sweep->parameter))},
                  {"min", c.sweep->min_hz},
                  {"max", c.sweep->max_hz},
                  {"count", c.sweep->count},
                  {"metrics", metrics},
                  {"budget", c.sweep->budget}};
  }
  return j;
}

}  // namespace purcell
