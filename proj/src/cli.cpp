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

#include "purcellsim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "purcellsim/analytic.hpp"
#include "purcellsim/config.hpp"
#include "purcellsim/dynamics.hpp"
#include "purcellsim/errors.hpp"
#include "purcellsim/io.hpp"
#include "purcellsim/metrics.hpp"
#include "purcellsim/network.hpp"
#include "purcellsim/sweep.hpp"
#include "purcellsim/version.hpp"

namespace purcell {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kTruncationWarn = 1e-3;

std::string join(const std::string& dir, const std::string& name) {
  return dir.empty() ? name : dir + "/" + name;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

json convention_notes(const RunConfig& c) {
  json n;
  n["units"] = "config frequencies and rates are Hz; engines use 2*pi times these (rad/s)";
  n["hilbert_dims"] = "dim_filter and dim_readout are per-mode Hilbert-space dimensions";
  n["two_eta"] = kTwoEtaFormula;
  n["two_eta_time"] = "evaluated on the instantaneous state at each output time";
  n["fidelity_reference"] = "each subsystem's own initial reduced state";
  n["qubit_signs"] = c.options.flipped_qubit_signs
                         ? "mean-field qubit lines use the flipped (+i dq s, -i g z m) form"
                         : "mean-field qubit lines follow the Hamiltonian (-i dq s, +i g z m)";
  n["dispersive_shift_sign"] =
      "two_chi = omega_e - omega_g = -g_k^2/(dr+df); the commonly printed closed form "
      "+g_k^2/(dr+df) is reported separately as two_chi_printed";
  if (c.sweep) {
    n["sweep_axis"] = c.sweep->parameter == SweepParameter::kDeltaR
                          ? "delta_r moves omega_r; omega_d and the drive stay fixed"
                          : "delta_q moves omega_q; delta_r is held at its base value, "
                            "omega_d and the drive stay fixed";
  }
  return n;
}

json base_manifest(const std::string& command, const RunConfig& c) {
  json m;
  m["tool"] = "purcellsim";
  m["version"] = kVersion;
  m["command"] = command;
  m["resolved_config"] = to_json(c);
  m["notes"] = convention_notes(c);
  m["warnings"] = json::array();
  return m;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("PURCELLSIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw ConfigError("PURCELLSIM_THREADS", "must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig resolve_config(const std::string& path, const std::string& preset,
                         const std::string& out_dir) {
  RunConfig c;
  if (!path.empty()) {
    if (!preset.empty()) {
      // The file's own preset wins; --preset only fills in when it has none.
      std::ifstream in(path);
      if (!in) throw ConfigError("config", "cannot open '" + path + "'");
      json j;
      try {
        in >> j;
      } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
      }
      if (j.is_object() && !j.contains("preset")) j["preset"] = preset;
      c = parse_config(j);
    } else {
      c = load_config(path);
    }
  } else if (!preset.empty()) {
    c = preset_config(preset);
  } else {
    throw ConfigError("config", "either --config or --preset is required");
  }
  if (!out_dir.empty()) c.output_dir = out_dir;
  return c;
}

struct CommonFlags {
  std::string config;
  std::string preset;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config, "JSON run configuration");
  app->add_option("--preset", f.preset, "named preset: fig2, fig3a, fig3b, fig4, appendix");
  app->add_option("--out", f.out, "output directory (overrides output_dir)");
  app->add_option("--threads", f.threads, "worker threads (falls back to PURCELLSIM_THREADS)");
}

// ---- simulate -------------------------------------------------------------

int cmd_simulate(const CommonFlags& flags, std::ostream& out) {
  const auto start = Clock::now();
  const RunConfig c = resolve_config(flags.config, flags.preset, flags.out);
  json manifest = base_manifest("simulate", c);
  const std::string dir = c.output_dir;

  auto fail = [&](const std::exception& e) {
    manifest["status"] = "failed";
    manifest["failure"] = e.what();
    manifest["wall_seconds"] =
        std::chrono::duration<double>(Clock::now() - start).count();
    write_json(join(dir, "manifest.json"), manifest);
  };

  try {
    const ModelRealization model = build_model(c.params.to_system(), c.topology, c.dims, c.options);
    const PreparedState init = prepare_initial_state(c.dims, c.initial);
    manifest["readout_truncation_weight"] = init.readout_truncation_weight;
    if (init.readout_truncation_weight > kTruncationWarn) {
      manifest["warnings"].push_back(
          "initial coherent state loses " + sci(init.readout_truncation_weight) +
          " of its norm at dim_readout = " + std::to_string(c.dims.readout) +
          " before renormalisation");
    }
    if (c.options.flipped_qubit_signs) {
      manifest["warnings"].push_back("flipped_qubit_signs only affects the mean-field path");
    }

    EvolutionConfig cfg = c.evolution.to_config();
    const Operator n_a = model.a.adjoint() * model.a;
    const Operator n_b = model.b.adjoint() * model.b;
    cfg.observables = {{"n_readout", Operator(model.layout, n_a.matrix(), true)},
                       {"n_filter", Operator(model.layout, n_b.matrix(), true)},
                       {"sigma_z", model.sigma_z},
                       {"a", model.a},
                       {"b", model.b}};

    const std::vector<std::string> subsystems{kQubit, kFilter, kReadout};
    std::vector<DensityMatrix> refs;
    for (const auto& s : subsystems) refs.push_back(partial_trace(init.rho, {s}));
    std::vector<std::vector<double>> fid(subsystems.size());
    std::optional<DensityMatrix> final_state;
    const std::size_t n_out = cfg.output_times().size();

    auto observer = [&](std::size_t i, double, const Matrix& rho) {
      const DensityMatrix full(model.layout, 0.5 * (rho + rho.adjoint()), kStateTraceTol, kStatePositivityTol);
      for (std::size_t k = 0; k < subsystems.size(); ++k) {
        const std::vector<std::string> keep{subsystems[k]};
        fid[k].push_back(fidelity(partial_trace(full, keep), refs[k]));
      }
      if (i + 1 == n_out) final_state = full;
    };
    const TimeSeriesResult ts = evolve_lindblad(model, init.rho, cfg, observer);

    // Time series.
    CsvTable series({"t", "n_readout", "n_filter", "sigma_z", "re_a", "im_a", "re_b", "im_b",
                     "fidelity_qubit", "fidelity_filter", "fidelity_readout",
                     "trace_deviation"});
    const auto& na = ts.series("n_readout");
    const auto& nb = ts.series("n_filter");
    const auto& sz = ts.series("sigma_z");
    const auto& av = ts.series("a");
    const auto& bv = ts.series("b");
    for (std::size_t i = 0; i < ts.times.size(); ++i) {
      series.add_numeric_row({ts.times[i], na[i].real(), nb[i].real(), sz[i].real(),
                              av[i].real(), av[i].imag(), bv[i].real(), bv[i].imag(),
                              fid[0][i], fid[1][i], fid[2][i],
                              ts.diagnostics.trace_deviation[i]});
    }
    write_text(join(dir, "timeseries.csv"), series.str());

    // Phase-space and occupation snapshots.
    const std::vector<double> axis = linspace(-4.0, 4.0, 81);
    json results;
    for (std::size_t k = 0; k < subsystems.size(); ++k) {
      const std::string& s = subsystems[k];
      const DensityMatrix initial_r = refs[k];
      const DensityMatrix final_r = partial_trace(*final_state, {s});
      write_text(join(dir, "fock_" + s + "_initial.csv"),
                 occupation_table(fock_occupation(initial_r)).str());
      write_text(join(dir, "fock_" + s + "_final.csv"),
                 occupation_table(fock_occupation(final_r)).str());
      if (s != kQubit) {
        write_text(join(dir, "husimi_" + s + "_initial.csv"),
                   phase_space_table(husimi_q(initial_r, axis, axis)).str());
        write_text(join(dir, "husimi_" + s + "_final.csv"),
                   phase_space_table(husimi_q(final_r, axis, axis)).str());
      }
      double sum = 0.0;
      for (double f : fid[k]) sum += f;
      results["average_fidelity"][s] = sum / static_cast<double>(fid[k].size());
      results["final_fidelity"][s] = fid[k].back();
      results["final_purity"][s] = final_r.purity();
    }
    const auto& d = ts.diagnostics;
    results["diagnostics"] = {{"max_trace_deviation", d.max_trace_deviation()},
                              {"min_eigenvalue", d.min_min_eigenvalue()},
                              {"max_hermiticity_defect", d.max_hermiticity_defect()},
                              {"accepted_steps", d.accepted_steps},
                              {"rejected_steps", d.rejected_steps},
                              {"renormalizations", d.renormalizations.size()}};
    results["readout_truncation_weight"] = init.readout_truncation_weight;
    write_json(join(dir, "results.json"), results);

    json renorm = json::array();
    for (const auto& r : d.renormalizations) {
      renorm.push_back({{"t", r.time}, {"trace_deviation", r.trace_deviation}});
    }
    if (!renorm.empty()) {
      manifest["warnings"].push_back(std::to_string(renorm.size()) +
                                     " trace renormalisation events");
    }
    manifest["renormalizations"] = renorm;
    manifest["status"] = "ok";
    manifest["wall_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    write_json(join(dir, "manifest.json"), manifest);

    out << "average fidelity  qubit " << sci(results["average_fidelity"][kQubit].get<double>())
        << "  filter " << sci(results["average_fidelity"][kFilter].get<double>())
        << "  readout " << sci(results["average_fidelity"][kReadout].get<double>()) << "\n";
    out << "artifacts written to " << dir << "\n";
    return kExitOk;
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    fail(e);
    throw ConfigError("config", e.what());
  } catch (const std::exception& e) {
    fail(e);
    throw;
  }
}

// ---- sweep ----------------------------------------------------------------

int cmd_sweep(const CommonFlags& flags, std::ostream& out) {
  const auto start = Clock::now();
  const RunConfig c = resolve_config(flags.config, flags.preset, flags.out);
  const int threads = resolve_threads(flags.threads);
  const SweepSpec spec = [&] {
    try {
      SweepSpec s = c.sweep_spec(threads);
      s.validate();
      return s;
    } catch (const InvalidArgument& e) {
      throw ConfigError("sweep", e.what());
    }
  }();
  json manifest = base_manifest("sweep", c);
  manifest["threads"] = threads;  // informational; results do not depend on it
  const std::string dir = c.output_dir;

  std::vector<SweepResult> results;
  try {
    results = run_sweep(spec);
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["failure"] = e.what();
    write_json(join(dir, "manifest.json"), manifest);
    throw;
  }

  std::size_t failed = 0;
  for (const auto& r : results) {
    const std::string name(to_string(r.metric));
    write_text(join(dir, "sweep_" + name + ".csv"), sweep_table(r).str());
    write_json(join(dir, "sweep_" + name + ".json"), sweep_json(r));
    failed = std::max(failed, r.failed_count());
  }
  const SweepResult* fid = nullptr;
  const SweepResult* eta = nullptr;
  for (const auto& r : results) {
    if (r.metric == SweepMetric::kTwoEta) eta = &r;
    else if (!fid) fid = &r;
  }
  if (fid && eta) {
    const ColocationReport rep = colocate_extrema(*fid, *eta);
    json j = {{"flat", rep.flat},
              {"fidelity_argmin", rep.fidelity_argmin},
              {"eta_argmax", rep.eta_argmax},
              {"fidelity_location_hz", rep.fidelity_location / kTwoPi},
              {"eta_location_hz", rep.eta_location / kTwoPi},
              {"separation_cells", rep.separation_cells}};
    write_json(join(dir, "colocation.json"), j);
  }
  if (failed) {
    manifest["warnings"].push_back(std::to_string(failed) + " sweep rows failed");
  }
  manifest["status"] = "ok";
  manifest["failed_rows"] = failed;
  manifest["wall_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  write_json(join(dir, "manifest.json"), manifest);

  out << "sweep " << to_string(spec.parameter) << ": " << spec.count << " x "
      << spec.time_count << " cells, " << failed << " failed rows\n";
  out << "artifacts written to " << dir << "\n";
  return kExitOk;
}

// ---- analytic tables ------------------------------------------------------

struct AnalyticFlags {
  std::string preset;
  std::optional<double> g_k, kappa_f, delta_r, delta_f, gamma_s, delta_q, g;
  double n_f = 0.0;
  std::string csv;
};

void add_analytic(CLI::App* app, AnalyticFlags& f) {
  app->add_option("--preset", f.preset, "fill parameters from a preset");
  app->add_option("--g-k", f.g_k, "filter-readout coupling [Hz]");
  app->add_option("--kappa-f", f.kappa_f, "port decay rate [Hz]");
  app->add_option("--delta-r", f.delta_r, "readout detuning [Hz]");
  app->add_option("--delta-f", f.delta_f, "filter detuning [Hz]");
  app->add_option("--gamma-s", f.gamma_s, "qubit emission rate [Hz]");
  app->add_option("--delta-q", f.delta_q, "qubit detuning [Hz]");
  app->add_option("--g", f.g, "qubit coupling [Hz]");
  app->add_option("--csv", f.csv, "also write the table as CSV");
}

// Angular-unit values from a preset with flag overrides (flags in Hz).
struct AnalyticValues {
  double g_k = 0, kappa_f = 0, delta_r = 0, delta_f = 0, gamma_s = 0, delta_q = 0, g = 0;
};

AnalyticValues analytic_values(const AnalyticFlags& f) {
  AnalyticValues v;
  if (!f.preset.empty()) {
    const SystemParams p = preset_config(f.preset).params.to_system();
    v = {p.g_k, p.kappa_f, p.delta_r(), p.delta_f(), p.gamma_s, p.delta_q(), p.g};
  }
  auto take = [](const std::optional<double>& flag, double& dst) {
    if (flag) dst = kTwoPi * *flag;
  };
  take(f.g_k, v.g_k);
  take(f.kappa_f, v.kappa_f);
  take(f.delta_r, v.delta_r);
  take(f.delta_f, v.delta_f);
  take(f.gamma_s, v.gamma_s);
  take(f.delta_q, v.delta_q);
  take(f.g, v.g);
  for (const auto& [name, x] : {std::pair{"kappa_f", v.kappa_f}, std::pair{"gamma_s", v.gamma_s}}) {
    if (x < 0.0 || !std::isfinite(x)) {
      throw InvalidRate(std::string(name) + " must be non-negative and finite");
    }
  }
  return v;
}

void emit_table(const std::vector<std::pair<std::string, double>>& rows,
                const std::vector<std::string>& remarks, const std::string& csv,
                std::ostream& out) {
  CsvTable table({"quantity", "rad_per_s", "hz"});
  for (const auto& [name, value] : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-22s %22.12e rad/s %22.12e Hz\n", name.c_str(), value,
                  value / kTwoPi);
    out << line;
    table.add_row({name, csv_number(value), csv_number(value / kTwoPi)});
  }
  for (const auto& r : remarks) out << "  note: " << r << "\n";
  if (!csv.empty()) write_text(csv, table.str());
}

int cmd_kappa_eff(const AnalyticFlags& f, std::ostream& out) {
  const AnalyticValues v = analytic_values(f);
  PurcellInputs in{v.g_k, v.kappa_f, v.delta_r, v.gamma_s, v.delta_q, v.g, f.n_f};
  const PurcellBreakdown novel = kappa_eff_novel(in);
  const double traditional = kappa_eff_traditional(v.g_k, v.kappa_f, v.delta_f);
  out << "kappa_eff, qubit -> filter -> readout (term2 status: " << to_string(novel.term2_status)
      << ")\n";
  std::vector<std::pair<std::string, double>> rows{{"term1", novel.term1},
                                                   {"term2", novel.term2},
                                                   {"total", novel.total},
                                                   {"traditional", traditional}};
  std::vector<std::string> remarks{
      "term2 is the filter photon-number contribution that the single-Lorentzian estimate "
      "leaves out"};
  if (traditional > 0.0) remarks.push_back("total/traditional = " + sci(novel.total / traditional));
  emit_table(rows, remarks, f.csv, out);
  return kExitOk;
}

int cmd_chi(const AnalyticFlags& f, std::ostream& out) {
  const AnalyticValues v = analytic_values(f);
  const DispersiveShift s = dispersive_shift(v.g_k, v.delta_r, v.delta_f);
  const CriticalPhotonNumber nc = n_crit(v.g, v.delta_q);
  out << "dispersive readout frequencies (rotating frame)\n";
  std::vector<std::pair<std::string, double>> rows{
      {"omega_r_ground", s.omega_r_ground},
      {"omega_r_excited", s.omega_r_excited},
      {"two_chi", s.two_chi},
      {"two_chi_printed", two_chi_printed(v.g_k, v.delta_r, v.delta_f)}};
  std::vector<std::string> remarks{
      "two_chi = omega_r_excited - omega_r_ground; the printed closed form g_k^2/(dr+df) "
      "has the opposite sign"};
  if (nc.infinite) {
    remarks.push_back("n_crit is infinite (g = 0)");
  } else {
    char buf[80];
    std::snprintf(buf, sizeof buf, "n_crit = dq^2/(4 g^2) = %.12e", nc.value);
    remarks.push_back(buf);
  }
  emit_table(rows, remarks, f.csv, out);
  return kExitOk;
}

// ---- s21 ------------------------------------------------------------------

struct S21Flags {
  CommonFlags common;
  bool with_filter = true;
  std::optional<double> fmin, fmax;
  int points = 20001;
  double window = 20e6;
};

int cmd_s21(const S21Flags& f, std::ostream& out) {
  CommonFlags common = f.common;
  if (common.config.empty() && common.preset.empty()) common.preset = "appendix";
  const RunConfig c = resolve_config(common.config, common.preset, common.out);
  const ParamsHz& p = c.params;
  const LinearCircuit circuit = linearize(p.to_system(), c.topology,
                                          LinearizeOptions{true, f.with_filter});
  const double lo = f.fmin.value_or(std::min({p.omega_q, p.omega_f, p.omega_r}) - 50e6);
  const double hi = f.fmax.value_or(std::max({p.omega_q, p.omega_f, p.omega_r}) + 50e6);
  if (!(lo < hi)) throw ConfigError("fmax", "must exceed fmin");
  if (f.points < 2) throw ConfigError("points", "must be at least 2");

  std::vector<double> grid = resonance_grid(circuit, lo, hi, f.points);
  const double windows[2][2] = {{p.omega_q - f.window, p.omega_q + f.window},
                                {p.omega_r - f.window, p.omega_r + f.window}};
  for (const auto& w : windows) {
    const auto fine = resonance_grid(circuit, w[0], w[1], 4001);
    grid.insert(grid.end(), fine.begin(), fine.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const Spectrum spec = s21(circuit, grid);
  const DipReport qubit = dip_report(spec, windows[0][0], windows[0][1]);
  const DipReport readout = dip_report(spec, windows[1][0], windows[1][1]);

  const std::string tag = f.with_filter ? "with_filter" : "without_filter";
  const std::string dir = common.out.empty() ? join(c.output_dir, tag) : c.output_dir;
  write_text(join(dir, "s21_" + tag + ".csv"), spectrum_table(spec).str());
  auto dip_json = [](const DipReport& d) {
    return json{{"freq_hz", d.freq_hz},
                {"min_db", d.min_db},
                {"baseline_db", d.baseline_db},
                {"depth_db", d.depth_db}};
  };
  json dips = {{"configuration", tag},
               {"qubit_window_hz", {windows[0][0], windows[0][1]}},
               {"readout_window_hz", {windows[1][0], windows[1][1]}},
               {"qubit", dip_json(qubit)},
               {"readout", dip_json(readout)}};
  write_json(join(dir, "dips.json"), dips);
  json manifest = base_manifest("s21", c);
  manifest["configuration"] = tag;
  manifest["points"] = grid.size();
  manifest["notes"]["s21"] =
      "notch convention S21 = 1 - (kappa_f/2) [(-i w - A)^-1]_port,port; qubit linearised "
      "with sigma_z -> -1 and damped at gamma_s";
  manifest["status"] = "ok";
  write_json(join(dir, "manifest.json"), manifest);

  char line[200];
  std::snprintf(line, sizeof line, "%s: qubit window dip %.6f dB at %.9e Hz\n", tag.c_str(),
                qubit.depth_db, qubit.freq_hz);
  out << line;
  std::snprintf(line, sizeof line, "%s: readout window dip %.6f dB at %.9e Hz\n", tag.c_str(),
                readout.depth_db, readout.freq_hz);
  out << line;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"purcellsim: Purcell-filtered dispersive readout simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonFlags sim_flags, sweep_flags;
  auto* sim = app.add_subcommand("simulate", "Lindblad evolution with fidelity and phase-space output");
  add_common(sim, sim_flags);
  auto* sweep = app.add_subcommand("sweep", "detuning x time sweep of fidelity or 2eta");
  add_common(sweep, sweep_flags);

  AnalyticFlags ke_flags, chi_flags;
  auto* ke = app.add_subcommand("kappa-eff", "qubit decay rate through the filtered chain");
  add_analytic(ke, ke_flags);
  ke->add_option("--n-f", ke_flags.n_f, "filter photon number");
  auto* chi = app.add_subcommand("chi", "dispersive readout frequencies and 2chi");
  add_analytic(chi, chi_flags);

  S21Flags s21_flags;
  auto* s21cmd = app.add_subcommand("s21", "transmission spectrum with or without the filter");
  add_common(s21cmd, s21_flags.common);
  s21cmd->add_flag("--with-filter,!--without-filter", s21_flags.with_filter,
                   "include the filter mode (default)");
  s21cmd->add_option("--fmin", s21_flags.fmin, "lower frequency [Hz]");
  s21cmd->add_option("--fmax", s21_flags.fmax, "upper frequency [Hz]");
  s21cmd->add_option("--points", s21_flags.points, "uniform grid points");
  s21cmd->add_option("--window", s21_flags.window, "half width of the dip windows [Hz]");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(sim_flags, out);
    if (*sweep) return cmd_sweep(sweep_flags, out);
    if (*ke) return cmd_kappa_eff(ke_flags, out);
    if (*chi) return cmd_chi(chi_flags, out);
    if (*s21cmd) return cmd_s21(s21_flags, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PoleError& e) {
    err << "pole error (" << e.branch() << " branch): " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace purcell
