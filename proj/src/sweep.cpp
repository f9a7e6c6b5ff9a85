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

#include "purcellsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "purcellsim/errors.hpp"
#include "purcellsim/metrics.hpp"

namespace purcell {

std::string_view to_string(SweepParameter p) {
  return p == SweepParameter::kDeltaR ? "delta_r" : "delta_q";
}

std::string_view to_string(SweepMetric m) {
  switch (m) {
    case SweepMetric::kFidelityResonator: return "fidelity_resonator";
    case SweepMetric::kFidelityQubit: return "fidelity_qubit";
    case SweepMetric::kTwoEta: return "two_eta";
  }
  return "unknown";
}

SweepParameter sweep_parameter_from_string(std::string_view name) {
  if (name == "delta_r") return SweepParameter::kDeltaR;
  if (name == "delta_q") return SweepParameter::kDeltaQ;
  throw InvalidArgument("unknown sweep parameter '" + std::string(name) +
                        "' (expected delta_r or delta_q)");
}

SweepMetric sweep_metric_from_string(std::string_view name) {
  for (auto m : {SweepMetric::kFidelityResonator, SweepMetric::kFidelityQubit,
                 SweepMetric::kTwoEta}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidArgument("unknown sweep metric '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (count < 2 || time_count < 2) {
    throw InvalidArgument("sweep axes need at least 2 points each");
  }
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw InvalidArgument("sweep axis requires finite min < max");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw InvalidArgument("sweep t_end must be positive");
  }
  if (metrics.empty()) throw InvalidArgument("sweep needs at least one metric");
  if (threads < 1) throw InvalidArgument("sweep threads must be at least 1");
  if (cell_count() > budget) {
    throw InvalidArgument("sweep of " + std::to_string(cell_count()) +
                          " cells exceeds the budget of " + std::to_string(budget));
  }
  base.validate();
}

std::vector<double> SweepSpec::axis_values() const { return linspace(min, max, count); }

std::vector<double> SweepSpec::time_values() const {
  return linspace(0.0, t_end, time_count);
}

std::size_t SweepResult::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(status.begin(), status.end(), [](const CellStatus& s) { return !s.ok; }));
}

namespace {

SystemParams cell_params(const SweepSpec& spec, double value) {
  SystemParams p = spec.base;
  if (spec.parameter == SweepParameter::kDeltaR) {
    p.omega_r = p.omega_d + value;
  } else {
    p.omega_q = p.omega_d + value;
  }
  return p;
}

// Evaluates every metric of one axis value into rows[m] (length time_count).
void run_cell(const SweepSpec& spec, double value, const PreparedState& init,
              std::vector<Eigen::VectorXd>& rows, CellStatus& status) {
  const ModelRealization model =
      build_model(cell_params(spec, value), spec.topology, spec.dims, spec.options);

  EvolutionConfig cfg;
  cfg.t_start = 0.0;
  cfg.t_end = spec.t_end;
  cfg.n_steps = spec.time_count;
  cfg.method = spec.method;
  cfg.abs_tol = spec.abs_tol;
  cfg.rel_tol = spec.rel_tol;

  const DensityMatrix ref_readout = partial_trace(init.rho, {kReadout});
  const DensityMatrix ref_qubit = partial_trace(init.rho, {kQubit});
  const TwoModeCriterion criterion(model.layout, kReadout, kFilter);
  const std::vector<std::string> keep_readout{kReadout};
  const std::vector<std::string> keep_qubit{kQubit};

  auto observer = [&](std::size_t index, double, const Matrix& rho) {
    const Eigen::Index t = static_cast<Eigen::Index>(index);
    // Full-state checks are the evolver's job; the reduced states only need
    // to be valid enough for fidelity.
    const DensityMatrix full(model.layout, 0.5 * (rho + rho.adjoint()), kStateTraceTol, kStatePositivityTol);
    for (std::size_t m = 0; m < spec.metrics.size(); ++m) {
      switch (spec.metrics[m]) {
        case SweepMetric::kFidelityResonator:
          rows[m](t) = fidelity(partial_trace(full, keep_readout), ref_readout);
          break;
        case SweepMetric::kFidelityQubit:
          rows[m](t) = fidelity(partial_trace(full, keep_qubit), ref_qubit);
          break;
        case SweepMetric::kTwoEta:
          rows[m](t) = criterion.evaluate(rho).two_eta;
          break;
      }
    }
  };
  const EvolutionDiagnostics d = evolve_lindblad(model, init.rho, cfg, observer).diagnostics;
  status.max_trace_deviation = d.max_trace_deviation();
  status.min_eigenvalue = d.min_min_eigenvalue();
  status.max_hermiticity_defect = d.max_hermiticity_defect();
  status.renormalizations = d.renormalizations.size();
}

}  // namespace

std::vector<SweepResult> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> axis = spec.axis_values();
  const std::vector<double> times = spec.time_values();
  const PreparedState init = prepare_initial_state(spec.dims, spec.initial);
  const std::size_t n_metrics = spec.metrics.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<SweepResult> results(n_metrics);
  for (std::size_t m = 0; m < n_metrics; ++m) {
    results[m].parameter = spec.parameter;
    results[m].metric = spec.metrics[m];
    results[m].axis = axis;
    results[m].times = times;
    results[m].values = Eigen::MatrixXd::Constant(spec.count, spec.time_count, nan);
    results[m].status.assign(static_cast<std::size_t>(spec.count), CellStatus{});
  }

  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<Eigen::VectorXd> rows(n_metrics);
    for (int i = next.fetch_add(1); i < spec.count; i = next.fetch_add(1)) {
      CellStatus status;
      for (auto& r : rows) r = Eigen::VectorXd::Constant(spec.time_count, nan);
      try {
        if (std::find(spec.forced_failures.begin(), spec.forced_failures.end(), i) !=
            spec.forced_failures.end()) {
          throw NumericalError("forced failure");
        }
        run_cell(spec, axis[static_cast<std::size_t>(i)], init, rows, status);
      } catch (const std::exception& e) {
        status = CellStatus{};
        status.ok = false;
        status.reason = e.what();
        for (auto& r : rows) r.setConstant(nan);
      }
      // Each row is owned by exactly one worker.
      for (std::size_t m = 0; m < n_metrics; ++m) {
        results[m].values.row(i) = rows[m].transpose();
        results[m].status[static_cast<std::size_t>(i)] = status;
      }
    }
  };

  const int n_threads = std::min(spec.threads, spec.count);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : results) r.wall_seconds = wall;
  return results;
}

namespace {

Eigen::VectorXd aggregate(const SweepResult& r, bool take_min) {
  Eigen::VectorXd out(r.values.rows());
  for (Eigen::Index i = 0; i < r.values.rows(); ++i) {
    out(i) = take_min ? r.values.row(i).minCoeff() : r.values.row(i).maxCoeff();
  }
  return out;
}

int extremum_index(const Eigen::VectorXd& v, const std::vector<CellStatus>& status,
                   const std::vector<CellStatus>& other, bool take_min) {
  int best = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!status[k].ok || !other[k].ok) continue;
    if (best < 0 || (take_min ? v(i) < v(best) : v(i) > v(best))) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace

ColocationReport colocate_extrema(const SweepResult& fid, const SweepResult& eta) {
  if (fid.axis != eta.axis || fid.times != eta.times) {
    throw InvalidArgument("colocate_extrema: sweeps use different axes");
  }
  ColocationReport rep;
  rep.fidelity_profile = aggregate(fid, true);
  rep.eta_profile = aggregate(eta, false);
  rep.fidelity_argmin = extremum_index(rep.fidelity_profile, fid.status, eta.status, true);
  rep.eta_argmax = extremum_index(rep.eta_profile, eta.status, fid.status, false);
  if (rep.fidelity_argmin < 0 || rep.eta_argmax < 0) {
    rep.flat = true;
    return rep;
  }

  auto spread = [&](const Eigen::VectorXd& v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (!fid.status[static_cast<std::size_t>(i)].ok ||
          !eta.status[static_cast<std::size_t>(i)].ok) {
        continue;
      }
      lo = std::min(lo, v(i));
      hi = std::max(hi, v(i));
    }
    return hi - lo;
  };
  constexpr double kFlatTol = 1e-12;
  if (spread(rep.fidelity_profile) <= kFlatTol || spread(rep.eta_profile) <= kFlatTol) {
    rep.flat = true;
    return rep;
  }
  rep.fidelity_location = fid.axis[static_cast<std::size_t>(rep.fidelity_argmin)];
  rep.eta_location = eta.axis[static_cast<std::size_t>(rep.eta_argmax)];
  rep.separation_cells = std::abs(rep.fidelity_argmin - rep.eta_argmax);
  return rep;
}

}  // namespace purcell
