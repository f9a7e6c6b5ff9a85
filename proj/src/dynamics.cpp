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

#include "purcellsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "purcellsim/errors.hpp"
#include "purcellsim/ode.hpp"

namespace purcell {

std::string_view to_string(Method m) { return m == Method::kRk4 ? "rk4" : "rk45"; }

Method method_from_string(std::string_view name) {
  if (name == "rk4") return Method::kRk4;
  if (name == "rk45") return Method::kRk45;
  throw InvalidArgument("unknown integration method '" + std::string(name) + "'");
}

void EvolutionConfig::validate() const {
  if (!(t_end > t_start)) throw InvalidArgument("evolution: t_end must exceed t_start");
  if (n_steps < 2) throw InvalidArgument("evolution: n_steps must be at least 2");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw InvalidArgument("evolution: tolerances must be positive");
  }
  if (rk4_substeps < 1) throw InvalidArgument("evolution: rk4_substeps must be >= 1");
}

std::vector<double> EvolutionConfig::output_times() const {
  std::vector<double> t(static_cast<std::size_t>(n_steps));
  const double dt = (t_end - t_start) / (n_steps - 1);
  for (int i = 0; i < n_steps; ++i) t[i] = t_start + i * dt;
  t.back() = t_end;
  return t;
}

double EvolutionDiagnostics::max_trace_deviation() const {
  return trace_deviation.empty() ? 0.0
                                 : *std::max_element(trace_deviation.begin(), trace_deviation.end());
}

double EvolutionDiagnostics::min_min_eigenvalue() const {
  return min_eigenvalue.empty() ? 0.0
                                : *std::min_element(min_eigenvalue.begin(), min_eigenvalue.end());
}

double EvolutionDiagnostics::max_hermiticity_defect() const {
  return hermiticity_defect.empty()
             ? 0.0
             : *std::max_element(hermiticity_defect.begin(), hermiticity_defect.end());
}

const std::vector<Complex>& TimeSeriesResult::series(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("no observable named '" + name + "'");
  return expectations[static_cast<std::size_t>(it - names.begin())];
}

LindbladGenerator::LindbladGenerator(const Operator& hamiltonian,
                                     const std::vector<CollapseChannel>& collapse)
    : dim_(hamiltonian.layout().total_dim()) {
  Matrix h_eff = hamiltonian.matrix();
  for (const auto& channel : collapse) {
    if (!(channel.op.layout() == hamiltonian.layout())) {
      throw LayoutMismatch("collapse operator '" + channel.name +
                           "' does not match the Hamiltonian layout");
    }
    if (!(channel.rate >= 0.0)) {
      throw InvalidRate("collapse rate for '" + channel.name + "' must be >= 0");
    }
    if (channel.rate == 0.0) continue;
    const Matrix& l = channel.op.matrix();
    h_eff -= (0.5 * channel.rate) * kI * (l.adjoint() * l);
    const Matrix scaled = std::sqrt(channel.rate) * l;
    jumps_.emplace_back(scaled.sparseView(), Matrix(scaled.adjoint()).sparseView());
  }
  h_eff_ = h_eff.sparseView();
  h_eff_adj_ = Matrix(h_eff.adjoint()).sparseView();
}

void LindbladGenerator::apply(const Matrix& rho, Matrix& out) const {
  out.noalias() = (-kI) * (h_eff_ * rho);
  out.noalias() += kI * (rho * h_eff_adj_);
  for (const auto& [l, l_adj] : jumps_) {
    scratch_.noalias() = l * rho;
    out.noalias() += scratch_ * l_adj;
  }
}

namespace {

void check_observables(const EvolutionConfig& config, const SpaceLayout& layout) {
  for (const auto& obs : config.observables) {
    if (!(obs.op.layout() == layout)) {
      throw LayoutMismatch("observable '" + obs.name + "' does not match the state layout");
    }
  }
}

Complex trace_product(const Matrix& op, const Matrix& rho) {
  return op.cwiseProduct(rho.transpose()).sum();
}

}  // namespace

TimeSeriesResult evolve_lindblad(const Operator& hamiltonian,
                                 const std::vector<CollapseChannel>& collapse,
                                 const DensityMatrix& rho0,
                                 const EvolutionConfig& config,
                                 const StateObserver& observer) {
  config.validate();
  if (!(hamiltonian.layout() == rho0.layout())) {
    throw LayoutMismatch("evolve_lindblad: state and Hamiltonian layouts differ");
  }
  check_observables(config, rho0.layout());

  const LindbladGenerator generator(hamiltonian, collapse);
  const auto times = config.output_times();
  const std::size_t n_out = times.size();

  TimeSeriesResult result;
  result.times = times;
  for (const auto& obs : config.observables) result.names.push_back(obs.name);
  result.expectations.assign(config.observables.size(), std::vector<Complex>(n_out));
  auto& diag = result.diagnostics;
  diag.trace_deviation.reserve(n_out);
  diag.min_eigenvalue.reserve(n_out);
  diag.hermiticity_defect.reserve(n_out);

  Matrix rho = rho0.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> eig;

  // Returns true if the state was renormalised.
  auto record = [&](std::size_t i) {
    if (!rho.allFinite()) {
      throw NumericalError("evolve_lindblad: non-finite state at t = " +
                           std::to_string(times[i]));
    }
    const double trace = rho.trace().real();
    const double deviation = std::abs(trace - 1.0);
    diag.trace_deviation.push_back(deviation);
    diag.hermiticity_defect.push_back(hermiticity_defect(rho));
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    eig.compute(herm, Eigen::EigenvaluesOnly);
    diag.min_eigenvalue.push_back(eig.eigenvalues().minCoeff());

    bool renormalised = false;
    if (deviation > 1e-6) {
      rho /= trace;
      diag.renormalizations.push_back({times[i], deviation});
      renormalised = true;
    }
    for (std::size_t k = 0; k < config.observables.size(); ++k) {
      result.expectations[k][i] = trace_product(config.observables[k].op.matrix(), rho);
    }
    if (config.store_states) {
      result.states.emplace_back(rho0.layout(), 0.5 * (rho + rho.adjoint()), kStateTraceTol, kStatePositivityTol);
    }
    if (observer) observer(i, times[i], rho);
    return renormalised;
  };

  auto rhs = [&generator](double, const Matrix& y, Matrix& dy) {
    dy.resize(y.rows(), y.cols());
    generator.apply(y, dy);
  };

  record(0);
  if (config.method == Method::kRk45) {
    ode::DormandPrince45<Matrix> stepper(rhs, config.abs_tol, config.rel_tol);
    for (std::size_t i = 1; i < n_out; ++i) {
      stepper.advance(times[i - 1], times[i], rho);
      if (record(i)) stepper.invalidate();
    }
    diag.accepted_steps = stepper.stats().accepted;
    diag.rejected_steps = stepper.stats().rejected;
  } else {
    ode::Rk4<Matrix> stepper(rhs);
    for (std::size_t i = 1; i < n_out; ++i) {
      stepper.advance(times[i - 1], times[i], rho, config.rk4_substeps);
      record(i);
    }
    diag.accepted_steps = static_cast<long>(n_out - 1) * config.rk4_substeps;
  }
  return result;
}

TimeSeriesResult evolve_lindblad(const ModelRealization& model,
                                 const DensityMatrix& rho0,
                                 const EvolutionConfig& config,
                                 const StateObserver& observer) {
  return evolve_lindblad(model.hamiltonian, model.collapse, rho0, config, observer);
}

TimeSeriesResult evolve_langevin(const SystemParams& params, Topology topology,
                                 const MeanField& v0, const EvolutionConfig& config,
                                 const ModelOptions& options) {
  config.validate();
  params.validate();
  if (!v0.allFinite()) throw NumericalError("evolve_langevin: non-finite initial state");
  if (std::abs(v0(kMfZ).imag()) > 1e-9 || std::abs(v0(kMfZ).real()) > 1.0 + 1e-9) {
    throw InvalidArgument("evolve_langevin: <sigma_z> must be real and within [-1, 1]");
  }

  const auto times = config.output_times();
  TimeSeriesResult result;
  result.times = times;
  result.names = {"a", "b", "sigma_minus", "sigma_z"};
  result.expectations.assign(4, std::vector<Complex>(times.size()));

  const double bound_tol = 10.0 * std::max(config.abs_tol, config.rel_tol);
  MeanField v = v0;
  auto record = [&](std::size_t i) {
    if (!v.allFinite()) {
      throw NumericalError("evolve_langevin: non-finite state at t = " +
                           std::to_string(times[i]));
    }
    if (std::abs(v(kMfZ).real()) > 1.0 + bound_tol) {
      throw NumericalError("evolve_langevin: |<sigma_z>| exceeded 1 beyond tolerance");
    }
    for (int k = 0; k < 4; ++k) result.expectations[k][i] = v(k);
  };

  auto rhs = [&](double, const MeanField& y, MeanField& dy) {
    dy = langevin_rhs(params, topology, y, options);
  };

  record(0);
  if (config.method == Method::kRk45) {
    ode::DormandPrince45<MeanField> stepper(rhs, config.abs_tol, config.rel_tol);
    for (std::size_t i = 1; i < times.size(); ++i) {
      stepper.advance(times[i - 1], times[i], v);
      record(i);
    }
    result.diagnostics.accepted_steps = stepper.stats().accepted;
    result.diagnostics.rejected_steps = stepper.stats().rejected;
  } else {
    ode::Rk4<MeanField> stepper(rhs);
    for (std::size_t i = 1; i < times.size(); ++i) {
      stepper.advance(times[i - 1], times[i], v, config.rk4_substeps);
      record(i);
    }
  }
  return result;
}

SteadyStateResult steady_state_filter_photons(const ModelRealization& model,
                                              const EvolutionConfig& config,
                                              double slope_tolerance_factor) {
  config.validate();
  double rate_scale = 0.0;
  for (const auto& c : model.collapse) {
    if (c.name == "port") rate_scale = c.rate;
  }
  if (!(rate_scale > 0.0)) {
    for (const auto& c : model.collapse) rate_scale = std::max(rate_scale, c.rate);
  }
  if (!(rate_scale > 0.0)) {
    throw InvalidArgument("steady_state_filter_photons: model has no dissipation");
  }
  const double threshold = slope_tolerance_factor * rate_scale;

  const int dim = model.layout.total_dim();
  Matrix vacuum = Matrix::Zero(dim, dim);
  vacuum(0, 0) = 1.0;  // |g, 0, 0>

  const Matrix n_filter = model.b.matrix().adjoint() * model.b.matrix();
  const LindbladGenerator generator(model);
  auto rhs = [&generator](double, const Matrix& y, Matrix& dy) {
    dy.resize(y.rows(), y.cols());
    generator.apply(y, dy);
  };

  const auto times = config.output_times();
  const std::size_t window = std::max<std::size_t>(4, times.size() / 20);
  std::vector<double> occupation;
  occupation.reserve(times.size());

  Matrix rho = vacuum;
  occupation.push_back(trace_product(n_filter, rho).real());
  ode::DormandPrince45<Matrix> adaptive(rhs, config.abs_tol, config.rel_tol);
  ode::Rk4<Matrix> fixed(rhs);

  double slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (config.method == Method::kRk45) {
      adaptive.advance(times[i - 1], times[i], rho);
    } else {
      fixed.advance(times[i - 1], times[i], rho, config.rk4_substeps);
    }
    if (!rho.allFinite()) throw NumericalError("steady_state_filter_photons: non-finite state");
    occupation.push_back(trace_product(n_filter, rho).real());
    if (i < window) continue;
    slope = 0.0;
    for (std::size_t j = i + 1 - window; j <= i; ++j) {
      const double s = (occupation[j] - occupation[j - 1]) / (times[j] - times[j - 1]);
      slope = std::max(slope, std::abs(s));
    }
    if (slope < threshold) {
      return SteadyStateResult{occupation.back(), times[i], slope};
    }
  }
  throw NonConvergence(slope, "steady_state_filter_photons: <b^+b> did not settle by t_end "
                              "(trailing slope " + std::to_string(slope) + " 1/s)");
}

}  // namespace purcell
