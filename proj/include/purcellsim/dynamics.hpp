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

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "purcellsim/fockspace.hpp"
#include "purcellsim/model.hpp"

namespace purcell {

enum class Method { kRk4, kRk45 };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct NamedObservable {
  std::string name;
  Operator op;
};

// Acceptance bounds for integrator output wrapped as DensityMatrix. Trace is
// renormalised beyond 1e-6; RK45 at the default tolerance drifts negative
// eigenvalues to ~1e-5 over a microsecond of fig2 dynamics.
inline constexpr double kStateTraceTol = 1e-6;
inline constexpr double kStatePositivityTol = 1e-4;

struct EvolutionConfig {
  double t_start = 0.0;
  double t_end = 1.0e-6;
  int n_steps = 2000;  // number of output times, endpoints included
  Method method = Method::kRk45;
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int rk4_substeps = 1;  // fixed RK4 steps per output interval
  bool store_states = false;
  std::vector<NamedObservable> observables;

  void validate() const;
  std::vector<double> output_times() const;
};

struct RenormalizationEvent {
  double time;
  double trace_deviation;
};

struct EvolutionDiagnostics {
  std::vector<double> trace_deviation;     // |Tr rho - 1| before any renormalisation
  std::vector<double> min_eigenvalue;
  std::vector<double> hermiticity_defect;
  std::vector<RenormalizationEvent> renormalizations;
  long accepted_steps = 0;
  long rejected_steps = 0;

  double max_trace_deviation() const;
  double min_min_eigenvalue() const;
  double max_hermiticity_defect() const;
};

struct TimeSeriesResult {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<Complex>> expectations;  // [observable][time]
  std::vector<DensityMatrix> states;               // only if store_states
  EvolutionDiagnostics diagnostics;

  // Throws InvalidArgument for an unknown name.
  const std::vector<Complex>& series(const std::string& name) const;
};

// d rho/dt = -i [H, rho] + sum_k rate_k (L rho L^+ - 1/2 {L^+ L, rho}),
// evaluated with sparse copies of H and the jump operators.
class LindbladGenerator {
 public:
  LindbladGenerator(const Operator& hamiltonian,
                    const std::vector<CollapseChannel>& collapse);
  explicit LindbladGenerator(const ModelRealization& model)
      : LindbladGenerator(model.hamiltonian, model.collapse) {}

  void apply(const Matrix& rho, Matrix& out) const;
  int dim() const noexcept { return dim_; }

 private:
  using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
  int dim_;
  Sparse h_eff_;      // H - i/2 sum rate L^+ L
  Sparse h_eff_adj_;
  std::vector<std::pair<Sparse, Sparse>> jumps_;  // (sqrt(rate) L, its adjoint)
  mutable Matrix scratch_;
};

// Called at every output time with the (possibly renormalised) state.
using StateObserver = std::function<void(std::size_t index, double t, const Matrix& rho)>;

TimeSeriesResult evolve_lindblad(const ModelRealization& model,
                                 const DensityMatrix& rho0,
                                 const EvolutionConfig& config,
                                 const StateObserver& observer = {});

// Lower-level entry that takes the generator directly (used by tests that
// build bare Hamiltonians outside the readout model).
TimeSeriesResult evolve_lindblad(const Operator& hamiltonian,
                                 const std::vector<CollapseChannel>& collapse,
                                 const DensityMatrix& rho0,
                                 const EvolutionConfig& config,
                                 const StateObserver& observer = {});

// Mean-field trajectories; the result series are named a, b, sigma_minus, sigma_z.
TimeSeriesResult evolve_langevin(const SystemParams& params, Topology topology,
                                 const MeanField& v0, const EvolutionConfig& config,
                                 const ModelOptions& options = {});

struct SteadyStateResult {
  double n_f = 0.0;
  double settled_at = 0.0;
  double trailing_slope = 0.0;
};

// Evolves |g,0,0> on the config's output grid until d<b^+b>/dt stays below
// 1e-6 kappa_f over a trailing window.
SteadyStateResult steady_state_filter_photons(const ModelRealization& model,
                                              const EvolutionConfig& config,
                                              double slope_tolerance_factor = 1e-6);

}  // namespace purcell
