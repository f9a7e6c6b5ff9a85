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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "purcellsim/dynamics.hpp"
#include "purcellsim/model.hpp"

namespace purcell {

enum class SweepParameter { kDeltaR, kDeltaQ };
enum class SweepMetric { kFidelityResonator, kFidelityQubit, kTwoEta };

std::string_view to_string(SweepParameter p);
std::string_view to_string(SweepMetric m);
SweepParameter sweep_parameter_from_string(std::string_view name);
SweepMetric sweep_metric_from_string(std::string_view name);

inline constexpr long kDefaultCellBudget = 10000;

struct SweepSpec {
  // Detuning axis in rad/s. delta_r moves omega_r, delta_q moves omega_q;
  // omega_d and the drive amplitude stay at their base values.
  SweepParameter parameter = SweepParameter::kDeltaR;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  double t_end = 1.0e-7;
  int time_count = 201;

  SystemParams base;
  Topology topology = Topology::kSysII;
  ModeDims dims{2, 4};
  ModelOptions options;
  InitialState initial;
  Method method = Method::kRk45;
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  std::vector<SweepMetric> metrics{SweepMetric::kFidelityResonator};

  long budget = kDefaultCellBudget;
  int threads = 1;

  // Cells listed here fail deliberately; used to exercise failure isolation.
  std::vector<int> forced_failures;

  void validate() const;
  std::vector<double> axis_values() const;
  std::vector<double> time_values() const;
  long cell_count() const { return static_cast<long>(count) * time_count; }
};

struct CellStatus {
  bool ok = true;
  std::string reason;
  // Evolution invariants for the row; left at zero when the row failed.
  double max_trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  double max_hermiticity_defect = 0.0;
  std::size_t renormalizations = 0;
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::kDeltaR;
  SweepMetric metric = SweepMetric::kFidelityResonator;
  std::vector<double> axis;   // rad/s
  std::vector<double> times;  // s
  Eigen::MatrixXd values;     // (axis index, time index); NaN on failed rows
  std::vector<CellStatus> status;  // per axis value
  double wall_seconds = 0.0;

  std::size_t failed_count() const;
};

// One Lindblad evolution per axis value; every requested metric is read off
// the same trajectory. Results are returned in spec.metrics order.
std::vector<SweepResult> run_sweep(const SweepSpec& spec);

struct ColocationReport {
  bool flat = false;
  int fidelity_argmin = -1;
  int eta_argmax = -1;
  double fidelity_location = 0.0;  // rad/s
  double eta_location = 0.0;       // rad/s
  int separation_cells = 0;
  Eigen::VectorXd fidelity_profile;  // min over time per axis value
  Eigen::VectorXd eta_profile;       // max over time per axis value
};

// Failed rows are skipped. Throws InvalidArgument on axis mismatch.
ColocationReport colocate_extrema(const SweepResult& fid, const SweepResult& eta);

}  // namespace purcell
