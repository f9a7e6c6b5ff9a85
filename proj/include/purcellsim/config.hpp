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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "purcellsim/dynamics.hpp"
#include "purcellsim/model.hpp"
#include "purcellsim/sweep.hpp"

namespace purcell {

// User-facing parameters in plain Hz; the engines receive 2*pi times these.
// epsilon_in is passed through unscaled.
struct ParamsHz {
  double omega_r = 0.0;
  double omega_f = 0.0;
  double omega_q = 0.0;
  double omega_d = 0.0;
  double g_k = 0.0;
  double g = 0.0;
  double kappa_f = 0.0;
  double gamma_s = 0.0;
  double kappa_int = 0.0;
  Complex epsilon_in{0.0, 0.0};

  SystemParams to_system() const;
};

struct EvolutionSettings {
  double t_start = 0.0;
  double t_end = 1.0e-6;
  int n_steps = 2000;
  Method method = Method::kRk45;
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int rk4_substeps = 1;

  EvolutionConfig to_config() const;
};

struct SweepSettings {
  SweepParameter parameter = SweepParameter::kDeltaR;
  double min_hz = -0.5e9;
  double max_hz = 0.5e9;
  int count = 41;
  std::vector<SweepMetric> metrics{SweepMetric::kFidelityResonator};
  long budget = kDefaultCellBudget;
};

struct RunConfig {
  std::string preset;  // empty when none
  ParamsHz params;
  Topology topology = Topology::kSysII;
  ModeDims dims{2, 2};
  ModelOptions options;
  InitialState initial;
  EvolutionSettings evolution;
  std::string output_dir = "out";
  std::optional<SweepSettings> sweep;

  // Time axis of a sweep comes from `evolution` (t_end, n_steps).
  SweepSpec sweep_spec(int threads) const;
};

std::vector<std::string> preset_names();

// Throws ConfigError (field "preset") for an unknown name.
RunConfig preset_config(std::string_view name);

// The drive that keeps the bare readout mode at alpha in steady state when it
// carries the port: eps = alpha (i delta_r + kappa_f/2) / sqrt(2 kappa_f), in
// angular units.
Complex matched_drive(Complex alpha, double delta_r, double kappa_f);

// Unknown keys, wrong types and invalid values throw ConfigError naming the
// dotted field path. A "preset" key is expanded before the other keys apply.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Every field materialised; parse_config(to_json(c)) reproduces c exactly.
nlohmann::json to_json(const RunConfig& config);

}  // namespace purcell
