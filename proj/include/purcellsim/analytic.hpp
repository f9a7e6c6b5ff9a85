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

#include "purcellsim/model.hpp"

namespace purcell {

enum class Term2Status {
  kFinite,
  kZeroEmission,      // gamma_s == 0: the photon-number term vanishes identically
  kZeroCouplingLimit, // g -> 0 with gamma_s, delta_q != 0: the term tends to 0
  kUndefinedNoPhotons // n_f <= 0: gamma_s / n_f diverges; term2 reported as +inf
};

std::string_view to_string(Term2Status status);

struct PurcellInputs {
  double g_k = 0.0;
  double kappa_f = 0.0;
  double delta_r = 0.0;
  double gamma_s = 0.0;
  double delta_q = 0.0;
  double g = 0.0;
  double n_f = 0.0;
};

struct PurcellBreakdown {
  double term1 = 0.0;  // port-limited Lorentzian in delta_r
  double term2 = 0.0;  // filter photon-number term
  double total = 0.0;
  Term2Status term2_status = Term2Status::kFinite;
  PurcellInputs inputs;
};

// Qubit decay rate through the filtered readout chain:
//   term1 = (4 g_k^2 / kappa_f) / (1 + (2 delta_r / kappa_f)^2)
//   term2 = (gamma_s / n_f) / (1 + (gamma_s delta_q / (g^2 (n_f + 1)))^2)
PurcellBreakdown kappa_eff_novel(const PurcellInputs& in);

// Same Lorentzian with the filter detuning in place of the readout detuning.
double kappa_eff_traditional(double g_k, double kappa_f, double delta_f);

struct DispersiveShift {
  double omega_r_ground = 0.0;
  double omega_r_excited = 0.0;
  double two_chi = 0.0;  // omega_r_excited - omega_r_ground
};

// Minimum |delta_r -+ delta_f| accepted by dispersive_shift (rad/s).
inline constexpr double kPoleTolerance = 1.0e3;

// Second-order perturbative readout frequencies
//   omega_g = delta_r + g_k^2 / (delta_r - delta_f)
//   omega_e = omega_g - g_k^2 / (delta_r + delta_f)
// two_chi carries the sign of omega_e - omega_g, i.e. -g_k^2/(delta_r+delta_f);
// the printed closed form has the opposite sign (see two_chi_printed).
DispersiveShift dispersive_shift(double g_k, double delta_r, double delta_f);

inline double two_chi_printed(double g_k, double delta_r, double delta_f) {
  return g_k * g_k / (delta_r + delta_f);
}

struct NumericDispersiveShift {
  DispersiveShift shift;
  double min_overlap = 0.0;  // weakest bare-state match among the four states
};

// Exact diagonalisation oracle: dressed states matched to |g,0,0>, |g,0,1>,
// |e,0,0>, |e,0,1> by maximum overlap; the drive is switched off.
NumericDispersiveShift dispersive_shift_numeric(const SystemParams& params,
                                                Topology topology,
                                                const ModeDims& dims,
                                                const ModelOptions& options = {});

struct CriticalPhotonNumber {
  double value = 0.0;
  bool infinite = false;
};

// n_crit = delta_q^2 / (4 g^2).
CriticalPhotonNumber n_crit(double g, double delta_q);

}  // namespace purcell
