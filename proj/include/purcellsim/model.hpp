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

#include "purcellsim/fockspace.hpp"

namespace purcell {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class Topology {
  kSysI,   // qubit <-> readout <-> filter, decay port on the filter
  kSysII,  // qubit <-> filter <-> readout, decay port on the readout
};

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view name);

// Physical parameters in angular units (rad/s). Detunings are taken relative
// to the drive frequency omega_d.
struct SystemParams {
  double omega_r = 0.0;
  double omega_f = 0.0;
  double omega_q = 0.0;
  double omega_d = 0.0;
  double g_k = 0.0;      // filter <-> readout
  double g = 0.0;        // qubit <-> filter (SysII) or qubit <-> readout (SysI)
  double kappa_f = 0.0;  // port decay rate
  double gamma_s = 0.0;  // qubit spontaneous emission
  Complex epsilon_in{0.0, 0.0};  // sqrt(photons/s)
  double kappa_int = 0.0;        // internal loss per bosonic mode

  double delta_r() const noexcept { return omega_r - omega_d; }
  double delta_f() const noexcept { return omega_f - omega_d; }
  double delta_q() const noexcept { return omega_q - omega_d; }

  // Throws InvalidRate naming the first negative/non-finite field.
  void validate() const;
};

struct ModeDims {
  int filter = 2;
  int readout = 2;
};

struct ModelOptions {
  // Keep g_k (a^+ + a)(b^+ + b) and g (m^+ + m)(s^+ + s^-) in full.
  bool counter_rotating = false;
  // Literal form of the interaction Hamiltonian where the qubit coupling is
  // written through the readout operator even for SysII.
  bool qubit_via_readout = false;
  // Qubit lines of the mean-field equations with the opposite precession and
  // coupling signs (+i dq s, -i g z m, -2i g (...)) as sometimes printed.
  bool flipped_qubit_signs = false;
};

struct CollapseChannel {
  std::string name;
  Operator op;
  double rate;
};

struct ModelRealization {
  SpaceLayout layout;
  Topology topology;
  Operator hamiltonian;  // rotating frame at omega_d, drive included
  std::vector<CollapseChannel> collapse;
  Operator drive_op;     // i sqrt(2 kappa_f) (eps P^+ - eps^* P)

  // Embedded ladder operators, handy for observables.
  Operator a;            // readout
  Operator b;            // filter
  Operator sigma_minus;
  Operator sigma_z;
  std::string port_label;
  std::string qubit_partner_label;
};

inline const std::string kQubit = "qubit";
inline const std::string kFilter = "filter";
inline const std::string kReadout = "readout";

SpaceLayout readout_layout(const ModeDims& dims);

ModelRealization build_model(const SystemParams& params, Topology topology,
                             const ModeDims& dims, const ModelOptions& options = {});

// Product state |qubit_level> (x) |filter_fock> (x) |alpha>_readout.
struct InitialState {
  int qubit_level = 0;
  int filter_fock = 0;
  Complex readout_alpha{1.0, 1.0};
};

struct PreparedState {
  DensityMatrix rho;
  double readout_truncation_weight;  // tail discarded before renormalising
};

// Throws InvalidArgument when a level does not fit the layout.
PreparedState prepare_initial_state(const ModeDims& dims, const InitialState& init);

// Total excitation number a^+a + b^+b + (sigma_z + 1)/2.
Operator excitation_number(const ModelRealization& model);

// Mean-field vector (<a>, <b>, <sigma^->, <sigma_z>).
using MeanField = Eigen::Vector4cd;
enum MeanFieldIndex : int { kMfA = 0, kMfB = 1, kMfSigma = 2, kMfZ = 3 };

// Rotating-frame Langevin right-hand side with <sigma_z m> ~ <sigma_z><m>.
MeanField langevin_rhs(const SystemParams& params, Topology topology,
                       const MeanField& state, const ModelOptions& options = {});

}  // namespace purcell
