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
#include <vector>

#include <Eigen/Dense>

#include "purcellsim/fockspace.hpp"
#include "purcellsim/model.hpp"

namespace purcell {

// Linear modes in the lab frame, rad/s throughout.
struct LinearCircuit {
  std::vector<std::string> labels;
  Eigen::VectorXd omega;   // bare mode frequencies
  Eigen::VectorXd rates;   // internal damping per mode (energy decay rate)
  Matrix coupling;         // Hermitian, zero diagonal
  int port = 0;
  double kappa_ext = 0.0;

  int size() const { return static_cast<int>(omega.size()); }
  int index_of(const std::string& label) const;
  void validate() const;

  // A = -i diag(omega) - i G - 1/2 diag(rates + kappa_ext e_port).
  Matrix system_matrix() const;
};

struct LinearizeOptions {
  bool include_qubit = true;
  // Without the filter the qubit couples directly to the readout mode, which
  // then carries the port.
  bool include_filter = true;
};

// Weak-excitation closure sigma_z -> -1 of the mean-field equations. Modes are
// ordered readout, filter, qubit (absent ones skipped).
LinearCircuit linearize(const SystemParams& params, Topology topology,
                        const LinearizeOptions& options = {});

struct Spectrum {
  std::vector<double> freqs_hz;
  std::vector<Complex> s21;
  std::vector<double> magnitude_db;
  std::vector<bool> singular;  // true where the solve hit an exact pole
};

// Notch convention S21 = 1 - (kappa_ext/2) [(-i w I - A)^-1]_{port,port}.
Spectrum s21(const LinearCircuit& circuit, const std::vector<double>& freqs_hz);

// Resonance frequencies (Hz) from the eigenvalues of A, ascending.
std::vector<double> normal_mode_frequencies_hz(const LinearCircuit& circuit);

// Uniform grid over [lo, hi] with the circuit's normal-mode frequencies inside
// the interval merged in, so narrow dips are sampled at their centre.
std::vector<double> resonance_grid(const LinearCircuit& circuit, double lo_hz, double hi_hz,
                                   int points);

struct DipReport {
  double freq_hz = 0.0;
  double min_db = 0.0;
  double baseline_db = 0.0;
  double depth_db = 0.0;
};

// Baseline is the median magnitude of the outer 5% (at least one point) at
// each end of the window. Throws InvalidArgument if no sample falls inside.
DipReport dip_report(const Spectrum& spectrum, double lo_hz, double hi_hz);

}  // namespace purcell
