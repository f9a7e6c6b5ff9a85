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

#include "purcellsim/analytic.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "purcellsim/errors.hpp"

namespace purcell {

std::string_view to_string(Term2Status status) {
  switch (status) {
    case Term2Status::kFinite: return "finite";
    case Term2Status::kZeroEmission: return "zero_emission";
    case Term2Status::kZeroCouplingLimit: return "zero_coupling_limit";
    case Term2Status::kUndefinedNoPhotons: return "undefined_n_f_nonpositive";
  }
  return "unknown";
}

namespace {

double lorentzian_term(double g_k, double kappa_f, double detuning) {
  if (!(kappa_f > 0.0)) {
    throw InvalidRate("kappa_f must be positive");
  }
  const double x = 2.0 * detuning / kappa_f;
  return (4.0 * g_k * g_k / kappa_f) / (1.0 + x * x);
}

}  // namespace

PurcellBreakdown kappa_eff_novel(const PurcellInputs& in) {
  PurcellBreakdown out;
  out.inputs = in;
  out.term1 = lorentzian_term(in.g_k, in.kappa_f, in.delta_r);

  if (in.gamma_s == 0.0) {
    out.term2 = 0.0;
    out.term2_status = Term2Status::kZeroEmission;
  } else if (!(in.n_f > 0.0)) {
    out.term2 = std::numeric_limits<double>::infinity();
    out.term2_status = Term2Status::kUndefinedNoPhotons;
  } else if (in.g == 0.0 && in.delta_q != 0.0) {
    out.term2 = 0.0;
    out.term2_status = Term2Status::kZeroCouplingLimit;
  } else {
    const double ratio =
        in.delta_q == 0.0 ? 0.0 : in.gamma_s * in.delta_q / (in.g * in.g * (in.n_f + 1.0));
    out.term2 = (in.gamma_s / in.n_f) / (1.0 + ratio * ratio);
  }
  out.total = out.term1 + out.term2;
  return out;
}

double kappa_eff_traditional(double g_k, double kappa_f, double delta_f) {
  return lorentzian_term(g_k, kappa_f, delta_f);
}

DispersiveShift dispersive_shift(double g_k, double delta_r, double delta_f) {
  const double diff = delta_r - delta_f;
  const double sum = delta_r + delta_f;
  if (std::abs(diff) < kPoleTolerance) {
    throw PoleError("ground", "dispersive_shift: |delta_r - delta_f| is below the "
                              "pole tolerance (ground branch)");
  }
  if (std::abs(sum) < kPoleTolerance) {
    throw PoleError("excited", "dispersive_shift: |delta_r + delta_f| is below the "
                               "pole tolerance (shift branch)");
  }
  const double g2 = g_k * g_k;
  DispersiveShift s;
  s.omega_r_ground = delta_r + g2 / diff;
  s.omega_r_excited = s.omega_r_ground - g2 / sum;
  s.two_chi = -g2 / sum;
  return s;
}

NumericDispersiveShift dispersive_shift_numeric(const SystemParams& params,
                                                Topology topology,
                                                const ModeDims& dims,
                                                const ModelOptions& options) {
  if (dims.filter < 3 || dims.readout < 3) {
    throw InvalidDimension("dispersive_shift_numeric: mode dimensions must be >= 3");
  }
  SystemParams undriven = params;
  undriven.epsilon_in = 0.0;
  const ModelRealization model = build_model(undriven, topology, dims, options);

  Eigen::SelfAdjointEigenSolver<Matrix> es(model.hamiltonian.matrix());
  const Eigen::VectorXd& energies = es.eigenvalues();
  const Matrix& vectors = es.eigenvectors();

  // |q, n=0, m> with the flat index q*(df*dr) + 0*dr + m.
  const int block = dims.filter * dims.readout;
  auto dressed_energy = [&](int qubit, int readout_photons, double& overlap) {
    const int bare = qubit * block + readout_photons;
    Eigen::Index best = 0;
    const double weight = vectors.row(bare).cwiseAbs2().maxCoeff(&best);
    overlap = weight;
    if (weight < 0.5) {
      throw NonDispersiveRegime(
          "dispersive_shift_numeric: maximum overlap below 0.5; states are "
          "strongly hybridised");
    }
    return energies(best);
  };

  std::array<double, 4> overlaps{};
  const double eg0 = dressed_energy(0, 0, overlaps[0]);
  const double eg1 = dressed_energy(0, 1, overlaps[1]);
  const double ee0 = dressed_energy(1, 0, overlaps[2]);
  const double ee1 = dressed_energy(1, 1, overlaps[3]);

  NumericDispersiveShift out;
  out.shift.omega_r_ground = eg1 - eg0;
  out.shift.omega_r_excited = ee1 - ee0;
  out.shift.two_chi = out.shift.omega_r_excited - out.shift.omega_r_ground;
  out.min_overlap = *std::min_element(overlaps.begin(), overlaps.end());
  return out;
}

CriticalPhotonNumber n_crit(double g, double delta_q) {
  if (g == 0.0) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {delta_q * delta_q / (4.0 * g * g), false};
}

}  // namespace purcell
