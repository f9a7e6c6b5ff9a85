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

#include "purcellsim/model.hpp"

#include <array>
#include <cmath>

#include "purcellsim/errors.hpp"

namespace purcell {

std::string_view to_string(Topology t) {
  return t == Topology::kSysI ? "SysI" : "SysII";
}

Topology topology_from_string(std::string_view name) {
  if (name == "SysI" || name == "sys1" || name == "I") return Topology::kSysI;
  if (name == "SysII" || name == "sys2" || name == "II") return Topology::kSysII;
  throw InvalidArgument("unknown topology '" + std::string(name) + "'");
}

void SystemParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"omega_r", omega_r}, {"omega_f", omega_f}, {"omega_q", omega_q},
      {"omega_d", omega_d}, {"g_k", g_k},         {"g", g},
      {"kappa_f", kappa_f}, {"gamma_s", gamma_s}, {"kappa_int", kappa_int},
  };
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || value < 0.0) {
      throw InvalidRate(std::string(name) + " must be finite and non-negative");
    }
  }
  if (!std::isfinite(epsilon_in.real()) || !std::isfinite(epsilon_in.imag())) {
    throw InvalidRate("epsilon_in must be finite");
  }
}

SpaceLayout readout_layout(const ModeDims& dims) {
  if (dims.filter < 2 || dims.readout < 2) {
    throw InvalidDimension("mode dimensions must be at least 2");
  }
  return SpaceLayout({2, dims.filter, dims.readout}, {kQubit, kFilter, kReadout});
}

ModelRealization build_model(const SystemParams& params, Topology topology,
                             const ModeDims& dims, const ModelOptions& options) {
  params.validate();
  const SpaceLayout layout = readout_layout(dims);

  const Operator a = embed(destroy(dims.readout), layout, kReadout);
  const Operator b = embed(destroy(dims.filter), layout, kFilter);
  const PauliOps pauli = pauli_ops();
  const Operator sm = embed(pauli.sigma_minus, layout, kQubit);
  const Operator sz = embed(pauli.sigma_z, layout, kQubit);

  const bool qubit_on_readout =
      topology == Topology::kSysI || options.qubit_via_readout;
  const Operator& partner = qubit_on_readout ? a : b;
  const Operator& port = topology == Topology::kSysII ? a : b;

  const Matrix& am = a.matrix();
  const Matrix& bm = b.matrix();
  const Matrix& qm = partner.matrix();
  const Matrix& smm = sm.matrix();

  Matrix h = params.delta_r() * am.adjoint() * am +
             params.delta_f() * bm.adjoint() * bm + 0.5 * params.delta_q() * sz.matrix();
  h += params.g_k * (am.adjoint() * bm + bm.adjoint() * am);
  h += params.g * (qm.adjoint() * smm + qm * smm.adjoint());
  if (options.counter_rotating) {
    h += params.g_k * (am.adjoint() * bm.adjoint() + am * bm);
    h += params.g * (qm.adjoint() * smm.adjoint() + qm * smm);
  }

  const Complex drive_scale = kI * std::sqrt(2.0 * params.kappa_f);
  Matrix drive = drive_scale * (params.epsilon_in * port.matrix().adjoint() -
                                std::conj(params.epsilon_in) * port.matrix());
  // Exact Hermitian symmetrisation removes rounding asymmetry.
  drive = 0.5 * (drive + drive.adjoint()).eval();
  h += drive;
  h = 0.5 * (h + h.adjoint()).eval();

  std::vector<CollapseChannel> collapse;
  collapse.push_back({"port", port, params.kappa_f});
  if (params.gamma_s > 0.0) collapse.push_back({"qubit", sm, params.gamma_s});
  if (params.kappa_int > 0.0) {
    collapse.push_back({"readout_int", a, params.kappa_int});
    collapse.push_back({"filter_int", b, params.kappa_int});
  }

  return ModelRealization{
      layout,
      topology,
      Operator(layout, std::move(h), true),
      std::move(collapse),
      Operator(layout, std::move(drive), true),
      a,
      b,
      sm,
      sz,
      topology == Topology::kSysII ? kReadout : kFilter,
      qubit_on_readout ? kReadout : kFilter,
  };
}

Operator excitation_number(const ModelRealization& model) {
  const Matrix& a = model.a.matrix();
  const Matrix& b = model.b.matrix();
  const int n = model.layout.total_dim();
  Matrix m = a.adjoint() * a + b.adjoint() * b +
             0.5 * (model.sigma_z.matrix() + Matrix::Identity(n, n));
  return Operator(model.layout, std::move(m), true);
}

MeanField langevin_rhs(const SystemParams& params, Topology topology,
                       const MeanField& state, const ModelOptions& options) {
  const Complex a = state(kMfA);
  const Complex b = state(kMfB);
  const Complex s = state(kMfSigma);
  const Complex z = state(kMfZ);

  const bool qubit_on_readout =
      topology == Topology::kSysI || options.qubit_via_readout;
  const bool port_is_readout = topology == Topology::kSysII;
  const Complex partner = qubit_on_readout ? a : b;

  const double kappa_a = params.kappa_int + (port_is_readout ? params.kappa_f : 0.0);
  const double kappa_b = params.kappa_int + (port_is_readout ? 0.0 : params.kappa_f);
  const Complex input = std::sqrt(2.0 * params.kappa_f) * params.epsilon_in;

  MeanField d;
  d(kMfA) = -kI * params.delta_r() * a - kI * params.g_k * b - 0.5 * kappa_a * a;
  d(kMfB) = -kI * params.delta_f() * b - kI * params.g_k * a - 0.5 * kappa_b * b;
  if (port_is_readout) {
    d(kMfA) += input;
  } else {
    d(kMfB) += input;
  }
  if (qubit_on_readout) {
    d(kMfA) += -kI * params.g * s;
  } else {
    d(kMfB) += -kI * params.g * s;
  }

  const double sign = options.flipped_qubit_signs ? -1.0 : 1.0;
  d(kMfSigma) = sign * (-kI * params.delta_q() * s + kI * params.g * z * partner);
  d(kMfZ) = -params.gamma_s * (z + 1.0) +
            sign * 2.0 * kI * params.g * (std::conj(partner) * s - partner * std::conj(s));
  return d;
}

PreparedState prepare_initial_state(const ModeDims& dims, const InitialState& init) {
  const SpaceLayout layout = readout_layout(dims);
  if (init.qubit_level < 0 || init.qubit_level > 1) {
    throw InvalidArgument("initial qubit level must be 0 or 1");
  }
  if (init.filter_fock < 0 || init.filter_fock >= dims.filter) {
    throw InvalidArgument("initial filter Fock level exceeds the filter dimension");
  }
  const auto q = basis_ket(SpaceLayout::single(kQubit, 2), std::array{init.qubit_level});
  const auto f = basis_ket(SpaceLayout::single(kFilter, dims.filter),
                           std::array{init.filter_fock});
  const CoherentState r = coherent_state(init.readout_alpha, dims.readout);
  const Vector amps = kron(kron(q.amplitudes(), f.amplitudes()), r.ket.amplitudes());
  return {DensityMatrix(Ket(layout, amps)), r.truncation_weight};
}

}  // namespace purcell
