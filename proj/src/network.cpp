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

#include "purcellsim/network.hpp"

#include <algorithm>
#include <cmath>

#include "purcellsim/errors.hpp"
#include "purcellsim/metrics.hpp"

namespace purcell {

int LinearCircuit::index_of(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InvalidArgument("circuit has no mode '" + label + "'");
  return static_cast<int>(it - labels.begin());
}

void LinearCircuit::validate() const {
  const Eigen::Index n = omega.size();
  if (n == 0) throw InvalidArgument("circuit has no modes");
  if (rates.size() != n || coupling.rows() != n || coupling.cols() != n ||
      static_cast<Eigen::Index>(labels.size()) != n) {
    throw InvalidDimension("circuit arrays disagree in size");
  }
  if (port < 0 || port >= n) throw InvalidArgument("circuit port index out of range");
  if (!(kappa_ext >= 0.0)) throw InvalidRate("kappa_ext must be non-negative");
  if ((rates.array() < 0.0).any() || !rates.allFinite()) {
    throw InvalidRate("circuit rates must be non-negative and finite");
  }
  if (hermiticity_defect(coupling) > 1e-12 * std::max(1.0, max_abs(coupling))) {
    throw InvalidArgument("coupling matrix is not Hermitian");
  }
}

Matrix LinearCircuit::system_matrix() const {
  Eigen::VectorXd damping = rates;
  damping(port) += kappa_ext;
  Matrix a = -kI * coupling;
  for (Eigen::Index k = 0; k < omega.size(); ++k) {
    a(k, k) += -kI * omega(k) - 0.5 * damping(k);
  }
  return a;
}

LinearCircuit linearize(const SystemParams& params, Topology topology,
                        const LinearizeOptions& options) {
  params.validate();
  LinearCircuit c;
  std::vector<double> omega, rates;
  auto add = [&](const std::string& label, double w, double rate) {
    c.labels.push_back(label);
    omega.push_back(w);
    rates.push_back(rate);
  };
  add(kReadout, params.omega_r, params.kappa_int);
  if (options.include_filter) add(kFilter, params.omega_f, params.kappa_int);
  if (options.include_qubit) add(kQubit, params.omega_q, params.gamma_s);

  const int n = static_cast<int>(omega.size());
  c.omega = Eigen::Map<Eigen::VectorXd>(omega.data(), n);
  c.rates = Eigen::Map<Eigen::VectorXd>(rates.data(), n);
  c.coupling = Matrix::Zero(n, n);
  auto couple = [&](const std::string& x, const std::string& y, double strength) {
    const int i = c.index_of(x), j = c.index_of(y);
    c.coupling(i, j) = strength;
    c.coupling(j, i) = strength;
  };

  std::string port = kReadout;
  std::string partner = kReadout;
  if (options.include_filter) {
    couple(kReadout, kFilter, params.g_k);
    const bool sys2 = topology == Topology::kSysII;
    port = sys2 ? kReadout : kFilter;
    partner = sys2 ? kFilter : kReadout;
  }
  if (options.include_qubit) couple(kQubit, partner, params.g);
  c.port = c.index_of(port);
  c.kappa_ext = params.kappa_f;
  c.validate();
  return c;
}

Spectrum s21(const LinearCircuit& circuit, const std::vector<double>& freqs_hz) {
  circuit.validate();
  if (freqs_hz.empty()) throw InvalidArgument("s21: empty frequency vector");
  const Matrix a = circuit.system_matrix();
  const Eigen::Index n = a.rows();
  const Eigen::Index p = circuit.port;
  Spectrum out;
  out.freqs_hz = freqs_hz;
  out.s21.resize(freqs_hz.size());
  out.magnitude_db.resize(freqs_hz.size());
  out.singular.assign(freqs_hz.size(), false);

  Vector rhs = Vector::Zero(n);
  rhs(p) = 1.0;
  for (std::size_t k = 0; k < freqs_hz.size(); ++k) {
    const double w = kTwoPi * freqs_hz[k];
    Matrix m = -a;
    m.diagonal().array() -= kI * w;
    const Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) {
      out.singular[k] = true;
      out.s21[k] = Complex(std::nan(""), std::nan(""));
      out.magnitude_db[k] = std::nan("");
      continue;
    }
    const Complex resp = lu.solve(rhs)(p);
    const Complex s = 1.0 - 0.5 * circuit.kappa_ext * resp;
    out.s21[k] = s;
    out.magnitude_db[k] = 20.0 * std::log10(std::abs(s));
  }
  return out;
}

std::vector<double> normal_mode_frequencies_hz(const LinearCircuit& circuit) {
  const Eigen::ComplexEigenSolver<Matrix> es(circuit.system_matrix(), false);
  std::vector<double> f;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    f.push_back(-es.eigenvalues()(k).imag() / kTwoPi);
  }
  std::sort(f.begin(), f.end());
  return f;
}

std::vector<double> resonance_grid(const LinearCircuit& circuit, double lo_hz, double hi_hz,
                                   int points) {
  std::vector<double> grid = linspace(lo_hz, hi_hz, points);
  for (double f : normal_mode_frequencies_hz(circuit)) {
    if (f > lo_hz && f < hi_hz) grid.push_back(f);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

DipReport dip_report(const Spectrum& spectrum, double lo_hz, double hi_hz) {
  std::vector<std::size_t> inside;
  for (std::size_t k = 0; k < spectrum.freqs_hz.size(); ++k) {
    const double f = spectrum.freqs_hz[k];
    if (f >= lo_hz && f <= hi_hz && !spectrum.singular[k]) inside.push_back(k);
  }
  if (inside.empty()) throw InvalidArgument("dip_report: no samples inside the window");

  DipReport rep;
  std::size_t best = inside.front();
  for (std::size_t k : inside) {
    if (spectrum.magnitude_db[k] < spectrum.magnitude_db[best]) best = k;
  }
  rep.freq_hz = spectrum.freqs_hz[best];
  rep.min_db = spectrum.magnitude_db[best];

  const std::size_t edge = std::max<std::size_t>(1, inside.size() / 20);
  std::vector<double> edges;
  for (std::size_t k = 0; k < edge; ++k) {
    edges.push_back(spectrum.magnitude_db[inside[k]]);
    edges.push_back(spectrum.magnitude_db[inside[inside.size() - 1 - k]]);
  }
  rep.baseline_db = median(edges);
  rep.depth_db = std::max(0.0, rep.baseline_db - rep.min_db);
  return rep;
}

}  // namespace purcell
