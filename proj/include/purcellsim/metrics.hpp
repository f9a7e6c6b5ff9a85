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

#include <span>
#include <string>
#include <vector>

#include "purcellsim/dynamics.hpp"
#include "purcellsim/fockspace.hpp"

namespace purcell {

// Jozsa fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Uniform time average of F(Tr_rest rho(t), reference) over the stored states.
double average_fidelity(const TimeSeriesResult& series, const DensityMatrix& reference,
                        std::span<const std::string> subsystem);

struct PhaseSpaceGrid {
  std::vector<double> re_alpha;
  std::vector<double> im_alpha;
  Eigen::MatrixXd values;  // values(i_im, i_re) = Q(re + i im)

  double integral() const;  // sum Q dA on the uniform grid
};

std::vector<double> linspace(double lo, double hi, int count);

// Q(alpha) = <alpha|rho|alpha> / pi for a single-mode state. The coherent
// projection uses the exact Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for
// n < dim, which is exact for states supported on the truncated space.
PhaseSpaceGrid husimi_q(const DensityMatrix& rho, std::span<const double> re_axis,
                        std::span<const double> im_axis);

std::vector<double> fock_occupation(const DensityMatrix& rho);

struct EntanglementReading {
  double two_eta = 0.0;
  double var_x_sum = 0.0;   // Var(x_a + x_b)
  double var_p_diff = 0.0;  // Var(p_a - p_b)
  double var_x_a = 0.0;
  double var_x_b = 0.0;
  double var_p_a = 0.0;
  double var_p_b = 0.0;
};

inline constexpr const char* kTwoEtaFormula =
    "2eta = [Var(x_a + x_b) + Var(p_a - p_b)] / 2, x = (m + m^+)/sqrt2, "
    "p = -i (m - m^+)/sqrt2; separable states satisfy 2eta >= 1";

// Pre-embedded quadrature operators for repeated evaluation on one layout.
class TwoModeCriterion {
 public:
  TwoModeCriterion(const SpaceLayout& layout, const std::string& mode_a,
                   const std::string& mode_b);
  EntanglementReading evaluate(const Matrix& rho) const;

 private:
  Matrix x_a_, x_b_, p_a_, p_b_, x_sum_, p_diff_;
  Matrix x_sum_sq_, p_diff_sq_, x_a_sq_, x_b_sq_, p_a_sq_, p_b_sq_;
};

EntanglementReading two_eta(const DensityMatrix& rho, const std::string& mode_a,
                            const std::string& mode_b);

}  // namespace purcell
