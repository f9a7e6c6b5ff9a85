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

#include "purcellsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "purcellsim/errors.hpp"
#include "purcellsim/model.hpp"

namespace purcell {

namespace {

constexpr double kPureTol = 1e-10;
constexpr double kPsdTol = 1e-8;

// Eigenvalues below the solver's absolute accuracy are treated as exact zeros;
// their square roots would otherwise leak ~1e-8 into the trace norm.
Matrix psd_sqrt(const Eigen::SelfAdjointEigenSolver<Matrix>& es) {
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const Eigen::VectorXd root =
      es.eigenvalues().unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.layout() == sigma.layout())) {
    throw LayoutMismatch("fidelity: layouts differ");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvalidArgument("fidelity: first argument is not positive semidefinite");
  }
  const Eigen::Index n = es.eigenvalues().size();
  const double largest = es.eigenvalues()(n - 1);
  double f;
  if (largest >= 1.0 - kPureTol) {
    const Vector psi = es.eigenvectors().col(n - 1);
    f = psi.dot(sigma.matrix() * psi).real();
  } else {
    const Eigen::SelfAdjointEigenSolver<Matrix> sigma_es(sigma.matrix());
    if (sigma_es.eigenvalues().minCoeff() < -kPsdTol) {
      throw InvalidArgument("fidelity: second argument is not positive semidefinite");
    }
    // sqrt(F) is the trace norm of sqrt(rho) sqrt(sigma); SVD keeps small singular
    // values accurate in absolute terms.
    const Matrix product = psd_sqrt(es) * psd_sqrt(sigma_es);
    const double t = Eigen::BDCSVD<Matrix>(product).singularValues().sum();
    f = t * t;
  }
  return std::clamp(f, 0.0, 1.0);
}

double average_fidelity(const TimeSeriesResult& series, const DensityMatrix& reference,
                        std::span<const std::string> subsystem) {
  if (series.states.empty()) {
    throw InvalidArgument("average_fidelity: the series carries no stored states");
  }
  double sum = 0.0;
  for (const auto& state : series.states) {
    sum += fidelity(partial_trace(state, subsystem), reference);
  }
  return sum / static_cast<double>(series.states.size());
}

double PhaseSpaceGrid::integral() const {
  if (re_alpha.size() < 2 || im_alpha.size() < 2) return 0.0;
  const double dx = (re_alpha.back() - re_alpha.front()) / (re_alpha.size() - 1);
  const double dy = (im_alpha.back() - im_alpha.front()) / (im_alpha.size() - 1);
  return values.sum() * dx * dy;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw InvalidArgument("linspace: count must be at least 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  out.back() = hi;
  return out;
}

PhaseSpaceGrid husimi_q(const DensityMatrix& rho, std::span<const double> re_axis,
                        std::span<const double> im_axis) {
  if (rho.layout().size() != 1) {
    throw InvalidArgument("husimi_q: single-subsystem state required; partial-trace first");
  }
  const int dim = rho.layout().total_dim();
  PhaseSpaceGrid grid;
  grid.re_alpha.assign(re_axis.begin(), re_axis.end());
  grid.im_alpha.assign(im_axis.begin(), im_axis.end());
  grid.values.resize(static_cast<Eigen::Index>(im_axis.size()),
                     static_cast<Eigen::Index>(re_axis.size()));

  Vector c(dim);
  for (std::size_t iy = 0; iy < im_axis.size(); ++iy) {
    for (std::size_t ix = 0; ix < re_axis.size(); ++ix) {
      const Complex alpha(re_axis[ix], im_axis[iy]);
      c(0) = std::exp(-0.5 * std::norm(alpha));
      for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
      const double q = c.dot(rho.matrix() * c).real() / std::numbers::pi;
      grid.values(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix)) = q;
    }
  }
  return grid;
}

std::vector<double> fock_occupation(const DensityMatrix& rho) {
  if (rho.layout().size() != 1) {
    throw InvalidArgument("fock_occupation: single-subsystem state required");
  }
  const auto& m = rho.matrix();
  std::vector<double> p(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index n = 0; n < m.rows(); ++n) {
    p[static_cast<std::size_t>(n)] = std::clamp(m(n, n).real(), 0.0, 1.0);
  }
  return p;
}

TwoModeCriterion::TwoModeCriterion(const SpaceLayout& layout, const std::string& mode_a,
                                   const std::string& mode_b) {
  for (const auto* label : {&mode_a, &mode_b}) {
    if (*label == kQubit || !layout.contains(*label) || layout.dim_of(*label) < 2) {
      throw InvalidArgument("two_eta: '" + *label + "' is not a bosonic mode of the layout");
    }
  }
  if (mode_a == mode_b) throw InvalidArgument("two_eta: modes must differ");
  const double s = 1.0 / std::numbers::sqrt2;
  const Matrix a = embed(destroy(layout.dim_of(mode_a)), layout, mode_a).matrix();
  const Matrix b = embed(destroy(layout.dim_of(mode_b)), layout, mode_b).matrix();
  x_a_ = s * (a + a.adjoint());
  p_a_ = -kI * s * (a - a.adjoint());
  x_b_ = s * (b + b.adjoint());
  p_b_ = -kI * s * (b - b.adjoint());
  x_sum_ = x_a_ + x_b_;
  p_diff_ = p_a_ - p_b_;
  x_sum_sq_ = x_sum_ * x_sum_;
  p_diff_sq_ = p_diff_ * p_diff_;
  x_a_sq_ = x_a_ * x_a_;
  x_b_sq_ = x_b_ * x_b_;
  p_a_sq_ = p_a_ * p_a_;
  p_b_sq_ = p_b_ * p_b_;
}

EntanglementReading TwoModeCriterion::evaluate(const Matrix& rho) const {
  auto mean = [&rho](const Matrix& op) {
    return op.cwiseProduct(rho.transpose()).sum().real();
  };
  auto variance = [&](const Matrix& op, const Matrix& op_sq) {
    const double m = mean(op);
    return mean(op_sq) - m * m;
  };
  EntanglementReading r;
  r.var_x_sum = variance(x_sum_, x_sum_sq_);
  r.var_p_diff = variance(p_diff_, p_diff_sq_);
  r.var_x_a = variance(x_a_, x_a_sq_);
  r.var_x_b = variance(x_b_, x_b_sq_);
  r.var_p_a = variance(p_a_, p_a_sq_);
  r.var_p_b = variance(p_b_, p_b_sq_);
  // Separable bound Var(x_a+x_b) + Var(p_a-p_b) >= 2 in these units.
  r.two_eta = std::max(0.0, 0.5 * (r.var_x_sum + r.var_p_diff));
  return r;
}

EntanglementReading two_eta(const DensityMatrix& rho, const std::string& mode_a,
                            const std::string& mode_b) {
  return TwoModeCriterion(rho.layout(), mode_a, mode_b).evaluate(rho.matrix());
}

}  // namespace purcell
