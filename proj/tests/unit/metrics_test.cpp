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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "purcellsim/dynamics.hpp"
#include "purcellsim/errors.hpp"
#include "purcellsim/metrics.hpp"
#include "purcellsim/model.hpp"
#include "test_util.hpp"

namespace purcell {
namespace {

DensityMatrix qubit_state(const Matrix& m) { return DensityMatrix(SpaceLayout::single("q", 2), m); }

TEST(Fidelity, StateWithItselfIsOne) {
  std::mt19937 rng(1);
  for (int dim : {2, 5, 9}) {
    const DensityMatrix rho(SpaceLayout::single("m", dim), testing::random_density_matrix(dim, rng));
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  }
}

TEST(Fidelity, OrthogonalPureStatesGiveZero) {
  const auto l = SpaceLayout::single("q", 2);
  EXPECT_NEAR(fidelity(DensityMatrix(basis_ket(l, std::array{0})),
                       DensityMatrix(basis_ket(l, std::array{1}))),
              0.0, 1e-15);
}

TEST(Fidelity, PureAgainstMaximallyMixedIsHalf) {
  const auto l = SpaceLayout::single("q", 2);
  const DensityMatrix mixed = qubit_state(0.5 * Matrix::Identity(2, 2));
  EXPECT_NEAR(fidelity(DensityMatrix(basis_ket(l, std::array{0})), mixed), 0.5, 1e-12);
  EXPECT_NEAR(fidelity(mixed, DensityMatrix(basis_ket(l, std::array{0}))), 0.5, 1e-12);
}

TEST(Fidelity, RejectsLayoutMismatch) {
  const DensityMatrix a(basis_ket(SpaceLayout::single("q", 2), std::array{0}));
  const DensityMatrix b(basis_ket(SpaceLayout::single("m", 2), std::array{0}));
  EXPECT_THROW(fidelity(a, b), LayoutMismatch);
}

TEST(Fidelity, SymmetricOnRandomPairs) {
  std::mt19937 rng(2);
  const auto l = SpaceLayout::single("m", 6);
  for (int trial = 0; trial < 40; ++trial) {
    const int rank = 1 + trial % 6;
    const DensityMatrix r(l, testing::random_density_matrix(6, rng, rank));
    const DensityMatrix s(l, testing::random_density_matrix(6, rng));
    EXPECT_NEAR(fidelity(r, s), fidelity(s, r), 1e-9);
  }
}

TEST(Fidelity, UnitarilyInvariant) {
  std::mt19937 rng(3);
  const auto l = SpaceLayout::single("m", 5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix r = testing::random_density_matrix(5, rng);
    const Matrix s = testing::random_density_matrix(5, rng, 2);
    const Matrix u = testing::random_unitary(5, rng);
    const Matrix ur = u * r * u.adjoint(), us = u * s * u.adjoint();
    EXPECT_NEAR(fidelity(DensityMatrix(l, r), DensityMatrix(l, s)),
                fidelity(DensityMatrix(l, 0.5 * (ur + ur.adjoint())),
                         DensityMatrix(l, 0.5 * (us + us.adjoint()))),
                1e-9);
  }
}

TEST(Fidelity, PureFastPathMatchesGeneralFormula) {
  std::mt19937 rng(4);
  const auto l = SpaceLayout::single("m", 4);
  const Vector psi = testing::random_unit_vector(4, rng);
  const Matrix sigma = testing::random_density_matrix(4, rng);
  const double fast = fidelity(DensityMatrix(Ket(l, psi)), DensityMatrix(l, sigma));
  EXPECT_NEAR(fast, psi.dot(sigma * psi).real(), 1e-12);
  // Mixed first argument forces the square-root route; F is symmetric.
  EXPECT_NEAR(fidelity(DensityMatrix(l, sigma), DensityMatrix(Ket(l, psi))), fast, 1e-9);
}

TEST(AverageFidelity, FrozenStateAveragesToOne) {
  const auto model = build_model(SystemParams{}, Topology::kSysII, ModeDims{2, 3});
  const auto init = prepare_initial_state(ModeDims{2, 3}, InitialState{0, 0, Complex(0.5, 0.2)});
  EvolutionConfig c;
  c.t_end = 1e-7;
  c.n_steps = 11;
  c.store_states = true;
  const auto r = evolve_lindblad(model, init.rho, c);
  const std::vector<std::string> keep{kReadout};
  EXPECT_NEAR(average_fidelity(r, partial_trace(init.rho, keep), keep), 1.0, 1e-6);
}

TEST(AverageFidelity, RequiresStoredStates) {
  TimeSeriesResult empty;
  const DensityMatrix ref(basis_ket(SpaceLayout::single(kQubit, 2), std::array{0}));
  const std::vector<std::string> keep{kQubit};
  EXPECT_THROW(average_fidelity(empty, ref, keep), InvalidArgument);
}

TEST(HusimiQ, VacuumIsGaussian) {
  const DensityMatrix vac(basis_ket(SpaceLayout::single("m", 20), std::array{0}));
  const auto axis = linspace(-2.0, 2.0, 21);
  const auto q = husimi_q(vac, axis, axis);
  EXPECT_NEAR(q.values(10, 10), 1.0 / std::numbers::pi, 1e-15);
  for (int iy = 0; iy < 21; ++iy) {
    for (int ix = 0; ix < 21; ++ix) {
      const double r2 = axis[ix] * axis[ix] + axis[iy] * axis[iy];
      if (r2 > 4.0) continue;
      EXPECT_NEAR(q.values(iy, ix), std::exp(-r2) / std::numbers::pi, 1e-12);
    }
  }
}

TEST(HusimiQ, CoherentStatePeaksAtNearestCell) {
  const Complex beta(1.1, -0.6);
  const auto c = coherent_state(beta, 30);
  const auto axis = linspace(-3.0, 3.0, 61);
  const auto q = husimi_q(DensityMatrix(c.ket), axis, axis);
  Eigen::Index iy, ix;
  q.values.maxCoeff(&iy, &ix);
  EXPECT_NEAR(axis[ix], beta.real(), 0.05 + 1e-12);
  EXPECT_NEAR(axis[iy], beta.imag(), 0.05 + 1e-12);
}

TEST(HusimiQ, NonNegativeAndNormalisedForContainedStates) {
  std::mt19937 rng(9);
  const auto l = SpaceLayout::single("m", 6);
  const auto axis = linspace(-6.0, 6.0, 121);
  for (int trial = 0; trial < 5; ++trial) {
    const auto q = husimi_q(DensityMatrix(l, testing::random_density_matrix(6, rng)), axis, axis);
    EXPECT_GE(q.values.minCoeff(), -1e-12);
    EXPECT_LE(q.integral(), 1.0 + 0.02);
    EXPECT_GT(q.integral(), 0.98);
  }
}

TEST(HusimiQ, RejectsMultiSubsystemInput) {
  const DensityMatrix rho(basis_ket(SpaceLayout({2, 2}, {"a", "b"}), std::array{0, 0}));
  const auto axis = linspace(-1.0, 1.0, 3);
  EXPECT_THROW(husimi_q(rho, axis, axis), InvalidArgument);
}

TEST(FockOccupation, VacuumAndPoissonWeights) {
  const auto vac = fock_occupation(DensityMatrix(basis_ket(SpaceLayout::single("m", 4), std::array{0})));
  EXPECT_EQ(vac, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));

  const Complex alpha(1.0, 1.0);  // |alpha|^2 = 2
  const auto p = fock_occupation(DensityMatrix(coherent_state(alpha, 40).ket));
  double poisson = std::exp(-2.0);
  for (int n = 0; n < 10; ++n) {
    EXPECT_NEAR(p[n], poisson, 1e-12);
    poisson *= 2.0 / (n + 1);
  }
}

TEST(FockOccupation, SumsToTraceOnRandomStates) {
  std::mt19937 rng(10);
  for (int dim : {2, 5, 11}) {
    const auto p = fock_occupation(
        DensityMatrix(SpaceLayout::single("m", dim), testing::random_density_matrix(dim, rng)));
    double sum = 0.0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

SpaceLayout two_modes(int dim) { return SpaceLayout({dim, dim}, {"filter", "readout"}); }

TEST(TwoEta, VacuumSitsOnSeparableBoundary) {
  const DensityMatrix vac(basis_ket(two_modes(6), std::array{0, 0}));
  const auto r = two_eta(vac, "readout", "filter");
  EXPECT_NEAR(r.two_eta, 1.0, 1e-12);
  EXPECT_NEAR(r.var_x_a, 0.5, 1e-12);
  EXPECT_NEAR(r.var_p_b, 0.5, 1e-12);
}

TEST(TwoEta, ProductOfCoherentStatesIsOne) {
  const int dim = 30;
  const Ket a = coherent_state(Complex(0.8, -0.3), dim).ket;
  const Ket b = coherent_state(Complex(-0.4, 0.6), dim).ket;
  const DensityMatrix rho(Ket(two_modes(dim), kron(a.amplitudes(), b.amplitudes())));
  EXPECT_NEAR(two_eta(rho, "readout", "filter").two_eta, 1.0, 1e-9);
}

TEST(TwoEta, TwoModeSqueezedVacuumFallsBelowOne) {
  const int dim = 15;
  const double r = 0.2;
  const auto layout = two_modes(dim);
  const Matrix a = embed(destroy(dim), layout, "filter").matrix();
  const Matrix b = embed(destroy(dim), layout, "readout").matrix();
  const Matrix gen = r * (a * b - a.adjoint() * b.adjoint());
  const Matrix s = gen.exp();
  const Vector psi = s.col(0);
  const DensityMatrix rho(Ket(layout, psi / psi.norm()));
  const double value = two_eta(rho, "filter", "readout").two_eta;
  EXPECT_LT(value, 1.0);
  EXPECT_NEAR(value, std::exp(-2.0 * r), 0.02 * std::exp(-2.0 * r));
}

TEST(TwoEta, InvariantUnderEqualDisplacements) {
  const int dim = 30;
  const auto layout = two_modes(dim);
  const Matrix a = embed(destroy(dim), layout, "filter").matrix();
  const Matrix b = embed(destroy(dim), layout, "readout").matrix();
  const Vector tmsv = (0.15 * (a * b - a.adjoint() * b.adjoint())).exp().col(0);
  const Complex beta(0.3, 0.2);
  const Matrix d = (beta * (a.adjoint() + b.adjoint()) - std::conj(beta) * (a + b)).exp();
  const Vector shifted = d * tmsv;
  const double base = two_eta(DensityMatrix(Ket(layout, tmsv / tmsv.norm())), "filter", "readout").two_eta;
  const double moved =
      two_eta(DensityMatrix(Ket(layout, shifted / shifted.norm())), "filter", "readout").two_eta;
  EXPECT_NEAR(moved, base, 1e-6);
}

TEST(TwoEta, RejectsNonBosonicLabels) {
  const DensityMatrix rho(basis_ket(readout_layout(ModeDims{2, 2}), std::array{0, 0, 0}));
  EXPECT_THROW(two_eta(rho, kQubit, kReadout), InvalidArgument);
  EXPECT_THROW(two_eta(rho, "missing", kReadout), InvalidArgument);
  EXPECT_THROW(two_eta(rho, kReadout, kReadout), InvalidArgument);
}

}  // namespace
}  // namespace purcell
