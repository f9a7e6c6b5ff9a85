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
#include <random>

#include "purcellsim/config.hpp"
#include "purcellsim/errors.hpp"
#include "purcellsim/metrics.hpp"
#include "purcellsim/network.hpp"

namespace purcell {
namespace {

LinearCircuit single_mode(double f0_hz, double kappa_ext_hz, double kappa_int_hz) {
  LinearCircuit c;
  c.labels = {"mode"};
  c.omega = Eigen::VectorXd::Constant(1, kTwoPi * f0_hz);
  c.rates = Eigen::VectorXd::Constant(1, kTwoPi * kappa_int_hz);
  c.coupling = Matrix::Zero(1, 1);
  c.port = 0;
  c.kappa_ext = kTwoPi * kappa_ext_hz;
  return c;
}

SystemParams appendix() { return preset_config("appendix").params.to_system(); }

TEST(Linearize, UncoupledSystemMatrixIsDiagonal) {
  SystemParams p = appendix();
  p.g = p.g_k = 0.0;
  const Matrix a = linearize(p, Topology::kSysII).system_matrix();
  Matrix off = a;
  off.diagonal().setZero();
  EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Linearize, QubitOnlyAddsItsRowAndColumn) {
  const auto with = linearize(appendix(), Topology::kSysII, {true, true});
  const auto without = linearize(appendix(), Topology::kSysII, {false, true});
  ASSERT_EQ(with.size(), 3);
  ASSERT_EQ(without.size(), 2);
  EXPECT_EQ(with.system_matrix().topLeftCorner(2, 2), without.system_matrix());
  EXPECT_EQ(with.labels.back(), kQubit);
}

TEST(Linearize, PortAndQubitPartnerFollowTopology) {
  const auto s2 = linearize(appendix(), Topology::kSysII);
  EXPECT_EQ(s2.labels[s2.port], kReadout);
  EXPECT_NE(s2.coupling(s2.index_of(kQubit), s2.index_of(kFilter)), 0.0);
  EXPECT_EQ(s2.coupling(s2.index_of(kQubit), s2.index_of(kReadout)), 0.0);
  const auto s1 = linearize(appendix(), Topology::kSysI);
  EXPECT_EQ(s1.labels[s1.port], kFilter);
  EXPECT_NE(s1.coupling(s1.index_of(kQubit), s1.index_of(kReadout)), 0.0);
  const auto bare = linearize(appendix(), Topology::kSysII, {true, false});
  EXPECT_EQ(bare.labels, (std::vector<std::string>{kReadout, kQubit}));
  EXPECT_EQ(bare.labels[bare.port], kReadout);
}

TEST(Linearize, EigenvaluesAreStableForRandomPhysicalInputs) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    SystemParams p;
    p.omega_r = kTwoPi * (6.0e9 + 1e9 * u(rng));
    p.omega_f = kTwoPi * (6.0e9 + 1e9 * u(rng));
    p.omega_q = kTwoPi * (6.0e9 + 1e9 * u(rng));
    p.g_k = kTwoPi * 5e7 * u(rng);
    p.g = kTwoPi * 5e7 * u(rng);
    p.kappa_f = kTwoPi * 1e7 * u(rng);
    p.gamma_s = kTwoPi * 1e5 * u(rng);
    p.kappa_int = kTwoPi * 1e5 * u(rng);
    const auto topo = trial % 2 ? Topology::kSysI : Topology::kSysII;
    const Eigen::ComplexEigenSolver<Matrix> es(linearize(p, topo).system_matrix());
    EXPECT_LE(es.eigenvalues().real().maxCoeff(), 1e-9 * p.omega_r);
  }
}

TEST(S21, TransparentFarFromResonance) {
  const auto s = s21(single_mode(6e9, 5e6, 1e5), {4e9, 8e9});
  for (auto v : s.s21) EXPECT_NEAR(std::abs(v), 1.0, 1e-3);
}

TEST(S21, LosslessNotchExtinguishesOnResonance) {
  const auto s = s21(single_mode(6e9, 5e6, 0.0), {6e9});
  EXPECT_LT(std::abs(s.s21[0]), 1e-12);
}

TEST(S21, SingleModeMatchesTextbookNotch) {
  const double f0 = 6e9, ke = 4e6, ki = 1e6;
  const std::vector<double> freqs = linspace(f0 - 2e7, f0 + 2e7, 41);
  const auto s = s21(single_mode(f0, ke, ki), freqs);
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const Complex expected =
        1.0 - (kTwoPi * ke / 2.0) /
                  Complex(0.5 * kTwoPi * (ke + ki), kTwoPi * (f0 - freqs[k]));
    EXPECT_LT(std::abs(s.s21[k] - expected), 1e-9);
    EXPECT_NEAR(s.magnitude_db[k], 20.0 * std::log10(std::abs(s.s21[k])), 1e-12);
  }
}

TEST(S21, UndampedPoleIsFlaggedNotFatal) {
  const auto s = s21(single_mode(6e9, 0.0, 0.0), {5.9e9, 6e9, 6.1e9});
  EXPECT_FALSE(s.singular[0]);
  EXPECT_TRUE(s.singular[1]);
  EXPECT_TRUE(std::isnan(s.magnitude_db[1]));
  EXPECT_FALSE(s.singular[2]);
}

TEST(S21, EmptyFrequencyListThrows) {
  EXPECT_THROW(s21(single_mode(6e9, 1e6, 0), {}), InvalidArgument);
}

TEST(S21, PassiveOnRandomCircuits) {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    SystemParams p = appendix();
    p.g = kTwoPi * 3e7 * u(rng);
    p.g_k = kTwoPi * 3e7 * u(rng);
    p.kappa_f = kTwoPi * 2e7 * u(rng);
    p.kappa_int = kTwoPi * 1e6 * u(rng);
    const auto s = s21(linearize(p, trial % 2 ? Topology::kSysI : Topology::kSysII),
                       linspace(5.9e9, 7.0e9, 2001));
    for (auto v : s.s21) EXPECT_LE(std::abs(v), 1.0 + 1e-9);
  }
}

TEST(S21, InvariantUnderRelabellingNonPortModes) {
  const auto c = linearize(appendix(), Topology::kSysII);
  // Swap filter (1) and qubit (2); the port stays at index 0.
  Eigen::PermutationMatrix<3> perm;
  perm.indices() << 0, 2, 1;
  LinearCircuit swapped = c;
  swapped.labels = {c.labels[0], c.labels[2], c.labels[1]};
  swapped.omega = perm * c.omega;
  swapped.rates = perm * c.rates;
  swapped.coupling = perm * c.coupling * perm.transpose();
  const auto freqs = linspace(6.05e9, 6.8e9, 3001);
  const auto x = s21(c, freqs), y = s21(swapped, freqs);
  for (std::size_t k = 0; k < freqs.size(); ++k) EXPECT_LT(std::abs(x.s21[k] - y.s21[k]), 1e-12);
}

TEST(S21, WeakQubitCouplingApproachesTwoModeSpectrum) {
  SystemParams p = appendix();
  p.g = 1e-6 * std::abs(p.omega_q - p.omega_d);
  const auto freqs = linspace(6.0e9, 6.9e9, 9001);
  const auto three = s21(linearize(p, Topology::kSysII, {true, true}), freqs);
  const auto two = s21(linearize(p, Topology::kSysII, {false, true}), freqs);
  double worst = 0.0;
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    worst = std::max(worst, std::abs(three.s21[k] - two.s21[k]));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(NormalModes, SingleModeFrequency) {
  const auto f = normal_mode_frequencies_hz(single_mode(6e9, 1e6, 0));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_NEAR(f[0], 6e9, 1e-3);
}

TEST(ResonanceGrid, IncludesNormalModesInsideWindow) {
  const auto c = single_mode(6.00001234e9, 1e6, 0);
  const auto grid = resonance_grid(c, 5.9e9, 6.1e9, 11);
  EXPECT_EQ(grid.size(), 12u);
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
  EXPECT_NE(std::find(grid.begin(), grid.end(), normal_mode_frequencies_hz(c)[0]), grid.end());
}

TEST(DipReport, FlatSpectrumHasZeroDepth) {
  Spectrum s;
  s.freqs_hz = linspace(1.0, 2.0, 11);
  s.s21.assign(11, 1.0);
  s.magnitude_db.assign(11, 0.0);
  s.singular.assign(11, false);
  EXPECT_EQ(dip_report(s, 1.0, 2.0).depth_db, 0.0);
}

TEST(DipReport, SingleNotchFoundWithinOneStep) {
  const double f0 = 6.0003e9;
  const auto freqs = linspace(5.99e9, 6.01e9, 2001);
  const auto s = s21(single_mode(f0, 2e6, 1e5), freqs);
  const auto rep = dip_report(s, 5.99e9, 6.01e9);
  EXPECT_LE(std::abs(rep.freq_hz - f0), freqs[1] - freqs[0]);
  EXPECT_GT(rep.depth_db, 10.0);
}

TEST(DipReport, EmptyWindowThrows) {
  const auto s = s21(single_mode(6e9, 1e6, 0), linspace(5.9e9, 6.1e9, 5));
  EXPECT_THROW(dip_report(s, 7e9, 8e9), InvalidArgument);
}

TEST(AppendixSpectrum, FilterSuppressesQubitDipButKeepsReadout) {
  const SystemParams p = appendix();
  const auto off = linearize(p, Topology::kSysII, {true, false});
  const auto on = linearize(p, Topology::kSysII, {true, true});
  const double fq = p.omega_q / kTwoPi, fr = p.omega_r / kTwoPi, w = 20e6;
  auto depth = [&](const LinearCircuit& c, double centre) {
    const auto grid = resonance_grid(c, centre - w, centre + w, 4001);
    return dip_report(s21(c, grid), centre - w, centre + w).depth_db;
  };
  EXPECT_LT(depth(on, fq), depth(off, fq));
  EXPECT_LT(std::abs(depth(on, fr) - depth(off, fr)), 0.1 * depth(off, fr));
}

}  // namespace
}  // namespace purcell
