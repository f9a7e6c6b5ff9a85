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

#include "purcellsim/analytic.hpp"
#include "purcellsim/errors.hpp"

namespace purcell {
namespace {

// Fig 2 detunings in rad/s.
constexpr double kDr = kTwoPi * 0.29e9;
constexpr double kDf = kTwoPi * 0.018e9;
constexpr double kDq = kTwoPi * 0.003e9;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(KappaEffNovel, ZeroDetuningWithoutEmissionIsPeakRate) {
  const auto r = kappa_eff_novel({2.0e6, 1.0e6, 0.0, 0.0, 1.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(r.term1, 4.0 * 4.0e12 / 1.0e6);
  EXPECT_EQ(r.term2, 0.0);
  EXPECT_EQ(r.term2_status, Term2Status::kZeroEmission);
  EXPECT_DOUBLE_EQ(r.total, r.term1);
}

TEST(KappaEffNovel, HalfWidthDetuningHalvesTerm1) {
  const double gk = 3.0e6, kf = 8.0e5;
  const auto on = kappa_eff_novel({gk, kf, 0.0, 0.0, 0.0, 0.0, 0.0});
  const auto half = kappa_eff_novel({gk, kf, 0.5 * kf, 0.0, 0.0, 0.0, 0.0});
  EXPECT_NEAR(half.term1, 0.5 * on.term1, 1e-15 * on.term1);
  EXPECT_NEAR(half.term1, 2.0 * gk * gk / kf, 1e-15 * on.term1);
}

TEST(KappaEffNovel, Fig2Term1Regression) {
  // Independent 30-digit evaluation of (4 g_k^2/k_f)/(1 + (2 dr/k_f)^2).
  const auto r = kappa_eff_novel({0.08 * kDr, 0.002 * kDr, kDr, 0.0, kDq, 0.01 * kDq, 1.0});
  EXPECT_LT(rel(r.term1, 23323.16053709008791), 1e-13);
}

TEST(KappaEffNovel, NonPositiveKappaIsInvalidRate) {
  EXPECT_THROW(kappa_eff_novel({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}), InvalidRate);
  EXPECT_THROW(kappa_eff_novel({1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0}), InvalidRate);
}

TEST(KappaEffNovel, NoFilterPhotonsFlagsUndefinedTerm2) {
  const auto r = kappa_eff_novel({1.0, 1.0, 0.0, 1e4, 1e6, 1e5, 0.0});
  EXPECT_EQ(r.term2_status, Term2Status::kUndefinedNoPhotons);
  EXPECT_TRUE(std::isinf(r.term2));
}

TEST(KappaEffNovel, Term2Limits) {
  const double gs = 1e4, dq = 1e7, nf = 0.5;
  const auto strong = kappa_eff_novel({1.0, 1.0, 0.0, gs, dq, 1e12, nf});
  EXPECT_LT(rel(strong.term2, gs / nf), 1e-9);
  const auto weak = kappa_eff_novel({1.0, 1.0, 0.0, gs, dq, 1e-3, nf});
  EXPECT_LT(weak.term2, 1e-20);
  const auto zero = kappa_eff_novel({1.0, 1.0, 0.0, gs, dq, 0.0, nf});
  EXPECT_EQ(zero.term2_status, Term2Status::kZeroCouplingLimit);
  EXPECT_EQ(zero.term2, 0.0);
}

TEST(KappaEffNovel, Term1EvenAndDecreasingInDetuning) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double gk = u(rng) * 1e6, kf = u(rng) * 1e5;
    const double d1 = u(rng) * 1e6;
    const double d2 = d1 * (1.0 + u(rng));
    const double t1 = kappa_eff_novel({gk, kf, d1, 0, 0, 0, 0}).term1;
    EXPECT_EQ(t1, kappa_eff_novel({gk, kf, -d1, 0, 0, 0, 0}).term1);
    EXPECT_LT(kappa_eff_novel({gk, kf, d2, 0, 0, 0, 0}).term1, t1);
  }
}

TEST(KappaEffTraditional, MirrorsNovelTerm1) {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double gk = std::abs(u(rng)) * 1e6, kf = std::abs(u(rng)) * 1e5 + 1.0;
    const double d = u(rng) * 1e7;
    EXPECT_EQ(kappa_eff_traditional(gk, kf, d), kappa_eff_novel({gk, kf, d, 0, 0, 0, 0}).term1);
  }
  EXPECT_DOUBLE_EQ(kappa_eff_traditional(1e6, 2e5, 0.0), 4.0 * 1e12 / 2e5);
  EXPECT_THROW(kappa_eff_traditional(1.0, 0.0, 0.0), InvalidRate);
}

TEST(KappaEffTraditional, Fig2RegressionAndRatio) {
  const double gk = 0.08 * kDr, kf = 0.002 * kDr;
  const double trad = kappa_eff_traditional(gk, kf, kDf);
  EXPECT_LT(rel(trad, 6052378.881429473284), 1e-13);
  const double ratio = kappa_eff_novel({gk, kf, kDr, 0, 0, 0, 0}).term1 / trad;
  EXPECT_LT(rel(ratio, 0.003853552626827872578), 1e-13);
  const double x_f = 2 * kDf / kf, x_r = 2 * kDr / kf;
  EXPECT_LT(rel(ratio, (1 + x_f * x_f) / (1 + x_r * x_r)), 1e-13);
}

TEST(DispersiveShift, UncoupledHasNoShift) {
  const auto s = dispersive_shift(0.0, 3.0e9, 1.0e8);
  EXPECT_EQ(s.two_chi, 0.0);
  EXPECT_EQ(s.omega_r_ground, 3.0e9);
}

TEST(DispersiveShift, ZeroFilterDetuningReduces) {
  const double gk = 1e7, dr = 2e9;
  const auto s = dispersive_shift(gk, dr, 0.0);
  EXPECT_NEAR(s.two_chi, -gk * gk / dr, 1e-12 * gk * gk / dr);
  EXPECT_NEAR(two_chi_printed(gk, dr, 0.0), gk * gk / dr, 1e-12 * gk * gk / dr);
}

TEST(DispersiveShift, Fig2Regression) {
  const double gk = 0.08 * kDr;
  const auto s = dispersive_shift(gk, kDr, kDf);
  EXPECT_LT(rel(s.omega_r_ground, 1834557054.007581331), 1e-14);
  EXPECT_LT(rel(s.omega_r_excited, 1823576983.683762043), 1e-14);
  EXPECT_LT(rel(two_chi_printed(gk, kDr, kDf), 10980070.32381928774), 1e-14);
  EXPECT_LT(rel(s.two_chi, -10980070.32381928774), 1e-12);
  EXPECT_LT(rel(s.two_chi, s.omega_r_excited - s.omega_r_ground), 1e-12);
}

TEST(DispersiveShift, PoleProximityNamesBranch) {
  try {
    dispersive_shift(1e6, 1e9, 1e9 + 10.0);
    FAIL();
  } catch (const PoleError& e) {
    EXPECT_EQ(e.branch(), "ground");
  }
  try {
    dispersive_shift(1e6, 1e9, -1e9 + 10.0);
    FAIL();
  } catch (const PoleError& e) {
    EXPECT_EQ(e.branch(), "excited");
  }
}

SystemParams detuned(double dr, double df, double dq, double gk, double g) {
  SystemParams p;
  p.omega_d = 1.0e10;
  p.omega_r = p.omega_d + dr;
  p.omega_f = p.omega_d + df;
  p.omega_q = p.omega_d + dq;
  p.g_k = gk;
  p.g = g;
  return p;
}

TEST(DispersiveShiftNumeric, UncoupledBranchesAreBareDetuning) {
  const auto n = dispersive_shift_numeric(detuned(kDr, kDf, kDq, 0, 0), Topology::kSysII,
                                          ModeDims{3, 3});
  EXPECT_NEAR(n.shift.omega_r_ground, kDr, 1e-6);
  EXPECT_NEAR(n.shift.omega_r_excited, kDr, 1e-6);
  EXPECT_DOUBLE_EQ(n.min_overlap, 1.0);
}

TEST(DispersiveShiftNumeric, DecoupledQubitGivesNoStateDependentShift) {
  const double gk = 0.03 * (kDr - kDf);
  const auto n = dispersive_shift_numeric(detuned(kDr, kDf, kDq, gk, 0), Topology::kSysII,
                                          ModeDims{4, 4});
  EXPECT_LE(std::abs(n.shift.two_chi), 1e-6 * kDr);
}

TEST(DispersiveShiftNumeric, GroundPullConvergesToPerturbativeForm) {
  double previous = 1.0;
  for (double ratio : {0.1, 0.03, 0.01}) {
    const double gk = ratio * (kDr - kDf);
    const auto n = dispersive_shift_numeric(detuned(kDr, kDf, kDq, gk, 0), Topology::kSysII,
                                            ModeDims{4, 4});
    const double pull = n.shift.omega_r_ground - kDr;
    const double expected = gk * gk / (kDr - kDf);
    const double err = rel(pull, expected);
    EXPECT_LT(err, 0.05);
    EXPECT_LT(err, previous);
    previous = err;
  }
}

TEST(DispersiveShiftNumeric, RequiresThreeLevelsPerMode) {
  EXPECT_THROW(dispersive_shift_numeric(detuned(kDr, kDf, kDq, 1e6, 0), Topology::kSysII,
                                        ModeDims{2, 3}),
               InvalidDimension);
}

TEST(DispersiveShiftNumeric, StrongHybridisationIsNonDispersive) {
  // All three modes degenerate and strongly coupled: no dressed state is mostly bare.
  EXPECT_THROW(dispersive_shift_numeric(detuned(kDr, kDr, kDr, 1e8, 1e8), Topology::kSysII,
                                        ModeDims{3, 3}),
               NonDispersiveRegime);
}

TEST(NCrit, ClosedFormAndScaling) {
  EXPECT_DOUBLE_EQ(n_crit(1.0, 2.0).value, 1.0);
  EXPECT_NEAR(n_crit(0.01 * kDq, kDq).value, 2500.0, 1e-9);
  EXPECT_NEAR(n_crit(2e5, 3e7).value, 0.25 * n_crit(1e5, 3e7).value, 1e-12);
  const auto inf = n_crit(0.0, 1e7);
  EXPECT_TRUE(inf.infinite);
  EXPECT_TRUE(std::isinf(inf.value));
}

}  // namespace
}  // namespace purcell
