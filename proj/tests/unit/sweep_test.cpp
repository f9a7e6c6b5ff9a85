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
#include <cstring>

#include "purcellsim/config.hpp"
#include "purcellsim/errors.hpp"
#include "purcellsim/sweep.hpp"

namespace purcell {
namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.base = preset_config("fig2").params.to_system();
  s.parameter = SweepParameter::kDeltaR;
  s.min = -kTwoPi * 0.4e9;
  s.max = kTwoPi * 0.4e9;
  s.count = 5;
  s.t_end = 2.0e-8;
  s.time_count = 21;
  s.dims = ModeDims{2, 3};
  s.metrics = {SweepMetric::kFidelityResonator, SweepMetric::kTwoEta};
  return s;
}

bool bit_identical(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  return x.rows() == y.rows() && x.cols() == y.cols() &&
         std::memcmp(x.data(), y.data(), sizeof(double) * x.size()) == 0;
}

TEST(SweepNames, RoundTrip) {
  for (auto m : {SweepMetric::kFidelityResonator, SweepMetric::kFidelityQubit,
                 SweepMetric::kTwoEta}) {
    EXPECT_EQ(sweep_metric_from_string(to_string(m)), m);
  }
  EXPECT_EQ(sweep_parameter_from_string("delta_q"), SweepParameter::kDeltaQ);
  EXPECT_THROW(sweep_parameter_from_string("omega_r"), InvalidArgument);
  EXPECT_THROW(sweep_metric_from_string("purity"), InvalidArgument);
}

TEST(SweepSpec, ValidationRejectsDegenerateAxes) {
  SweepSpec s = small_spec();
  s.count = 1;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.max = s.min;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.metrics.clear();
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(RunSweep, BudgetRefusalReportsCellCount) {
  SweepSpec s = small_spec();
  s.budget = 50;
  try {
    run_sweep(s);
    FAIL() << "expected refusal";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("105"), std::string::npos);
  }
}

TEST(RunSweep, ZeroCouplingsKeepFidelityAtOne) {
  SweepSpec s;
  s.base.omega_d = kTwoPi * 6.0e9;
  s.base.omega_r = s.base.omega_d;
  s.base.omega_f = s.base.omega_d + kTwoPi * 1e8;
  s.base.omega_q = s.base.omega_d + kTwoPi * 2e8;
  s.min = -1e8;
  s.max = 1e8;
  s.count = 2;
  s.time_count = 2;
  s.t_end = 1e-8;
  s.dims = ModeDims{2, 2};
  s.initial.readout_alpha = 0.0;
  s.metrics = {SweepMetric::kFidelityResonator, SweepMetric::kFidelityQubit};
  const auto r = run_sweep(s);
  for (const auto& m : r) {
    EXPECT_EQ(m.failed_count(), 0u);
    EXPECT_NEAR(m.values.minCoeff(), 1.0, 1e-9);
  }
}

TEST(RunSweep, DecoupledQubitStaysInGroundAcrossReadoutSweep) {
  SweepSpec s = small_spec();
  s.metrics = {SweepMetric::kFidelityQubit};
  s.base.g = 0.0;
  const auto r = run_sweep(s);
  EXPECT_NEAR(r[0].values.minCoeff(), 1.0, 1e-9);
}

TEST(RunSweep, ResultsDoNotDependOnWorkerCount) {
  SweepSpec s = small_spec();
  s.threads = 1;
  const auto one = run_sweep(s);
  s.threads = 4;
  const auto four = run_sweep(s);
  const auto again = run_sweep(s);
  ASSERT_EQ(one.size(), 2u);
  for (std::size_t m = 0; m < one.size(); ++m) {
    EXPECT_TRUE(bit_identical(one[m].values, four[m].values));
    EXPECT_TRUE(bit_identical(four[m].values, again[m].values));
  }
}

TEST(RunSweep, ForcedFailureIsIsolated) {
  SweepSpec s = small_spec();
  const auto clean = run_sweep(s);
  s.forced_failures = {2};
  s.threads = 3;
  const auto broken = run_sweep(s);
  EXPECT_FALSE(broken[0].status[2].ok);
  EXPECT_EQ(broken[0].status[2].reason, "forced failure");
  EXPECT_EQ(broken[0].failed_count(), 1u);
  EXPECT_TRUE(std::isnan(broken[0].values(2, 0)));
  for (int i : {0, 1, 3, 4}) {
    EXPECT_TRUE(broken[0].status[i].ok);
    for (std::size_t m = 0; m < clean.size(); ++m) {
      EXPECT_TRUE(bit_identical(clean[m].values.row(i), broken[m].values.row(i)));
    }
  }
}

TEST(RunSweep, TimeGridRefinementLeavesAggregatesStable) {
  SweepSpec s = small_spec();
  s.metrics = {SweepMetric::kTwoEta};
  s.t_end = 1.0e-9;  // dt resolves the delta_r rotation
  s.time_count = 101;
  const auto coarse = run_sweep(s);
  s.time_count = 201;
  const auto fine = run_sweep(s);
  for (int i = 0; i < s.count; ++i) {
    EXPECT_LE(std::abs(coarse[0].values.row(i).maxCoeff() - fine[0].values.row(i).maxCoeff()),
              1e-3);
  }
}

SweepResult synthetic(const Eigen::MatrixXd& values, SweepMetric metric) {
  SweepResult r;
  r.metric = metric;
  r.values = values;
  for (int i = 0; i < values.rows(); ++i) r.axis.push_back(i);
  for (int k = 0; k < values.cols(); ++k) r.times.push_back(k);
  r.status.assign(values.rows(), CellStatus{});
  return r;
}

TEST(ColocateExtrema, ConstantGridsAreFlat) {
  const auto fid = synthetic(Eigen::MatrixXd::Ones(5, 3), SweepMetric::kFidelityResonator);
  const auto eta = synthetic(Eigen::MatrixXd::Ones(5, 3), SweepMetric::kTwoEta);
  EXPECT_TRUE(colocate_extrema(fid, eta).flat);
}

TEST(ColocateExtrema, DipAndBumpAtSameIndex) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Ones(7, 4);
  Eigen::MatrixXd e = Eigen::MatrixXd::Ones(7, 4);
  f(4, 2) = 0.3;
  e(4, 1) = 2.5;
  const auto rep = colocate_extrema(synthetic(f, SweepMetric::kFidelityResonator),
                                    synthetic(e, SweepMetric::kTwoEta));
  EXPECT_FALSE(rep.flat);
  EXPECT_EQ(rep.fidelity_argmin, 4);
  EXPECT_EQ(rep.eta_argmax, 4);
  EXPECT_EQ(rep.separation_cells, 0);
}

TEST(ColocateExtrema, SeparationAndFailedRowsSkipped) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Ones(7, 2);
  Eigen::MatrixXd e = Eigen::MatrixXd::Ones(7, 2);
  f(1, 0) = 0.1;  // lives in a failed row
  f(2, 0) = 0.5;
  e(5, 1) = 3.0;
  auto fid = synthetic(f, SweepMetric::kFidelityResonator);
  fid.status[1] = {false, "boom"};
  const auto rep = colocate_extrema(fid, synthetic(e, SweepMetric::kTwoEta));
  EXPECT_EQ(rep.fidelity_argmin, 2);
  EXPECT_EQ(rep.separation_cells, 3);
}

TEST(ColocateExtrema, AxisMismatchThrows) {
  const auto a = synthetic(Eigen::MatrixXd::Ones(5, 3), SweepMetric::kFidelityResonator);
  const auto b = synthetic(Eigen::MatrixXd::Ones(6, 3), SweepMetric::kTwoEta);
  EXPECT_THROW(colocate_extrema(a, b), InvalidArgument);
}

}  // namespace
}  // namespace purcell
