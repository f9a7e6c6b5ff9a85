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

// Explicit Runge-Kutta integrators for y' = f(t, y) where y is any Eigen
// dense complex object (vector or matrix). Only the operations
// y + c*k, cwiseAbs() and allFinite() are required of the state type.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "purcellsim/errors.hpp"

namespace purcell::ode {

template <class State>
using RhsFn = std::function<void(double t, const State& y, State& dydt)>;

// Classical fourth-order Runge-Kutta, fixed step.
template <class State>
class Rk4 {
 public:
  explicit Rk4(RhsFn<State> f) : f_(std::move(f)) {}

  void step(double t, State& y, double h) {
    f_(t, y, k1_);
    tmp_ = y + (0.5 * h) * k1_;
    f_(t + 0.5 * h, tmp_, k2_);
    tmp_ = y + (0.5 * h) * k2_;
    f_(t + 0.5 * h, tmp_, k3_);
    tmp_ = y + h * k3_;
    f_(t + h, tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

  // Advances from t to t_end in `substeps` equal steps.
  void advance(double t, double t_end, State& y, int substeps) {
    const double h = (t_end - t) / substeps;
    for (int i = 0; i < substeps; ++i) {
      step(t + i * h, y, h);
    }
  }

 private:
  RhsFn<State> f_;
  State k1_, k2_, k3_, k4_, tmp_;
};

struct AdaptiveStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
};

// Dormand-Prince 5(4) with FSAL and a standard PI-free step controller.
template <class State>
class DormandPrince45 {
 public:
  DormandPrince45(RhsFn<State> f, double abs_tol, double rel_tol)
      : f_(std::move(f)), atol_(abs_tol), rtol_(rel_tol) {}

  const AdaptiveStats& stats() const noexcept { return stats_; }
  double step_size() const noexcept { return h_; }
  // Call after modifying y between advance() calls.
  void invalidate() noexcept { have_k1_ = false; }

  // Integrates y from t to t_end exactly (the last step is clipped).
  void advance(double t, double t_end, State& y) {
    const double span = t_end - t;
    if (span <= 0.0) return;
    if (!have_k1_ || t != t_k1_) {
      f_(t, y, k1_);
      ++stats_.rhs_evaluations;
      have_k1_ = true;
    }
    if (h_ <= 0.0) h_ = initial_step(t, y, span);
    const double h_floor = 1e-13 * std::max(std::abs(t_end), std::abs(span));

    while (t < t_end) {
      bool last = false;
      double h = h_;
      if (t + h >= t_end || t + 1.01 * h >= t_end) {
        h = t_end - t;
        last = true;
      }
      const double err = attempt(t, y, h);
      if (!std::isfinite(err)) {
        throw NumericalError("DormandPrince45: non-finite state encountered");
      }
      if (err <= 1.0) {
        t = last ? t_end : t + h;
        y.swap(ynew_);
        k1_.swap(k7_);  // FSAL
        t_k1_ = t;
        ++stats_.accepted;
        const double factor =
            err == 0.0 ? kMaxGrowth
                       : std::clamp(kSafety * std::pow(err, -0.2), kMinShrink, kMaxGrowth);
        // Keep the controller's step when the last step was clipped short.
        if (!last || h >= h_) h_ = h * factor;
      } else {
        ++stats_.rejected;
        h_ = h * std::clamp(kSafety * std::pow(err, -0.2), kMinShrink, 1.0);
        if (h_ < h_floor) {
          throw NumericalError("DormandPrince45: step size fell below the rejection floor");
        }
      }
    }
  }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kMinShrink = 0.2;
  static constexpr double kMaxGrowth = 5.0;

  // Max norm rather than RMS: vectorised density matrices are mostly zeros,
  // and an RMS over them lets single entries run far past the tolerance.
  double error_norm(const State& y, const State& ynew, const State& err) const {
    const auto scale =
        (atol_ + rtol_ * y.cwiseAbs().cwiseMax(ynew.cwiseAbs()).array()).eval();
    return (err.cwiseAbs().array() / scale).maxCoeff();
  }

  double initial_step(double t, const State& y, double span) {
    // Hairer-Norsett-Wanner starting step estimate.
    const auto scale = (atol_ + rtol_ * y.cwiseAbs().array()).eval();
    const double n = static_cast<double>(y.size());
    const double d0 = std::sqrt((y.cwiseAbs().array() / scale).square().sum() / n);
    const double d1 = std::sqrt((k1_.cwiseAbs().array() / scale).square().sum() / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    tmp_ = y + h0 * k1_;
    f_(t + h0, tmp_, k2_);
    ++stats_.rhs_evaluations;
    const double d2 =
        std::sqrt(((k2_ - k1_).cwiseAbs().array() / scale).square().sum() / n) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6 * span, h0 * 1e-3)
                                    : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, span});
  }

  double attempt(double t, const State& y, double h) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    tmp_ = y + (h * a21) * k1_;
    f_(t + c2 * h, tmp_, k2_);
    tmp_ = y + h * (a31 * k1_ + a32 * k2_);
    f_(t + c3 * h, tmp_, k3_);
    tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    f_(t + c4 * h, tmp_, k4_);
    tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    f_(t + c5 * h, tmp_, k5_);
    tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    f_(t + h, tmp_, k6_);
    ynew_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    f_(t + h, ynew_, k7_);
    stats_.rhs_evaluations += 6;
    if (!ynew_.allFinite()) return std::numeric_limits<double>::quiet_NaN();
    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    return error_norm(y, ynew_, err_);
  }

  RhsFn<State> f_;
  double atol_;
  double rtol_;
  double h_ = 0.0;
  bool have_k1_ = false;
  double t_k1_ = 0.0;
  AdaptiveStats stats_;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, ynew_, err_;
};

}  // namespace purcell::ode
