// Copyright 2026 The sqcqed Authors
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

#include "ode.hpp"

#include "sqcqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqcqed::detail {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double safety = 0.9;
constexpr double min_factor = 0.2;
constexpr double max_factor = 5.0;

[[noreturn]] void stiffness_failure(const char* reason, double t, double h) {
  std::ostringstream msg;
  msg << reason << " at t = " << t << " (step " << h << ")";
  throw StiffnessError(msg.str(), t);
}

}  // namespace

Dopri5::Dopri5(OdeRhs f, const StepperConfig& config, double max_step)
    : f_(std::move(f)), config_(config), max_step_(max_step) {
  if (!(config.atol > 0.0) || !(config.rtol >= 0.0)) {
    throw InvalidArgument("dopri5 tolerances must be positive");
  }
  if (!(max_step_ > 0.0)) throw InvalidArgument("max_step must be positive");
  if (config.initial_step > 0.0) h_ = std::min(config.initial_step, max_step_);
}

double Dopri5::error_norm(const CVector& y, const CVector& y_new, const CVector& err) const {
  double acc = 0.0;
  const Eigen::Index n = y.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = config_.atol + config_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    const double r = std::abs(err[i]) / sc;
    acc += r * r;
  }
  return n == 0 ? 0.0 : std::sqrt(acc / static_cast<double>(n));
}

double Dopri5::initial_step(double t, const CVector& y, double t_limit) {
  // Hairer, Norsett & Wanner, Solving ODEs I, section II.4.
  auto scaled_norm = [&](const CVector& v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double sc = config_.atol + config_.rtol * std::abs(y[i]);
      acc += std::norm(v[i]) / (sc * sc);
    }
    return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(v.size(), 1)));
  };
  const double d0 = scaled_norm(y);
  const double d1 = scaled_norm(k1_);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min({h0, max_step_, t_limit - t});
  tmp_ = y + h0 * k1_;
  f_(t + h0, tmp_, k2_);
  ++counters_.evaluations;
  const double d2 = scaled_norm(k2_ - k1_) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, max_step_});
}

void Dopri5::step(double& t, CVector& y, double t_limit) {
  if (!have_k1_ || k1_time_ != t) {
    k1_.resize(y.size());
    f_(t, y, k1_);
    ++counters_.evaluations;
    have_k1_ = true;
    k1_time_ = t;
  }
  if (h_ <= 0.0) h_ = initial_step(t, y, t_limit);

  bool last_rejected = false;
  for (;;) {
    if (config_.max_steps > 0 && counters_.accepted + counters_.rejected >= config_.max_steps) {
      stiffness_failure("step budget exhausted", t, h_);
    }
    const double remaining = t_limit - t;
    // Land exactly on t_limit instead of leaving a sliver that would underflow.
    const bool clipped = h_ >= remaining * (1.0 - 1e-6);
    const double h = clipped ? remaining : h_;
    if (h < config_.min_step_factor * std::max(1.0, std::abs(t))) {
      stiffness_failure("step size underflow", t, h);
    }

    tmp_ = y + h * a21 * k1_;
    f_(t + c2 * h, tmp_, k2_);
    tmp_ = y + h * (a31 * k1_ + a32 * k2_);
    f_(t + c3 * h, tmp_, k3_);
    tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    f_(t + c4 * h, tmp_, k4_);
    tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    f_(t + c5 * h, tmp_, k5_);
    tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    f_(t + h, tmp_, k6_);
    y_new_ = y + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
    const double t_new = clipped ? t_limit : t + h;
    f_(t_new, y_new_, k7_);
    counters_.evaluations += 6;

    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const double err = error_norm(y, y_new_, err_);

    if (err <= 1.0) {
      ++counters_.accepted;
      double factor = err == 0.0 ? max_factor : safety * std::pow(err, -0.2);
      factor = std::clamp(factor, min_factor, last_rejected ? 1.0 : max_factor);
      // A step shortened only to land on t_limit does not shrink the controller's step.
      const double proposal = std::min(h * factor, max_step_);
      h_ = clipped ? std::max(h_, proposal) : proposal;
      h_ = std::min(h_, max_step_);
      t = t_new;
      y.swap(y_new_);
      k1_.swap(k7_);
      k1_time_ = t;
      return;
    }
    ++counters_.rejected;
    last_rejected = true;
    h_ = h * std::max(min_factor, safety * std::pow(err, -0.2));
  }
}

void Dopri5::advance_to(double& t, CVector& y, double t_target) {
  while (t < t_target) step(t, y, t_target);
}

Rk4::Rk4(OdeRhs f, double step, double max_step) : f_(std::move(f)), h_(std::min(step, max_step)) {
  if (!(h_ > 0.0)) throw InvalidArgument("rk4 step must be positive");
}

void Rk4::advance_to(double& t, CVector& y, double t_target) {
  while (t < t_target) {
    const double remaining = t_target - t;
    // Absorb a tiny remainder into the current step to avoid a degenerate last step.
    const double h = remaining <= h_ * (1.0 + 1e-9) ? remaining : h_;
    k1_.resize(y.size());
    f_(t, y, k1_);
    tmp_ = y + 0.5 * h * k1_;
    f_(t + 0.5 * h, tmp_, k2_);
    tmp_ = y + 0.5 * h * k2_;
    f_(t + 0.5 * h, tmp_, k3_);
    tmp_ = y + h * k3_;
    f_(t + h, tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    t = h == remaining ? t_target : t + h;
    counters_.evaluations += 4;
    ++counters_.accepted;
  }
}

}  // namespace sqcqed::detail
