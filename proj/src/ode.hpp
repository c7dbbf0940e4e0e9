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

// Explicit Runge-Kutta steppers for complex vector ODEs y' = f(t, y).

#pragma once

#include "sqcqed/lindblad.hpp"

#include <functional>

namespace sqcqed::detail {

using OdeRhs = std::function<void(double t, const CVector& y, CVector& dy)>;

struct StepCounters {
  long long accepted = 0;
  long long rejected = 0;
  long long evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL and a standard elementary controller.
class Dopri5 {
 public:
  Dopri5(OdeRhs f, const StepperConfig& config, double max_step);

  /// One accepted step from (t, y), never past t_limit. Updates t and y.
  void step(double& t, CVector& y, double t_limit);
  /// Repeated steps until t == t_target exactly.
  void advance_to(double& t, CVector& y, double t_target);

  /// Derivative at the current point (valid after the first step).
  const CVector& last_derivative() const { return k1_; }
  const StepCounters& counters() const { return counters_; }

 private:
  double initial_step(double t, const CVector& y, double t_limit);
  double error_norm(const CVector& y, const CVector& y_new, const CVector& err) const;

  OdeRhs f_;
  StepperConfig config_;
  double max_step_;
  double h_ = 0.0;
  bool have_k1_ = false;
  double k1_time_ = 0.0;
  StepCounters counters_;
  CVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_, err_;
};

/// Classical fourth-order Runge-Kutta with a fixed nominal step.
class Rk4 {
 public:
  Rk4(OdeRhs f, double step, double max_step);
  void advance_to(double& t, CVector& y, double t_target);
  const StepCounters& counters() const { return counters_; }

 private:
  OdeRhs f_;
  double h_;
  StepCounters counters_;
  CVector k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace sqcqed::detail
