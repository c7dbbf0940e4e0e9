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

#pragma once

#include "sqcqed/hilbert.hpp"

#include <Eigen/SparseCore>

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace sqcqed {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

/// One explicit time dependence H_k e^{i nu t} + H_k^dagger e^{-i nu t}.
struct OscillatoryTerm {
  Operator op;
  double frequency;
};

/// H(t) = H_static + sum_k (H_k e^{i nu_k t} + h.c.).
struct HamiltonianModel {
  Operator static_part;
  std::vector<OscillatoryTerm> oscillatory;

  bool is_static() const noexcept { return oscillatory.empty(); }
  /// Full Hermitian matrix at time t.
  CMatrix at(double t) const;
  /// Largest |nu_k|, 0 for a static model.
  double max_frequency() const;
};

/// Jump operator entering the generator either as a standard vacuum dissipator
/// or through the squeezed-pair structure
///   (N+1) D[o] + N D[o^dagger] - M D'[o] - M* D'[o^dagger]
/// where D[o] rho = o rho o^dagger - {o^dagger o, rho}/2 and
/// D'[o] rho = o rho o - {o o, rho}/2.
class DissipatorTerm {
 public:
  enum class Kind { standard, squeezed_pair };

  static DissipatorTerm standard(Operator op, std::string label = {});
  /// Requires N >= 0 and |M|^2 <= N (N + 1) + 1e-10.
  static DissipatorTerm squeezed_pair(Operator op, double N, Complex M, std::string label = {});

  const Operator& op() const noexcept { return op_; }
  Kind kind() const noexcept { return kind_; }
  double N() const noexcept { return N_; }
  Complex M() const noexcept { return M_; }
  const std::string& label() const noexcept { return label_; }

 private:
  DissipatorTerm(Operator op, Kind kind, double N, Complex M, std::string label);

  Operator op_;
  Kind kind_;
  double N_;
  Complex M_;
  std::string label_;
};

using DissipatorSet = std::vector<DissipatorTerm>;

/// d rho / dt at time t.
CMatrix rhs(const CMatrix& rho, double t, const HamiltonianModel& H, const DissipatorSet& D);
CMatrix rhs(const DensityMatrix& rho, double t, const HamiltonianModel& H, const DissipatorSet& D);

/// Column stacking: vec(rho)[i + d j] = rho(i, j), so vec(A rho B) = (B^T kron A) vec(rho).
CVector vectorize(const CMatrix& rho);
CMatrix unvectorize(const CVector& v, int dim);

/// Generator of the static problem, vec(d rho/dt) = Lambda vec(rho). Dense d^2 x d^2.
CMatrix liouvillian_matrix(const Operator& H, const DissipatorSet& D);
/// Same generator in compressed sparse form.
SparseCMatrix liouvillian_sparse(const Operator& H, const DissipatorSet& D);
/// Superoperator of rho -> i [rho, A] (no Hermiticity assumed on A).
SparseCMatrix commutator_superop(const CMatrix& A);

struct StepperConfig {
  enum class Method { dopri5, rk4 };
  Method method = Method::dopri5;
  double atol = 1e-9;
  double rtol = 1e-7;
  /// Upper bound on any step. With oscillatory terms the bound
  /// (2 pi / nu_max) / 20 is applied on top of this.
  double max_step = std::numeric_limits<double>::infinity();
  /// Initial step for dopri5; 0 selects it automatically.
  double initial_step = 0.0;
  /// Step used by rk4 (shortened to land on output times).
  double rk4_step = 1e-2;
  /// Steps below min_step_factor * max(1, |t|) raise StiffnessError.
  double min_step_factor = 1e-13;
  /// Hard cap on accepted + rejected steps; 0 means unlimited.
  long long max_steps = 0;
  /// Rescale the trace to 1 after every step. Off by default so drift stays visible.
  bool renormalize_trace = false;
};

struct TrajectoryDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  long long accepted_steps = 0;
  long long rejected_steps = 0;
  long long rhs_evaluations = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  TrajectoryDiagnostics diagnostics;
};

/// Integrates the master equation and samples the state at every entry of
/// `times` (strictly increasing; times[0] is the initial time).
Trajectory evolve(const DensityMatrix& rho0, const std::vector<double>& times,
                  const HamiltonianModel& H, const DissipatorSet& D,
                  const StepperConfig& stepper = {});

/// Same as evolve but hands each sampled state to `observer` instead of storing
/// it. Only the diagnostics are returned.
TrajectoryDiagnostics evolve_observed(
    const DensityMatrix& rho0, const std::vector<double>& times, const HamiltonianModel& H,
    const DissipatorSet& D, const StepperConfig& stepper,
    const std::function<void(double, const DensityMatrix&)>& observer);

enum class SteadyStateMethod { nullspace, longtime };

struct SteadyStateOptions {
  /// longtime: stop once max |d rho/dt| falls below this value ...
  double derivative_tolerance = 1e-12;
  /// ... or once this time has been reached.
  double max_time = 1e4;
  StepperConfig stepper{};
};

/// Steady state of a static model. The result is Hermitized and trace-normalized.
DensityMatrix steady_state(const HamiltonianModel& H, const DissipatorSet& D,
                           SteadyStateMethod method = SteadyStateMethod::nullspace,
                           const SteadyStateOptions& options = {});

/// (1/2) sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

}  // namespace sqcqed
