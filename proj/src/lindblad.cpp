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

#include "sqcqed/lindblad.hpp"

#include "ode.hpp"
#include "sqcqed/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sqcqed {

namespace {

constexpr Complex I{0.0, 1.0};

void check_same_space(const Operator& a, const Operator& b, const char* what) {
  try {
    require_compatible(a, b);
  } catch (const LayoutMismatch& e) {
    throw LayoutMismatch(std::string(what) + ": " + e.what());
  }
}

// D[o] rho = o rho o^dagger - (o^dagger o rho + rho o^dagger o) / 2
CMatrix lindblad_term(const CMatrix& o, const CMatrix& rho) {
  const CMatrix od = o.adjoint();
  const CMatrix odo = od * o;
  return o * rho * od - 0.5 * (odo * rho + rho * odo);
}

// D'[o] rho = o rho o - (o o rho + rho o o) / 2
CMatrix pair_term(const CMatrix& o, const CMatrix& rho) {
  const CMatrix oo = o * o;
  return o * rho * o - 0.5 * (oo * rho + rho * oo);
}

SparseCMatrix to_sparse(const CMatrix& m) {
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex(0.0)) trips.emplace_back(i, j, m(i, j));
    }
  }
  SparseCMatrix s(m.rows(), m.cols());
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

SparseCMatrix sparse_identity(Eigen::Index n) {
  SparseCMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseCMatrix kron(const SparseCMatrix& a, const SparseCMatrix& b) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index ja = 0; ja < a.outerSize(); ++ja) {
    for (SparseCMatrix::InnerIterator ia(a, ja); ia; ++ia) {
      for (Eigen::Index jb = 0; jb < b.outerSize(); ++jb) {
        for (SparseCMatrix::InnerIterator ib(b, jb); ib; ++ib) {
          trips.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
        }
      }
    }
  }
  SparseCMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

// Superoperator of D[o] in column stacking.
SparseCMatrix lindblad_superop(const CMatrix& o) {
  const Eigen::Index d = o.rows();
  const SparseCMatrix id = sparse_identity(d);
  const CMatrix odo = o.adjoint() * o;
  SparseCMatrix out = kron(to_sparse(o.conjugate()), to_sparse(o));
  out -= 0.5 * kron(id, to_sparse(odo));
  out -= 0.5 * kron(to_sparse(odo.transpose()), id);
  return out;
}

// Superoperator of D'[o] in column stacking.
SparseCMatrix pair_superop(const CMatrix& o) {
  const Eigen::Index d = o.rows();
  const SparseCMatrix id = sparse_identity(d);
  const CMatrix oo = o * o;
  SparseCMatrix out = kron(to_sparse(o.transpose()), to_sparse(o));
  out -= 0.5 * kron(id, to_sparse(oo));
  out -= 0.5 * kron(to_sparse(oo.transpose()), id);
  return out;
}

SparseCMatrix dissipator_superop(const DissipatorSet& D, Eigen::Index d) {
  SparseCMatrix out(d * d, d * d);
  for (const auto& term : D) {
    const CMatrix& o = term.op().matrix();
    if (o.rows() != d) throw LayoutMismatch("dissipator dimension does not match Hamiltonian");
    if (term.kind() == DissipatorTerm::Kind::standard) {
      out += lindblad_superop(o);
      continue;
    }
    const CMatrix od = o.adjoint();
    out += (term.N() + 1.0) * lindblad_superop(o);
    if (term.N() != 0.0) out += term.N() * lindblad_superop(od);
    if (term.M() != Complex(0.0)) {
      out -= term.M() * pair_superop(o);
      out -= std::conj(term.M()) * pair_superop(od);
    }
  }
  return out;
}

Complex vec_trace(const CVector& y, Eigen::Index d) {
  Complex tr = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) tr += y[i + d * i];
  return tr;
}

void record_diagnostics(const CMatrix& rho, TrajectoryDiagnostics& diag) {
  const auto state = DensityMatrix::unchecked(std::nullopt, rho);
  diag.max_trace_drift = std::max(diag.max_trace_drift, state.trace_defect());
  diag.max_hermiticity_drift = std::max(diag.max_hermiticity_drift, state.hermiticity_defect());
  diag.min_eigenvalue = std::min(diag.min_eigenvalue, state.min_eigenvalue());
}

void validate_dissipators(const Operator& H, const DissipatorSet& D) {
  for (const auto& term : D) check_same_space(H, term.op(), "dissipator");
}

// Builds y' = L0 y + sum_k (e^{i nu t} L_k + e^{-i nu t} L_k') y.
struct SparseGenerator {
  SparseCMatrix L0;
  std::vector<SparseCMatrix> forward;
  std::vector<SparseCMatrix> backward;
  std::vector<double> frequency;

  SparseGenerator(const HamiltonianModel& H, const DissipatorSet& D) {
    L0 = liouvillian_sparse(H.static_part, D);
    for (const auto& term : H.oscillatory) {
      check_same_space(H.static_part, term.op, "oscillatory term");
      forward.push_back(commutator_superop(term.op.matrix()));
      backward.push_back(commutator_superop(term.op.matrix().adjoint()));
      frequency.push_back(term.frequency);
    }
    L0.makeCompressed();
  }

  void operator()(double t, const CVector& y, CVector& dy) const {
    dy.noalias() = L0 * y;
    for (std::size_t k = 0; k < forward.size(); ++k) {
      const Complex phase = std::exp(I * frequency[k] * t);
      dy.noalias() += phase * (forward[k] * y);
      dy.noalias() += std::conj(phase) * (backward[k] * y);
    }
    // The exact generator preserves Hermiticity; dropping the rounding-level
    // anti-Hermitian part keeps every integrator stage exactly Hermitian.
    const Eigen::Index d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dy.size()))));
    Eigen::Map<CMatrix> m(dy.data(), d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      m(j, j).imag(0.0);
      for (Eigen::Index i = j + 1; i < d; ++i) {
        const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
        m(i, j) = h;
        m(j, i) = std::conj(h);
      }
    }
  }
};

double effective_max_step(const HamiltonianModel& H, const StepperConfig& stepper) {
  double max_step = stepper.max_step;
  const double nu = H.max_frequency();
  if (nu > 0.0) max_step = std::min(max_step, (2.0 * std::numbers::pi / nu) / 20.0);
  return max_step;
}

}  // namespace

// ---------------------------------------------------------------------------
// Model types

CMatrix HamiltonianModel::at(double t) const {
  CMatrix h = static_part.matrix();
  for (const auto& term : oscillatory) {
    const Complex phase = std::exp(I * term.frequency * t);
    h += phase * term.op.matrix() + std::conj(phase) * term.op.matrix().adjoint();
  }
  return h;
}

double HamiltonianModel::max_frequency() const {
  double nu = 0.0;
  for (const auto& term : oscillatory) nu = std::max(nu, std::abs(term.frequency));
  return nu;
}

DissipatorTerm::DissipatorTerm(Operator op, Kind kind, double N, Complex M, std::string label)
    : op_(std::move(op)), kind_(kind), N_(N), M_(M), label_(std::move(label)) {}

DissipatorTerm DissipatorTerm::standard(Operator op, std::string label) {
  return DissipatorTerm(std::move(op), Kind::standard, 0.0, 0.0, std::move(label));
}

DissipatorTerm DissipatorTerm::squeezed_pair(Operator op, double N, Complex M, std::string label) {
  if (!(N >= 0.0)) throw InvalidArgument("squeezed-pair moment N must be >= 0");
  // Rounding in |M|^2 and N(N+1) grows with N; allow for it on top of the absolute floor.
  if (std::norm(M) > N * (N + 1.0) * (1.0 + 1e-12) + 1e-10) {
    std::ostringstream msg;
    msg << "squeezed-pair moments violate |M|^2 <= N(N+1): |M|^2 = " << std::norm(M)
        << ", N(N+1) = " << N * (N + 1.0);
    throw InvalidArgument(msg.str());
  }
  return DissipatorTerm(std::move(op), Kind::squeezed_pair, N, M, std::move(label));
}

// ---------------------------------------------------------------------------
// Generator

CMatrix rhs(const CMatrix& rho, double t, const HamiltonianModel& H, const DissipatorSet& D) {
  const CMatrix h = H.at(t);
  if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
    throw LayoutMismatch("rhs: state and Hamiltonian dimensions differ");
  }
  CMatrix out = I * (rho * h - h * rho);
  for (const auto& term : D) {
    const CMatrix& o = term.op().matrix();
    if (o.rows() != rho.rows()) throw LayoutMismatch("rhs: dissipator dimension mismatch");
    if (term.kind() == DissipatorTerm::Kind::standard) {
      out += lindblad_term(o, rho);
      continue;
    }
    const CMatrix od = o.adjoint();
    out += (term.N() + 1.0) * lindblad_term(o, rho) + term.N() * lindblad_term(od, rho);
    out -= term.M() * pair_term(o, rho) + std::conj(term.M()) * pair_term(od, rho);
  }
  return out;
}

CMatrix rhs(const DensityMatrix& rho, double t, const HamiltonianModel& H,
            const DissipatorSet& D) {
  if (rho.layout() && H.static_part.layout() && !(*rho.layout() == *H.static_part.layout())) {
    throw LayoutMismatch("rhs: state and Hamiltonian layouts differ");
  }
  return rhs(rho.matrix(), t, H, D);
}

CVector vectorize(const CMatrix& rho) {
  return Eigen::Map<const CVector>(rho.data(), rho.size());
}

CMatrix unvectorize(const CVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw InvalidArgument("unvectorize: length is not dim^2");
  }
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

SparseCMatrix commutator_superop(const CMatrix& A) {
  // i [rho, A] = i rho A - i A rho  ->  i (A^T kron 1) - i (1 kron A)
  const SparseCMatrix id = sparse_identity(A.rows());
  SparseCMatrix out = I * kron(to_sparse(A.transpose()), id);
  out -= I * kron(id, to_sparse(A));
  return out;
}

SparseCMatrix liouvillian_sparse(const Operator& H, const DissipatorSet& D) {
  validate_dissipators(H, D);
  SparseCMatrix out = commutator_superop(H.matrix());
  out += dissipator_superop(D, H.dim());
  out.makeCompressed();
  return out;
}

CMatrix liouvillian_matrix(const Operator& H, const DissipatorSet& D) {
  return CMatrix(liouvillian_sparse(H, D));
}

// ---------------------------------------------------------------------------
// Time evolution

TrajectoryDiagnostics evolve_observed(
    const DensityMatrix& rho0, const std::vector<double>& times, const HamiltonianModel& H,
    const DissipatorSet& D, const StepperConfig& stepper,
    const std::function<void(double, const DensityMatrix&)>& observer) {
  if (times.empty()) throw InvalidArgument("evolve: empty time grid");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("evolve: times must be strictly increasing");
  }
  if (rho0.dim() != H.static_part.dim()) throw LayoutMismatch("evolve: state/Hamiltonian dimension");
  if (rho0.layout() && H.static_part.layout() && !(*rho0.layout() == *H.static_part.layout())) {
    throw LayoutMismatch("evolve: state and Hamiltonian layouts differ");
  }

  const Eigen::Index d = rho0.dim();
  const SparseGenerator gen(H, D);
  detail::OdeRhs f = [&gen](double t, const CVector& y, CVector& dy) { gen(t, y, dy); };
  const double max_step = effective_max_step(H, stepper);

  TrajectoryDiagnostics diag;
  CVector y = vectorize(rho0.matrix());
  double t = times.front();

  auto emit = [&](double time) {
    CMatrix rho = unvectorize(y, static_cast<int>(d));
    record_diagnostics(rho, diag);
    observer(time, DensityMatrix::unchecked(rho0.layout(), std::move(rho)));
  };
  auto renormalize = [&]() {
    if (stepper.renormalize_trace) y /= vec_trace(y, d);
  };

  emit(t);
  if (stepper.method == StepperConfig::Method::dopri5) {
    detail::Dopri5 solver(f, stepper, max_step);
    for (std::size_t i = 1; i < times.size(); ++i) {
      while (t < times[i]) {
        solver.step(t, y, times[i]);
        renormalize();
      }
      emit(t);
    }
    diag.accepted_steps = solver.counters().accepted;
    diag.rejected_steps = solver.counters().rejected;
    diag.rhs_evaluations = solver.counters().evaluations;
  } else {
    detail::Rk4 solver(f, stepper.rk4_step, max_step);
    for (std::size_t i = 1; i < times.size(); ++i) {
      solver.advance_to(t, y, times[i]);
      renormalize();
      emit(t);
    }
    diag.accepted_steps = solver.counters().accepted;
    diag.rhs_evaluations = solver.counters().evaluations;
  }
  return diag;
}

Trajectory evolve(const DensityMatrix& rho0, const std::vector<double>& times,
                  const HamiltonianModel& H, const DissipatorSet& D,
                  const StepperConfig& stepper) {
  Trajectory traj;
  traj.times.reserve(times.size());
  traj.states.reserve(times.size());
  traj.diagnostics =
      evolve_observed(rho0, times, H, D, stepper, [&](double t, const DensityMatrix& rho) {
        traj.times.push_back(t);
        traj.states.push_back(rho);
      });
  return traj;
}

// ---------------------------------------------------------------------------
// Steady state

namespace {

CMatrix finish_state(const CMatrix& raw) {
  CMatrix rho = 0.5 * (raw + raw.adjoint());
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw DegenerateKernelError("steady state has vanishing trace", -1);
  return rho / tr.real();
}

constexpr Eigen::Index dense_kernel_limit = 1024;

CMatrix nullspace_dense(const SparseCMatrix& L, Eigen::Index d) {
  Eigen::FullPivLU<CMatrix> lu{CMatrix(L)};
  lu.setThreshold(1e-10);
  const auto kernel_dim = lu.dimensionOfKernel();
  if (kernel_dim != 1) {
    throw DegenerateKernelError(
        "Liouvillian kernel has dimension " + std::to_string(kernel_dim) + " (expected 1)",
        static_cast<int>(kernel_dim));
  }
  const CVector v = lu.kernel().col(0);
  return unvectorize(v, static_cast<int>(d));
}

CVector solve_with_trace_row(const SparseCMatrix& L, Eigen::Index d, Eigen::Index replaced) {
  const Eigen::Index n = L.rows();
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(L.nonZeros() + d));
  for (Eigen::Index j = 0; j < L.outerSize(); ++j) {
    for (SparseCMatrix::InnerIterator it(L, j); it; ++it) {
      if (it.row() != replaced) trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) trips.emplace_back(replaced, i + d * i, Complex(1.0));
  SparseCMatrix A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();

  Eigen::SparseLU<SparseCMatrix> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) {
    throw DegenerateKernelError("Liouvillian kernel is degenerate (sparse factorization failed)", -1);
  }
  CVector b = CVector::Zero(n);
  b[replaced] = 1.0;
  CVector x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw DegenerateKernelError("Liouvillian kernel is degenerate (sparse solve failed)", -1);
  }
  return x;
}

CMatrix nullspace_sparse(const SparseCMatrix& L, Eigen::Index d) {
  const CVector x = solve_with_trace_row(L, d, 0);
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  double lnorm = 0.0;
  for (Eigen::Index j = 0; j < L.outerSize(); ++j) {
    for (SparseCMatrix::InnerIterator it(L, j); it; ++it) lnorm = std::max(lnorm, std::abs(it.value()));
  }
  const double residual = (L * x).cwiseAbs().maxCoeff();
  // A second pinned row gives the same vector only when the kernel is one-dimensional.
  const CVector x2 = solve_with_trace_row(L, d, d * d - 1);
  const double spread = (x - x2).cwiseAbs().maxCoeff();
  if (residual > 1e-8 * lnorm * scale || spread > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "Liouvillian kernel is not one-dimensional (residual " << residual << ", pin spread "
        << spread << ")";
    throw DegenerateKernelError(msg.str(), -1);
  }
  return unvectorize(x, static_cast<int>(d));
}

CMatrix longtime(const HamiltonianModel& H, const DissipatorSet& D,
                 const SteadyStateOptions& options) {
  const Eigen::Index d = H.static_part.dim();
  const SparseGenerator gen(H, D);
  detail::OdeRhs f = [&gen](double t, const CVector& y, CVector& dy) { gen(t, y, dy); };
  detail::Dopri5 solver(f, options.stepper, options.stepper.max_step);
  CVector y = vectorize(CMatrix::Identity(d, d) / static_cast<double>(d));
  double t = 0.0;
  while (t < options.max_time) {
    solver.step(t, y, options.max_time);
    if (solver.last_derivative().cwiseAbs().maxCoeff() < options.derivative_tolerance) break;
  }
  return unvectorize(y, static_cast<int>(d));
}

}  // namespace

DensityMatrix steady_state(const HamiltonianModel& H, const DissipatorSet& D,
                           SteadyStateMethod method, const SteadyStateOptions& options) {
  if (!H.is_static()) {
    throw InvalidArgument("steady_state requires a static Hamiltonian (no oscillatory terms)");
  }
  const Eigen::Index d = H.static_part.dim();
  CMatrix raw;
  if (method == SteadyStateMethod::nullspace) {
    const SparseCMatrix L = liouvillian_sparse(H.static_part, D);
    raw = d * d <= dense_kernel_limit ? nullspace_dense(L, d) : nullspace_sparse(L, d);
  } else {
    raw = longtime(H, D, options);
  }
  return DensityMatrix::unchecked(H.static_part.layout(), finish_state(raw));
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("trace_distance: dimension mismatch");
  }
  const CMatrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (diff + diff.adjoint()),
                                                Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace sqcqed
