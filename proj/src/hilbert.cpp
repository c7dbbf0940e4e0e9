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

#include "sqcqed/hilbert.hpp"

#include "sqcqed/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace sqcqed {

Level parse_level(std::string_view label) {
  if (label == "g") return Level::g;
  if (label == "f") return Level::f;
  if (label == "e") return Level::e;
  throw InvalidArgument("invalid level label '" + std::string(label) + "' (expected g, f or e)");
}

char level_label(Level z) {
  switch (z) {
    case Level::g: return 'g';
    case Level::f: return 'f';
    case Level::e: return 'e';
  }
  throw InvalidArgument("invalid level value");
}

namespace {

int level_index(Level z) {
  const int i = static_cast<int>(z);
  if (i < 0 || i > 2) throw InvalidArgument("invalid level value " + std::to_string(i));
  return i;
}

}  // namespace

SpaceLayout::SpaceLayout(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1, got " + std::to_string(n_max));
}

int SpaceLayout::index(Level z1, Level z2, int n) const {
  if (n < 0 || n > n_max_) {
    throw InvalidArgument("Fock index " + std::to_string(n) + " outside [0, " +
                          std::to_string(n_max_) + "]");
  }
  return atom_dim * fock_dim() * level_index(z1) + fock_dim() * level_index(z2) + n;
}

SpaceLayout::Labels SpaceLayout::labels(int index) const {
  if (index < 0 || index >= dim()) {
    throw InvalidArgument("basis index " + std::to_string(index) + " out of range");
  }
  const int n = index % fock_dim();
  const int z2 = (index / fock_dim()) % atom_dim;
  const int z1 = index / (atom_dim * fock_dim());
  return {static_cast<Level>(z1), static_cast<Level>(z2), n};
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(SpaceLayout layout, CMatrix matrix)
    : layout_(layout), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("operator matrix must be square");
  if (matrix_.rows() != layout.dim()) {
    throw LayoutMismatch("operator dimension " + std::to_string(matrix_.rows()) +
                         " does not match layout dimension " + std::to_string(layout.dim()));
  }
}

Operator::Operator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("operator matrix must be square");
}

Operator Operator::zero(const SpaceLayout& layout) {
  return Operator(layout, CMatrix::Zero(layout.dim(), layout.dim()));
}

Operator Operator::identity(const SpaceLayout& layout) {
  return Operator(layout, CMatrix::Identity(layout.dim(), layout.dim()));
}

Operator Operator::adjoint() const {
  Operator out = *this;
  out.matrix_ = matrix_.adjoint();
  return out;
}

double Operator::hermiticity_defect() const { return max_abs(matrix_ - matrix_.adjoint()); }

void require_compatible(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw LayoutMismatch("operator dimensions differ: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
  if (a.layout() && b.layout() && !(*a.layout() == *b.layout())) {
    throw LayoutMismatch("operators built on different layouts");
  }
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_compatible(*this, rhs);
  matrix_ += rhs.matrix_;
  if (!layout_) layout_ = rhs.layout_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_compatible(*this, rhs);
  matrix_ -= rhs.matrix_;
  if (!layout_) layout_ = rhs.layout_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  matrix_ *= s;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_compatible(lhs, rhs);
  Operator out = lhs;
  out.matrix_ = lhs.matrix_ * rhs.matrix_;
  if (!out.layout_) out.layout_ = rhs.layout_;
  return out;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(std::optional<SpaceLayout> layout, CMatrix matrix, bool validate)
    : layout_(layout), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("density matrix must be square");
  if (layout_ && matrix_.rows() != layout_->dim()) {
    throw LayoutMismatch("density matrix dimension does not match layout");
  }
  if (!validate) return;
  if (trace_defect() > trace_tolerance) {
    throw InvalidArgument("density matrix trace deviates from 1 by " +
                          std::to_string(trace_defect()));
  }
  if (hermiticity_defect() > hermiticity_tolerance) {
    throw InvalidArgument("density matrix is not Hermitian (defect " +
                          std::to_string(hermiticity_defect()) + ")");
  }
}

DensityMatrix::DensityMatrix(SpaceLayout layout, CMatrix matrix)
    : DensityMatrix(std::optional<SpaceLayout>(layout), std::move(matrix), true) {}

DensityMatrix::DensityMatrix(CMatrix matrix)
    : DensityMatrix(std::nullopt, std::move(matrix), true) {}

DensityMatrix DensityMatrix::unchecked(std::optional<SpaceLayout> layout, CMatrix matrix) {
  return DensityMatrix(layout, std::move(matrix), false);
}

DensityMatrix DensityMatrix::pure(const SpaceLayout& layout, const CVector& ket) {
  return DensityMatrix(layout, projector(ket, layout).matrix());
}

double DensityMatrix::trace_defect() const { return std::abs(matrix_.trace() - Complex(1.0)); }

double DensityMatrix::hermiticity_defect() const { return max_abs(matrix_ - matrix_.adjoint()); }

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Builders

CVector basis_ket(const SpaceLayout& layout, Level z1, Level z2, int n) {
  CVector v = CVector::Zero(layout.dim());
  v(layout.index(z1, z2, n)) = 1.0;
  return v;
}

Operator embed_atom_op(int atom, Level bra, Level ket, const SpaceLayout& layout) {
  if (atom != 1 && atom != 2) {
    throw InvalidArgument("atom index must be 1 or 2, got " + std::to_string(atom));
  }
  level_index(bra);
  level_index(ket);
  CMatrix m = CMatrix::Zero(layout.dim(), layout.dim());
  constexpr Level levels[] = {Level::g, Level::f, Level::e};
  for (Level other : levels) {
    for (int n = 0; n <= layout.n_max(); ++n) {
      const int row = atom == 1 ? layout.index(bra, other, n) : layout.index(other, bra, n);
      const int col = atom == 1 ? layout.index(ket, other, n) : layout.index(other, ket, n);
      m(row, col) = 1.0;
    }
  }
  return Operator(layout, std::move(m));
}

Operator annihilation(const SpaceLayout& layout) {
  CMatrix m = CMatrix::Zero(layout.dim(), layout.dim());
  constexpr Level levels[] = {Level::g, Level::f, Level::e};
  for (Level z1 : levels) {
    for (Level z2 : levels) {
      for (int n = 1; n <= layout.n_max(); ++n) {
        m(layout.index(z1, z2, n - 1), layout.index(z1, z2, n)) = std::sqrt(static_cast<double>(n));
      }
    }
  }
  return Operator(layout, std::move(m));
}

Complex expectation(const DensityMatrix& rho, const Operator& obs) {
  if (rho.dim() != obs.dim()) throw LayoutMismatch("expectation: dimension mismatch");
  if (rho.layout() && obs.layout() && !(*rho.layout() == *obs.layout())) {
    throw LayoutMismatch("expectation: layout mismatch");
  }
  // tr(rho O) = sum_ij rho_ij O_ji
  return (rho.matrix().cwiseProduct(obs.matrix().transpose())).sum();
}

Operator projector(const CVector& ket, const SpaceLayout& layout) {
  if (ket.size() != layout.dim()) throw LayoutMismatch("projector: ket dimension mismatch");
  const double norm = ket.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw InvalidArgument("projector: ket not normalized (norm " + std::to_string(norm) + ")");
  }
  return Operator(layout, ket * ket.adjoint());
}

}  // namespace sqcqed
