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

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string_view>

namespace sqcqed {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Internal levels of a Lambda atom. The numeric value is the level's index
/// inside one atomic factor.
enum class Level : int { g = 0, f = 1, e = 2 };

/// Parses "g", "f" or "e".
Level parse_level(std::string_view label);
char level_label(Level z);

/// Composite space atom 1 (x) atom 2 (x) truncated boson mode.
///
/// Index ordering is atom1-major, then atom2, then Fock:
///
///     index(z1, z2, n) = 3 (n_max + 1) z1 + (n_max + 1) z2 + n
///
/// with g = 0, f = 1, e = 2 and n in [0, n_max].
class SpaceLayout {
 public:
  static constexpr int atom_dim = 3;

  explicit SpaceLayout(int n_max);

  int n_max() const noexcept { return n_max_; }
  int fock_dim() const noexcept { return n_max_ + 1; }
  int dim() const noexcept { return atom_dim * atom_dim * fock_dim(); }

  int index(Level z1, Level z2, int n) const;

  struct Labels {
    Level z1;
    Level z2;
    int n;
    bool operator==(const Labels&) const = default;
  };
  Labels labels(int index) const;

  bool operator==(const SpaceLayout&) const = default;

 private:
  int n_max_;
};

/// Dense square operator. The layout is absent for operators on spaces that are
/// not the composite atom-atom-mode space (e.g. the 4-dimensional ground
/// manifold of the effective model).
class Operator {
 public:
  Operator(SpaceLayout layout, CMatrix matrix);
  explicit Operator(CMatrix matrix);

  static Operator zero(const SpaceLayout& layout);
  static Operator identity(const SpaceLayout& layout);

  const CMatrix& matrix() const noexcept { return matrix_; }
  const std::optional<SpaceLayout>& layout() const noexcept { return layout_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  Operator adjoint() const;

  /// max |A - A^dagger| elementwise.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Operator lhs, Complex s) { return lhs *= s; }
  friend Operator operator*(Complex s, Operator rhs) { return rhs *= s; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);

 private:
  std::optional<SpaceLayout> layout_;
  CMatrix matrix_;
};

/// Throws LayoutMismatch unless the two operands live on the same space.
void require_compatible(const Operator& a, const Operator& b);

/// Validated density matrix: trace 1 within 1e-9 and Hermitian within 1e-10.
/// Positivity is monitored (min_eigenvalue), never enforced.
class DensityMatrix {
 public:
  static constexpr double trace_tolerance = 1e-9;
  static constexpr double hermiticity_tolerance = 1e-10;

  DensityMatrix(SpaceLayout layout, CMatrix matrix);
  explicit DensityMatrix(CMatrix matrix);

  /// No validation; used for integrator output whose drift is reported
  /// separately.
  static DensityMatrix unchecked(std::optional<SpaceLayout> layout, CMatrix matrix);

  /// |ket><ket| for a normalized ket.
  static DensityMatrix pure(const SpaceLayout& layout, const CVector& ket);

  const CMatrix& matrix() const noexcept { return matrix_; }
  const std::optional<SpaceLayout>& layout() const noexcept { return layout_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  double trace_defect() const;
  double hermiticity_defect() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  DensityMatrix(std::optional<SpaceLayout> layout, CMatrix matrix, bool validate);

  std::optional<SpaceLayout> layout_;
  CMatrix matrix_;
};

/// Standard basis vector |z1, z2, n>.
CVector basis_ket(const SpaceLayout& layout, Level z1, Level z2, int n);

/// |bra>_k<ket| on atom k (1 or 2), identity on the other atom and the mode.
Operator embed_atom_op(int atom, Level bra, Level ket, const SpaceLayout& layout);

/// Mode lowering operator; <n-1|a|n> = sqrt(n). The top Fock level is an
/// absorbing truncation boundary (a^dagger |n_max> = 0).
Operator annihilation(const SpaceLayout& layout);

/// tr(rho obs). The imaginary part is kept for diagnostics.
Complex expectation(const DensityMatrix& rho, const Operator& obs);

/// |ket><ket|; the ket must be normalized within 1e-12.
Operator projector(const CVector& ket, const SpaceLayout& layout);

/// Commutator AB - BA.
Operator commutator(const Operator& a, const Operator& b);

/// Max-norm of a matrix (largest elementwise modulus).
double max_abs(const CMatrix& m);

}  // namespace sqcqed
