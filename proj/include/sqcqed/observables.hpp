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

#include <string>
#include <utility>
#include <vector>

namespace sqcqed {

/// Positions of the Bell states in the 4-dimensional ground-manifold basis used
/// by the effective model.
enum GroundIndex : int { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

/// Named states of the two-atom system. Ground-manifold states carry the
/// vacuum of the mode unless marked as one-photon copies.
///
///   phi_pm = (|gg> +- |ff>)/sqrt2,  psi_pm = (|gf> +- |fg>)/sqrt2
///   dark   = (|fe> - |ef>)|0>/sqrt2, phi_e = (|fe> + |ef>)|0>/sqrt2
///   e_pm   = (phi_e +- |ff>|1>)/sqrt2
struct BellBasis {
  CVector phi_plus, phi_minus, psi_plus, psi_minus;
  CVector dark, phi_e, e_plus, e_minus;
  CVector phi_plus_1, phi_minus_1, psi_plus_1, psi_minus_1;

  explicit BellBasis(const SpaceLayout& layout);

  /// d x 4 isometry with columns phi_plus, phi_minus, psi_plus, psi_minus.
  CMatrix ground_matrix() const;
  std::vector<std::pair<std::string, const CVector*>> named() const;
};

struct Fidelity {
  /// Atomic singlet population summed over photon number.
  double F;
  double delta;
  /// <psi_minus, 0| rho |psi_minus, 0>.
  double strict;
};

/// Singlet fidelity. Accepts full-space states (with layout) and
/// 4-dimensional ground-manifold states of the effective model.
Fidelity fidelity_singlet(const DensityMatrix& rho);

/// (I_ground - |psi_minus><psi_minus|)/3 on the atoms, vacuum in the mode.
DensityMatrix singlet_complement_state(const SpaceLayout& layout);
/// Same state on the 4-dimensional ground manifold.
DensityMatrix singlet_complement_ground_state();

struct QuadratureStats {
  double var_X1;
  double var_X2;
  /// Uncertainty product Delta X1 * Delta X2 = sqrt(var_X1 var_X2).
  double product;
};

/// X1 = x1 a + x1* a^dagger and X2 = -i (x2 a - x2* a^dagger), with
///   x1 = [e^{-i(pi - theta)/2} cosh r - e^{i(pi + theta)/2} sinh r] / 2
///   x2 = [e^{-i(pi - theta)/2} cosh r + e^{i(pi + theta)/2} sinh r] / 2.
std::pair<Operator, Operator> quadrature_operators(const SpaceLayout& layout, double r_p,
                                                   double theta_p);

/// Variances of X1, X2 in rho (a squeezed-frame state) and the uncertainty product.
QuadratureStats quadrature_stats(const DensityMatrix& rho, double r_p, double theta_p);

/// Fock state n_s decaying at rate kappa:
///   var_X1 = [2 n_s e^{-kappa t} + 1] e^{2 r_p} / 4, var_X2 = same with e^{-2 r_p},
///   product = [2 n_s e^{-kappa t} + 1] / 4.
QuadratureStats uncertainty_prediction(int n_s, double kappa, double t, double r_p);

}  // namespace sqcqed
