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
#include "sqcqed/lindblad.hpp"
#include "sqcqed/model.hpp"

#include <string>
#include <vector>

namespace sqcqed {

enum class EffectiveSource { numeric, closed_form };

/// Effective dynamics on the ground manifold, in the basis
/// {phi_plus, phi_minus, psi_plus, psi_minus} (see GroundIndex).
struct EffectiveModel {
  Operator H_eff;
  std::vector<Operator> L_eff;
  std::vector<std::string> labels;
  EffectiveSource source = EffectiveSource::closed_form;
  bool corrected = false;
  /// Non-fatal findings, e.g. drive strength outside the perturbative regime.
  std::vector<std::string> warnings;

  HamiltonianModel hamiltonian() const { return {H_eff, {}}; }
  DissipatorSet dissipators() const;
};

/// H_e - (i/2) sum_x L_x^dagger L_x. Squeezed-pair terms are not accepted.
Operator build_no_jump(const Operator& H_e, const DissipatorSet& D);

/// The pieces of the squeezed-frame model that enter the elimination.
struct EliminationInputs {
  /// Ground-manifold Hamiltonian: static part without the laser drive.
  Operator H_g;
  /// Hamiltonian without either drive, with beta added back on every
  /// excitation so that (H_e - beta) is the rotating-frame excited block.
  Operator H_e;
  /// Excitation part of the laser drive, (Omega/2) sum_k (-1)^{k-1} |e><g|_k.
  Operator v_plus;
  DissipatorSet D;
  double beta;
};

/// Splits the squeezed_rwa or time_averaged model into elimination inputs.
EliminationInputs elimination_inputs(const SystemParams& params, const SpaceLayout& layout,
                                     HamiltonianVariant variant = HamiltonianVariant::squeezed_rwa);

/// Numeric effective operators with R = (H_NH - beta)^{-1} on the one-excitation block:
///   H_eff = H_g - [v_plus^dagger R v_plus + h.c.] / 2,  L_x,eff = L_x R v_plus,
/// all projected onto the Bell ground basis. Throws SingularResolventError when
/// (H_NH - beta) has an eigenvalue of modulus below 1e-12.
EffectiveModel reiter_sorensen(const Operator& H_g, const Operator& H_e, const Operator& v_plus,
                               const DissipatorSet& D, double beta);

/// Closed-form coefficients of the effective operators. Primed (corrected)
/// values replace Delta_f by Delta_f - |g'_s|^2 / Delta_e in the tilded
/// detunings of the cavity and D branches.
struct ClosedFormCoefficients {
  bool corrected = false;
  double C_s = 0.0;
  /// |g'_s|^2 / (2 Delta_e) when corrected, else 0.
  double shift = 0.0;
  double r_g = 0.0, r_f = 0.0, r_as = 0.0;
  Complex Delta_t_e;  ///< (Delta_e + Delta_f - beta)/gamma - i/2
  Complex Delta_t_0, Delta_t_1;  ///< Delta~_{e,m-1} for m = 1, 2
  Complex omega_t_1, omega_t_2;  ///< omega~_{s,m}
  Complex gamma_eff_0, gamma_eff_1, gamma_eff_2;
  Complex kappa_eff_1, kappa_eff_2;
};

ClosedFormCoefficients closed_form_coefficients(const SystemParams& params, bool corrected);

/// Effective model assembled from the closed forms. Lindblad operators are
/// ordered L_g1, L_g2, L_f1, L_f2, L_as. With include_light_shift the
/// second-order energy shift -(Omega^2/4 gamma)[Re gamma_eff,0 |psi+><psi+|
/// + Re gamma_eff,2 |psi-><psi-| + Re gamma_eff,1 |phi+ + phi-><phi+ + phi-|]
/// is added to H_eff.
EffectiveModel closed_form_effective(const SystemParams& params, bool corrected,
                                     bool include_light_shift = true);

struct RateSummary {
  double Gamma_in = 0.0;
  double Gamma_out = 0.0;
  double ratio = 0.0;
  /// 1 / [1 + Gamma_in / (3 Gamma_out)].
  double delta_pred = 0.0;
  /// 3 gamma / (gamma_g e^{2 r_p} C).
  double delta_asym = 0.0;
  /// 3 gamma / (4 gamma_g C_s).
  double delta_asym_Cs = 0.0;
  double C_s = 0.0;
  ClosedFormCoefficients coefficients;
};

/// Pumping rate into the singlet and leakage out of it, from the closed forms:
///   Gamma_in  = Omega^2/(4 gamma^2) [gamma_g |g0|^2 + 2 gamma_f |g1|^2 + 4 gamma |k1|^2]
///   Gamma_out = Omega^2/(4 gamma^2) [(gamma_g + 2 gamma_f) |g2|^2 + 2 gamma |k2|^2]
RateSummary rates(const SystemParams& params, bool corrected = false);

}  // namespace sqcqed
