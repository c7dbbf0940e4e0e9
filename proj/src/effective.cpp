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

#include "sqcqed/effective.hpp"

#include "sqcqed/errors.hpp"
#include "sqcqed/observables.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <sstream>

namespace sqcqed {

namespace {

constexpr Complex I{0.0, 1.0};

void require_standard(const DissipatorSet& D, const char* where) {
  for (const auto& term : D) {
    if (term.kind() != DissipatorTerm::Kind::standard) {
      throw InvalidArgument(std::string(where) + ": squeezed-pair dissipators are not supported");
    }
  }
}

std::vector<int> indices_with_excitation(const SpaceLayout& layout, int count) {
  std::vector<int> out;
  for (int i = 0; i < layout.dim(); ++i) {
    const auto l = layout.labels(i);
    const int n = (l.z1 == Level::e) + (l.z2 == Level::e) + l.n;
    if (n == count) out.push_back(i);
  }
  return out;
}

CMatrix rows_of(const CMatrix& m, const std::vector<int>& rows) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

CMatrix cols_of(const CMatrix& m, const std::vector<int>& cols) {
  CMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  return out;
}

CMatrix outer(const CVector& x, const CVector& y) { return x * y.adjoint(); }

CVector unit(int i) {
  CVector v = CVector::Zero(4);
  v[i] = 1.0;
  return v;
}

}  // namespace

DissipatorSet EffectiveModel::dissipators() const {
  DissipatorSet out;
  for (std::size_t i = 0; i < L_eff.size(); ++i) {
    out.push_back(DissipatorTerm::standard(L_eff[i], i < labels.size() ? labels[i] : std::string{}));
  }
  return out;
}

Operator build_no_jump(const Operator& H_e, const DissipatorSet& D) {
  require_standard(D, "build_no_jump");
  Operator out = H_e;
  for (const auto& term : D) {
    require_compatible(H_e, term.op());
    out -= (0.5 * I) * (term.op().adjoint() * term.op());
  }
  return out;
}

EliminationInputs elimination_inputs(const SystemParams& params, const SpaceLayout& layout,
                                     HamiltonianVariant variant) {
  if (variant != HamiltonianVariant::squeezed_rwa && variant != HamiltonianVariant::time_averaged) {
    throw InvalidArgument("elimination_inputs: variant must be squeezed_rwa or time_averaged");
  }
  SystemParams undriven = params;
  undriven.Omega = 0.0;
  const Operator H_g = build_hamiltonian(variant, undriven, layout).static_part;
  undriven.Omega_MW = 0.0;
  const Operator N = excitation_number(layout);
  const Operator H_e =
      build_hamiltonian(variant, undriven, layout).static_part + params.detunings.beta * N;
  Operator v_plus = Operator::zero(layout);
  v_plus += params.Omega / 2.0 * embed_atom_op(1, Level::e, Level::g, layout);
  v_plus -= params.Omega / 2.0 * embed_atom_op(2, Level::e, Level::g, layout);
  return {H_g, H_e, v_plus, build_collapse_set(CollapseVariant::squeezed, params, layout),
          params.detunings.beta};
}

EffectiveModel reiter_sorensen(const Operator& H_g, const Operator& H_e, const Operator& v_plus,
                               const DissipatorSet& D, double beta) {
  if (!H_e.layout()) throw InvalidArgument("reiter_sorensen: H_e needs a layout");
  require_compatible(H_g, H_e);
  require_compatible(v_plus, H_e);
  const SpaceLayout& layout = *H_e.layout();
  const std::vector<int> excited = indices_with_excitation(layout, 1);

  const Operator H_nh = build_no_jump(H_e, D);
  CMatrix block = cols_of(rows_of(H_nh.matrix(), excited), excited);
  block -= beta * CMatrix::Identity(block.rows(), block.cols());

  Eigen::ComplexEigenSolver<CMatrix> eig(block, false);
  const auto& lambda = eig.eigenvalues();
  Eigen::Index k_min = 0;
  lambda.cwiseAbs().minCoeff(&k_min);
  if (std::abs(lambda[k_min]) < 1e-12) {
    std::ostringstream msg;
    msg << "resolvent (H_NH - beta)^{-1} is singular: excited eigenvalue " << lambda[k_min];
    throw SingularResolventError(msg.str(), lambda[k_min]);
  }
  const CMatrix R = block.partialPivLu().inverse();

  const CMatrix B = BellBasis(layout).ground_matrix();
  const CMatrix Vp = rows_of(v_plus.matrix(), excited) * B;  // excited x 4
  const CMatrix X = Vp.adjoint() * R * Vp;

  EffectiveModel out{Operator(CMatrix(B.adjoint() * H_g.matrix() * B - 0.5 * (X + X.adjoint()))),
                     {},
                     {},
                     EffectiveSource::numeric,
                     false,
                     {}};
  for (const auto& term : D) {
    const CMatrix L = cols_of(term.op().matrix(), excited);
    out.L_eff.emplace_back(CMatrix(B.adjoint() * L * R * Vp));
    out.labels.push_back(term.label());
  }

  const double drive = v_plus.matrix().cwiseAbs().maxCoeff();
  const double gap = std::abs(lambda[k_min]);
  if (drive > 0.1 * gap) {
    std::ostringstream msg;
    msg << "drive " << drive << " is not small against the smallest excited-state gap " << gap
        << "; effective operators may be inaccurate";
    out.warnings.push_back(msg.str());
  }
  return out;
}

ClosedFormCoefficients closed_form_coefficients(const SystemParams& p, bool corrected) {
  p.validate();
  const Detunings& d = p.detunings;
  const double gamma = p.gamma();
  const double kappa = p.kappa;
  ClosedFormCoefficients c;
  c.corrected = corrected;
  c.C_s = p.squeezed_cooperativity();
  if (!(c.C_s > 0.0)) throw InvalidArgument("closed_form_effective: C_s must be > 0");
  c.shift = corrected ? counter_rotating_shift(p) : 0.0;
  const double Df = d.Delta_f - 2.0 * c.shift;
  const Complex half_i = 0.5 * I;

  c.Delta_t_e = (d.Delta_e + d.Delta_f - d.beta) / gamma - half_i;
  c.Delta_t_0 = (d.Delta_e - d.beta) / gamma - half_i;
  c.Delta_t_1 = (d.Delta_e + Df - d.beta) / gamma - half_i;
  c.omega_t_1 = (d.omega_s + Df - d.beta) / kappa - half_i;
  c.omega_t_2 = (d.omega_s + 2.0 * Df - d.beta) / kappa - half_i;

  auto denominator = [&](Complex omega_t, Complex Delta_t, int m) {
    const Complex den = omega_t * Delta_t - static_cast<double>(m) * c.C_s;
    if (std::abs(den) < 1e-14 * (1.0 + m * c.C_s)) {
      throw InvalidArgument("closed_form_effective: vanishing denominator omega~ Delta~ - m C_s");
    }
    return den;
  };
  if (std::abs(c.Delta_t_e) < 1e-300) throw InvalidArgument("closed_form_effective: Delta~_e = 0");
  c.gamma_eff_0 = 1.0 / c.Delta_t_e;
  const Complex den1 = denominator(c.omega_t_1, c.Delta_t_0, 1);
  const Complex den2 = denominator(c.omega_t_2, c.Delta_t_1, 2);
  c.gamma_eff_1 = c.omega_t_1 / den1;
  c.gamma_eff_2 = c.omega_t_2 / den2;
  c.kappa_eff_1 = std::sqrt(c.C_s) / den1;
  c.kappa_eff_2 = std::sqrt(2.0 * c.C_s) / den2;

  c.r_g = p.Omega * std::sqrt(p.gamma_g) / (4.0 * gamma);
  c.r_f = p.Omega * std::sqrt(p.gamma_f) / (4.0 * gamma);
  c.r_as = p.Omega / (2.0 * std::sqrt(gamma));
  return c;
}

EffectiveModel closed_form_effective(const SystemParams& p, bool corrected,
                                     bool include_light_shift) {
  const ClosedFormCoefficients c = closed_form_coefficients(p, corrected);
  const CVector pp = unit(kPhiPlus), pm = unit(kPhiMinus), sp = unit(kPsiPlus), sm = unit(kPsiMinus);
  const Complex g0 = c.gamma_eff_0, g1 = c.gamma_eff_1, g2 = c.gamma_eff_2;
  const CVector phi_sum = pp + pm;
  // Row vectors gamma_0 <psi+| +- gamma_2 <psi-|, stored as kets for outer().
  const CVector from_sum = std::conj(g0) * sp + std::conj(g2) * sm;
  const CVector from_diff = std::conj(g0) * sp - std::conj(g2) * sm;
  const CMatrix phi_phi = g1 * outer(phi_sum, phi_sum);

  EffectiveModel out{Operator(CMatrix::Zero(4, 4)), {}, {}, EffectiveSource::closed_form, corrected, {}};
  out.L_eff.emplace_back(CMatrix(c.r_g * (outer(sp + sm, from_sum) + phi_phi)));
  out.L_eff.emplace_back(CMatrix(-c.r_g * (outer(sp - sm, from_diff) + phi_phi)));
  out.L_eff.emplace_back(CMatrix(c.r_f * (outer(pp - pm, from_sum) + g1 * outer(sp - sm, phi_sum))));
  out.L_eff.emplace_back(CMatrix(-c.r_f * (outer(pp - pm, from_diff) + g1 * outer(sp + sm, phi_sum))));
  out.L_eff.emplace_back(CMatrix(c.r_as * (c.kappa_eff_1 * outer(sm, phi_sum) -
                                           c.kappa_eff_2 / std::numbers::sqrt2 * outer(pp - pm, sm))));
  out.labels = {"L_g1", "L_g2", "L_f1", "L_f2", "L_as"};

  const double Df_prime = p.detunings.Delta_f - c.shift;
  CMatrix H = Df_prime * (CMatrix::Identity(4, 4) - outer(pp, pm) - outer(pm, pp));
  H += p.Omega_MW * (outer(sp, pp) + outer(pp, sp));
  if (include_light_shift) {
    const double scale = p.Omega * p.Omega / (4.0 * p.gamma());
    H -= scale * (g0.real() * outer(sp, sp) + g2.real() * outer(sm, sm) +
                  g1.real() * outer(phi_sum, phi_sum));
  }
  out.H_eff = Operator(H);
  return out;
}

RateSummary rates(const SystemParams& p, bool corrected) {
  RateSummary s;
  s.coefficients = closed_form_coefficients(p, corrected);
  const auto& c = s.coefficients;
  const double gamma = p.gamma();
  const double pre = p.Omega * p.Omega / (4.0 * gamma * gamma);
  s.Gamma_in = pre * (p.gamma_g * std::norm(c.gamma_eff_0) + 2.0 * p.gamma_f * std::norm(c.gamma_eff_1) +
                      4.0 * gamma * std::norm(c.kappa_eff_1));
  s.Gamma_out = pre * ((p.gamma_g + 2.0 * p.gamma_f) * std::norm(c.gamma_eff_2) +
                       2.0 * gamma * std::norm(c.kappa_eff_2));
  s.ratio = s.Gamma_in / s.Gamma_out;
  s.delta_pred = 1.0 / (1.0 + s.ratio / 3.0);
  s.C_s = c.C_s;
  const double r_p = p.squeeze.resolved_r_p();
  s.delta_asym = 3.0 * gamma / (p.gamma_g * std::exp(2.0 * r_p) * p.cooperativity());
  s.delta_asym_Cs = 3.0 * gamma / (4.0 * p.gamma_g * c.C_s);
  return s;
}

}  // namespace sqcqed
