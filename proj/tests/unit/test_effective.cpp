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


#include "sqcqed/config.hpp"
#include "sqcqed/effective.hpp"
#include "sqcqed/errors.hpp"
#include "sqcqed/experiments.hpp"
#include "sqcqed/observables.hpp"

#include <doctest.h>

#include <cmath>

using namespace sqcqed;

namespace {

SystemParams figure_params(double Omega, DetuningMode mode = DetuningMode::resonant) {
  return RunConfig{}.system_params(Omega, mode);
}

}  // namespace

TEST_CASE("no-jump Hamiltonian") {
  const SpaceLayout layout(2);
  const Operator H = 0.3 * (annihilation(layout).adjoint() * annihilation(layout));
  CHECK(max_abs(build_no_jump(H, {}).matrix() - H.matrix()) == 0.0);

  const double kappa = 0.6;
  const Operator a = annihilation(layout);
  const Operator nh = build_no_jump(H, {DissipatorTerm::standard(std::sqrt(kappa) * a)});
  CHECK(max_abs(nh.matrix() - (H.matrix() - Complex(0, kappa / 2) * (a.adjoint() * a).matrix())) < 1e-15);
  CHECK_THROWS_AS(build_no_jump(H, {DissipatorTerm::squeezed_pair(a, 1.0, 0.5)}), InvalidArgument);
}

TEST_CASE("no-jump spectrum of the cavity model is dissipative") {
  const SpaceLayout layout(2);
  const EliminationInputs in = elimination_inputs(figure_params(0.5), layout);
  Eigen::ComplexEigenSolver<CMatrix> eig(build_no_jump(in.H_e, in.D).matrix(), false);
  CHECK(eig.eigenvalues().imag().maxCoeff() <= 1e-12);
}

TEST_CASE("numeric elimination reproduces the closed forms") {
  const SystemParams p = figure_params(0.5);
  CHECK(effective_equivalence_residual(p, false) <= 1e-9);
  CHECK(effective_equivalence_residual(figure_params(0.5, DetuningMode::modified), true) <= 1e-9);
  for (const auto& q : random_elimination_params(2024, 10)) {
    CHECK(effective_equivalence_residual(q, false) <= 1e-9);
  }
}

TEST_CASE("random elimination parameters stay perturbative") {
  for (const auto& q : random_elimination_params(99, 20)) {
    const double g_s = bogoliubov_couplings(q.g, q.squeeze.r_p, q.squeeze.theta_p).g_s;
    CHECK(q.Omega / g_s <= 0.05);
    CHECK(q.detunings.mode == DetuningMode::resonant);
  }
  const auto a = random_elimination_params(5, 3), b = random_elimination_params(5, 3);
  CHECK(a[2].g == b[2].g);
}

TEST_CASE("effective Hamiltonian without drive leakage") {
  RunConfig c;
  const SystemParams p = c.system_params(1e-3, DetuningMode::resonant);
  const EffectiveModel m = closed_form_effective(p, false, false);
  const CMatrix& H = m.H_eff.matrix();
  const double Df = p.detunings.Delta_f;
  CHECK(H(kPhiPlus, kPhiMinus).real() == doctest::Approx(-Df));
  CHECK(H(kPsiPlus, kPhiPlus).real() == doctest::Approx(p.Omega_MW));
  CHECK(H(kPsiMinus, kPsiMinus).real() == doctest::Approx(Df));
  CHECK(m.H_eff.hermiticity_defect() <= 1e-15);
  CHECK(m.labels == std::vector<std::string>{"L_g1", "L_g2", "L_f1", "L_f2", "L_as"});
}

TEST_CASE("zero drive leaves the ground Hamiltonian") {
  SystemParams p = figure_params(0.5);
  p.Omega = 0.0;
  const SpaceLayout layout(2);
  const EliminationInputs in = elimination_inputs(p, layout);
  const EffectiveModel m = reiter_sorensen(in.H_g, in.H_e, in.v_plus, in.D, in.beta);
  for (const auto& L : m.L_eff) CHECK(max_abs(L.matrix()) == 0.0);
  const CMatrix B = BellBasis(layout).ground_matrix();
  CHECK(max_abs(m.H_eff.matrix() - B.adjoint() * in.H_g.matrix() * B) < 1e-14);
}

TEST_CASE("singular resolvent is named") {
  const SpaceLayout layout(2);
  const auto in = elimination_inputs(figure_params(0.5), layout);
  // Without couplings or decay every singly excited state sits exactly at beta.
  const Operator H_e = in.beta * excitation_number(layout);
  CHECK_THROWS_AS(reiter_sorensen(in.H_g, H_e, in.v_plus, {}, in.beta), SingularResolventError);
}

TEST_CASE("strong drive produces a warning") {
  const SpaceLayout layout(2);
  RunConfig c;
  c.r_p = 0.0;
  c.C = 0.5;
  const auto in = elimination_inputs(c.system_params(5.0, DetuningMode::resonant), layout);
  const EffectiveModel m = reiter_sorensen(in.H_g, in.H_e, in.v_plus, in.D, in.beta);
  CHECK_FALSE(m.warnings.empty());
}

TEST_CASE("closed-form coefficients against an independent evaluation") {
  const ClosedFormCoefficients k = closed_form_coefficients(figure_params(0.5), false);
  CHECK(k.C_s == doctest::Approx(2027.1563612245582).epsilon(1e-13));
  CHECK(k.gamma_eff_0.real() == doctest::Approx(0.5463156223463891).epsilon(1e-12));
  CHECK(k.gamma_eff_0.imag() == doctest::Approx(1.837579393717561).epsilon(1e-12));
  CHECK(k.gamma_eff_1.imag() == doctest::Approx(0.0002466205145464764).epsilon(1e-10));
  CHECK(k.gamma_eff_2.real() == doctest::Approx(-5.4988726817007664e-05).epsilon(1e-10));
  CHECK(k.gamma_eff_2.imag() == doctest::Approx(0.00012332138862981243).epsilon(1e-10));
  CHECK(k.kappa_eff_1.real() == doctest::Approx(-0.022207661007291102).epsilon(1e-12));
  CHECK(k.kappa_eff_2.real() == doctest::Approx(-0.01570428428221667).epsilon(1e-12));
  CHECK(k.kappa_eff_2.imag() == doctest::Approx(7.197061278411052e-07).epsilon(1e-8));
}

TEST_CASE("weak-drive limit of the tilded detunings") {
  // Delta_f grows with Omega, so -i/2 and gamma_eff_0 = 2i are reached only as Omega -> 0.
  const ClosedFormCoefficients k = closed_form_coefficients(figure_params(1e-9), false);
  CHECK(std::abs(k.Delta_t_e - Complex(0, -0.5)) < 1e-9);
  CHECK(std::abs(k.gamma_eff_0 - Complex(0, 2.0)) < 1e-8);
  CHECK(std::abs(k.omega_t_1 - Complex(0, -0.5)) < 1e-9);
}

TEST_CASE("effective rates reduce to the textbook limits at weak drive") {
  const SystemParams p = figure_params(1e-3);
  const EffectiveModel m = closed_form_effective(p, false);
  const RateSummary r = rates(p);
  const double gamma = p.gamma(), Om = p.Omega;
  const double g_rate = std::norm(r.coefficients.r_g * r.coefficients.gamma_eff_0);
  CHECK(g_rate == doctest::Approx(p.gamma_g * Om * Om / (4 * gamma * gamma)).epsilon(1e-6));
  const double leak = std::norm(r.coefficients.r_as * r.coefficients.kappa_eff_2) / 2.0;
  CHECK(leak == doctest::Approx(Om * Om / (16 * gamma * r.C_s)).epsilon(2e-3));
  CHECK(r.delta_pred == doctest::Approx(3.0 / (2.0 * r.C_s)).epsilon(2e-3));
  CHECK(r.ratio == doctest::Approx(2.0 * r.C_s).epsilon(2e-3));
  CHECK(m.L_eff.size() == 5);
}

TEST_CASE("rates at the figure parameters against an independent evaluation") {
  const RateSummary r = rates(figure_params(0.5));
  CHECK(r.Gamma_in == doctest::Approx(0.11497201096055613).epsilon(1e-12));
  CHECK(r.Gamma_out == doctest::Approx(3.082977740979779e-05).epsilon(1e-10));
  CHECK(r.delta_pred == doctest::Approx(0.00080380423148800127).epsilon(1e-10));
  CHECK(r.delta_asym_Cs == doctest::Approx(3.0 / (4.0 * 0.5 * r.C_s)));
}

TEST_CASE("rate ratio is independent of the drive strength at fixed detunings") {
  SystemParams p = figure_params(0.5);
  const RateSummary a = rates(p);
  p.Omega *= 2.0;
  const RateSummary b = rates(p);
  CHECK(b.Gamma_in / a.Gamma_in == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-12));
  CHECK(b.delta_pred == doctest::Approx(a.delta_pred).epsilon(1e-12));
}

TEST_CASE("without squeezing the asymptote reduces to 3 gamma / (gamma_g C)") {
  RunConfig c;
  c.r_p = 0.0;
  const RateSummary r = rates(c.system_params(0.5, DetuningMode::resonant));
  CHECK(r.delta_asym == doctest::Approx(3.0 / (0.5 * 20.0)));
  CHECK(r.C_s == doctest::Approx(20.0));
}

TEST_CASE("effective dynamics against an independent matrix-exponential evaluation") {
  StepperConfig s;
  s.atol = 1e-12;
  s.rtol = 1e-10;
  const auto curve = effective_infidelity(figure_params(0.5), {0.0, 50.0, 200.0, 500.0}, s);
  CHECK(curve.delta[0] == doctest::Approx(1.0));
  CHECK(curve.delta[1] == doctest::Approx(0.4439332612513085).epsilon(1e-8));
  CHECK(curve.delta[2] == doctest::Approx(0.039128218690997141).epsilon(1e-7));
  CHECK(curve.delta[3] == doctest::Approx(0.0012634133038549322).epsilon(1e-6));
  CHECK(effective_steady_infidelity(figure_params(0.5)) ==
        doctest::Approx(0.00098077267634888443).epsilon(1e-8));
}
