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
#include "sqcqed/observables.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sqcqed;

TEST_CASE("Bell states are orthonormal") {
  const BellBasis b(SpaceLayout(2));
  const CMatrix B = b.ground_matrix();
  CHECK(max_abs(B.adjoint() * B - CMatrix::Identity(4, 4)) < 1e-15);
  CHECK(std::abs(b.dark.dot(b.phi_e)) < 1e-15);
  CHECK(std::abs(b.e_plus.dot(b.e_minus)) < 1e-15);
  CHECK(std::abs(b.psi_minus_1.dot(b.psi_minus)) == 0.0);
}

TEST_CASE("singlet projector annihilates the triplet") {
  const SpaceLayout layout(1);
  const BellBasis b(layout);
  CHECK(max_abs(projector(b.psi_minus, layout).matrix() * b.psi_plus) < 1e-15);
  const Operator P = projector(basis_ket(layout, Level::g, Level::g, 0), layout);
  CHECK(max_abs((P * P).matrix() - P.matrix()) == 0.0);
}

TEST_CASE("singlet fidelity") {
  const SpaceLayout layout(2);
  const BellBasis b(layout);
  const Fidelity target = fidelity_singlet(DensityMatrix::pure(layout, b.psi_minus));
  CHECK(target.F == doctest::Approx(1.0));
  CHECK(target.delta == doctest::Approx(0.0).scale(1.0));

  const Fidelity start = fidelity_singlet(singlet_complement_state(layout));
  CHECK(start.F == doctest::Approx(0.0).scale(1.0));
  CHECK(start.delta == doctest::Approx(1.0));

  CMatrix mixed = CMatrix::Zero(layout.dim(), layout.dim());
  for (Level z1 : {Level::g, Level::f, Level::e})
    for (Level z2 : {Level::g, Level::f, Level::e}) {
      const int i = layout.index(z1, z2, 0);
      mixed(i, i) = 1.0 / 9.0;
    }
  // Uniform over all nine atomic product states; the singlet carries 1/9.
  CHECK(fidelity_singlet(DensityMatrix(layout, mixed)).F == doctest::Approx(1.0 / 9.0));

  const CMatrix B = b.ground_matrix();
  const CMatrix ground_mixed = B * B.adjoint() / 4.0;
  CHECK(fidelity_singlet(DensityMatrix(layout, ground_mixed)).F == doctest::Approx(0.25));
}

TEST_CASE("fidelity sums the singlet over photon number") {
  const SpaceLayout layout(2);
  const BellBasis b(layout);
  const Fidelity f = fidelity_singlet(DensityMatrix::pure(layout, b.psi_minus_1));
  CHECK(f.F == doctest::Approx(1.0));
  CHECK(f.strict == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("ground-manifold states") {
  const DensityMatrix rho = singlet_complement_ground_state();
  CHECK(rho.dim() == 4);
  CHECK(fidelity_singlet(rho).delta == doctest::Approx(1.0));
  CHECK(fidelity_singlet(DensityMatrix(CMatrix::Identity(4, 4) / 4.0)).F == doctest::Approx(0.25));
  CHECK_THROWS(fidelity_singlet(DensityMatrix(CMatrix::Identity(3, 3) / 3.0)));
}

TEST_CASE("vacuum quadratures") {
  const SpaceLayout layout(6);
  const auto vac = DensityMatrix::pure(layout, basis_ket(layout, Level::g, Level::g, 0));
  const QuadratureStats q0 = quadrature_stats(vac, 0.0, std::numbers::pi);
  CHECK(q0.var_X1 == doctest::Approx(0.25));
  CHECK(q0.var_X2 == doctest::Approx(0.25));
  CHECK(q0.product == doctest::Approx(0.25));

  const QuadratureStats q1 = quadrature_stats(vac, 1.0, std::numbers::pi);
  CHECK(q1.var_X1 == doctest::Approx(0.25 * std::exp(2.0)));
  CHECK(q1.var_X2 == doctest::Approx(0.25 * std::exp(-2.0)));
}

TEST_CASE("Fock-state quadratures") {
  const SpaceLayout layout(6);
  for (int n : {0, 1, 2}) {
    for (double r : {0.0, 0.5, 2.0}) {
      const auto rho = DensityMatrix::pure(layout, basis_ket(layout, Level::g, Level::g, n));
      const QuadratureStats q = quadrature_stats(rho, r, 2.0);
      CHECK(q.product == doctest::Approx(0.25 * (2 * n + 1)));
      CHECK(q.var_X1 / q.var_X2 == doctest::Approx(std::exp(4.0 * r)));
    }
  }
}

TEST_CASE("uncertainty prediction") {
  CHECK(uncertainty_prediction(0, 1.0, 3.0, 1.0).product == doctest::Approx(0.25));
  CHECK(uncertainty_prediction(1, 0.5, 2.0 * std::log(2.0), 0.7).product == doctest::Approx(0.5));
  CHECK(uncertainty_prediction(2, 1.0, 0.0, 1.0).var_X1 == doctest::Approx(9.236320123663312).epsilon(1e-14));
  CHECK_THROWS(uncertainty_prediction(-1, 1.0, 0.0, 0.0));
}

TEST_CASE("decaying Fock state follows the uncertainty prediction") {
  const double kappa = 0.8;
  for (int n_s : {1, 2}) {
    const SpaceLayout layout(n_s + 4);
    const HamiltonianModel H{Operator::zero(layout), {}};
    const DissipatorSet D{DissipatorTerm::standard(std::sqrt(kappa) * annihilation(layout))};
    std::vector<double> times;
    for (int i = 0; i < 10; ++i) times.push_back(i * 0.6);
    StepperConfig s;
    s.atol = 1e-12;
    s.rtol = 1e-10;
    evolve_observed(DensityMatrix::pure(layout, basis_ket(layout, Level::g, Level::g, n_s)), times, H, D, s,
                    [&](double t, const DensityMatrix& rho) {
                      const QuadratureStats q = quadrature_stats(rho, 1.0, std::numbers::pi);
                      const QuadratureStats p = uncertainty_prediction(n_s, kappa, t, 1.0);
                      CHECK(std::abs(q.var_X1 - p.var_X1) <= 1e-7);
                      CHECK(std::abs(q.var_X2 - p.var_X2) <= 1e-7);
                      CHECK(q.product >= 0.25 - 1e-9);
                      // <a^dagger a> decays as n_s e^{-kappa t}.
                      const Operator a = annihilation(layout);
                      CHECK(std::abs(expectation(rho, a.adjoint() * a).real() - n_s * std::exp(-kappa * t)) <= 1e-8);
                    });
  }
}
