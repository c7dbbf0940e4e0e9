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

#include "sqcqed/observables.hpp"

#include "sqcqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqcqed {

namespace {

constexpr Complex I{0.0, 1.0};
const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

BellBasis::BellBasis(const SpaceLayout& layout) {
  auto ket = [&](Level z1, Level z2, int n) { return basis_ket(layout, z1, z2, n); };
  using L = Level;
  auto pair = [&](L a1, L a2, L b1, L b2, double sign, int n) -> CVector {
    return inv_sqrt2 * (ket(a1, a2, n) + sign * ket(b1, b2, n));
  };
  phi_plus = pair(L::g, L::g, L::f, L::f, 1.0, 0);
  phi_minus = pair(L::g, L::g, L::f, L::f, -1.0, 0);
  psi_plus = pair(L::g, L::f, L::f, L::g, 1.0, 0);
  psi_minus = pair(L::g, L::f, L::f, L::g, -1.0, 0);
  dark = pair(L::f, L::e, L::e, L::f, -1.0, 0);
  phi_e = pair(L::f, L::e, L::e, L::f, 1.0, 0);
  e_plus = inv_sqrt2 * (phi_e + ket(L::f, L::f, 1));
  e_minus = inv_sqrt2 * (phi_e - ket(L::f, L::f, 1));
  phi_plus_1 = pair(L::g, L::g, L::f, L::f, 1.0, 1);
  phi_minus_1 = pair(L::g, L::g, L::f, L::f, -1.0, 1);
  psi_plus_1 = pair(L::g, L::f, L::f, L::g, 1.0, 1);
  psi_minus_1 = pair(L::g, L::f, L::f, L::g, -1.0, 1);
}

CMatrix BellBasis::ground_matrix() const {
  CMatrix B(phi_plus.size(), 4);
  B.col(kPhiPlus) = phi_plus;
  B.col(kPhiMinus) = phi_minus;
  B.col(kPsiPlus) = psi_plus;
  B.col(kPsiMinus) = psi_minus;
  return B;
}

std::vector<std::pair<std::string, const CVector*>> BellBasis::named() const {
  return {{"phi_plus", &phi_plus},     {"phi_minus", &phi_minus},     {"psi_plus", &psi_plus},
          {"psi_minus", &psi_minus},   {"dark", &dark},               {"phi_e", &phi_e},
          {"e_plus", &e_plus},         {"e_minus", &e_minus},         {"phi_plus_1", &phi_plus_1},
          {"phi_minus_1", &phi_minus_1}, {"psi_plus_1", &psi_plus_1}, {"psi_minus_1", &psi_minus_1}};
}

Fidelity fidelity_singlet(const DensityMatrix& rho) {
  const CMatrix& m = rho.matrix();
  if (!rho.layout()) {
    if (rho.dim() != 4) {
      throw InvalidArgument("fidelity_singlet: state without layout must be 4-dimensional");
    }
    const double F = m(kPsiMinus, kPsiMinus).real();
    return {F, 1.0 - F, F};
  }
  const SpaceLayout& layout = *rho.layout();
  double F = 0.0;
  double strict = 0.0;
  for (int n = 0; n <= layout.n_max(); ++n) {
    const int gf = layout.index(Level::g, Level::f, n);
    const int fg = layout.index(Level::f, Level::g, n);
    // <S,n|rho|S,n> with |S> = (|gf> - |fg>)/sqrt2
    const double pop = 0.5 * (m(gf, gf) + m(fg, fg) - m(gf, fg) - m(fg, gf)).real();
    F += pop;
    if (n == 0) strict = pop;
  }
  return {F, 1.0 - F, strict};
}

DensityMatrix singlet_complement_state(const SpaceLayout& layout) {
  const BellBasis b(layout);
  const CMatrix m = (b.phi_plus * b.phi_plus.adjoint() + b.phi_minus * b.phi_minus.adjoint() +
                     b.psi_plus * b.psi_plus.adjoint()) /
                    3.0;
  return DensityMatrix(layout, m);
}

DensityMatrix singlet_complement_ground_state() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(kPhiPlus, kPhiPlus) = m(kPhiMinus, kPhiMinus) = m(kPsiPlus, kPsiPlus) = 1.0 / 3.0;
  return DensityMatrix(m);
}

std::pair<Operator, Operator> quadrature_operators(const SpaceLayout& layout, double r_p,
                                                   double theta_p) {
  const double pi = std::numbers::pi;
  const Complex u = std::exp(-I * (pi - theta_p) / 2.0) * std::cosh(r_p);
  const Complex v = std::exp(I * (pi + theta_p) / 2.0) * std::sinh(r_p);
  const Complex x1 = 0.5 * (u - v);
  const Complex x2 = 0.5 * (u + v);
  const Operator a = annihilation(layout);
  const Operator ad = a.adjoint();
  Operator X1 = x1 * a + std::conj(x1) * ad;
  Operator X2 = -I * (x2 * a - std::conj(x2) * ad);
  return {X1, X2};
}

QuadratureStats quadrature_stats(const DensityMatrix& rho, double r_p, double theta_p) {
  if (!rho.layout()) throw InvalidArgument("quadrature_stats: state needs a layout");
  const auto [X1, X2] = quadrature_operators(*rho.layout(), r_p, theta_p);
  auto variance = [&](const Operator& X) {
    const double mean = expectation(rho, X).real();
    return expectation(rho, X * X).real() - mean * mean;
  };
  const double v1 = variance(X1);
  const double v2 = variance(X2);
  return {v1, v2, std::sqrt(std::max(v1, 0.0) * std::max(v2, 0.0))};
}

QuadratureStats uncertainty_prediction(int n_s, double kappa, double t, double r_p) {
  if (n_s < 0) throw InvalidArgument("uncertainty_prediction: n_s must be >= 0");
  const double base = 0.25 * (2.0 * n_s * std::exp(-kappa * t) + 1.0);
  return {base * std::exp(2.0 * r_p), base * std::exp(-2.0 * r_p), base};
}

}  // namespace sqcqed
