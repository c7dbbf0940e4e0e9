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


#include "sqcqed/errors.hpp"
#include "sqcqed/hilbert.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace sqcqed;

TEST_CASE("index and labels form a bijection") {
  for (int n_max : {1, 2, 4, 7}) {
    const SpaceLayout layout(n_max);
    CHECK(layout.dim() == 9 * (n_max + 1));
    std::set<int> seen;
    for (int i = 0; i < layout.dim(); ++i) {
      const auto l = layout.labels(i);
      CHECK(layout.index(l.z1, l.z2, l.n) == i);
      seen.insert(i);
    }
    CHECK(seen.size() == static_cast<std::size_t>(layout.dim()));
  }
}

TEST_CASE("index follows the atom1, atom2, photon ordering") {
  const SpaceLayout layout(4);
  CHECK(layout.index(Level::g, Level::g, 0) == 0);
  CHECK(layout.index(Level::g, Level::g, 3) == 3);
  CHECK(layout.index(Level::g, Level::f, 0) == 5);
  CHECK(layout.index(Level::f, Level::g, 0) == 15);
  CHECK(layout.index(Level::e, Level::e, 4) == 44);
}

TEST_CASE("layout rejects bad input") {
  CHECK_THROWS_AS(SpaceLayout(0), InvalidArgument);
  const SpaceLayout layout(2);
  CHECK_THROWS_AS(layout.index(Level::g, Level::g, 3), InvalidArgument);
  CHECK_THROWS_AS(layout.labels(27), InvalidArgument);
  CHECK_THROWS_AS(parse_level("x"), InvalidArgument);
  CHECK(parse_level("e") == Level::e);
  CHECK(level_label(Level::f) == 'f');
}

TEST_CASE("embedded projector trace counts the untouched factors") {
  const SpaceLayout layout(4);
  // |e><e| on atom 1 leaves 3 atom-2 levels times 5 Fock states.
  CHECK(embed_atom_op(1, Level::e, Level::e, layout).matrix().trace().real() == doctest::Approx(15.0));
  CHECK(embed_atom_op(2, Level::g, Level::f, layout).matrix().trace().real() == doctest::Approx(0.0));
  CHECK_THROWS_AS(embed_atom_op(3, Level::g, Level::g, layout), InvalidArgument);
}

TEST_CASE("embedding commutes with the adjoint and acts locally") {
  const SpaceLayout layout(2);
  const Level all[] = {Level::g, Level::f, Level::e};
  for (Level a : all) {
    for (Level b : all) {
      const Operator o1 = embed_atom_op(1, a, b, layout);
      CHECK(max_abs(o1.adjoint().matrix() - embed_atom_op(1, b, a, layout).matrix()) == 0.0);
      for (Level c : all) {
        for (Level d : all) {
          CHECK(max_abs(commutator(o1, embed_atom_op(2, c, d, layout)).matrix()) == 0.0);
        }
      }
      CHECK(max_abs(commutator(o1, annihilation(layout)).matrix()) == 0.0);
    }
  }
}

TEST_CASE("annihilation lowers Fock states with sqrt(n)") {
  const SpaceLayout layout(4);
  const Operator a = annihilation(layout);
  const CVector out = a.matrix() * basis_ket(layout, Level::f, Level::e, 3);
  const CVector expected = std::sqrt(3.0) * basis_ket(layout, Level::f, Level::e, 2);
  CHECK(max_abs(out - expected) < 1e-15);
  CHECK(max_abs(a.matrix() * basis_ket(layout, Level::g, Level::g, 0)) == 0.0);
}

TEST_CASE("canonical commutator holds below the truncation edge") {
  const SpaceLayout layout(4);
  const Operator a = annihilation(layout);
  const CMatrix c = commutator(a, a.adjoint()).matrix();
  for (int i = 0; i < layout.dim(); ++i) {
    const double expected = layout.labels(i).n == layout.n_max() ? -layout.n_max() : 1.0;
    CHECK(c(i, i).real() == doctest::Approx(expected));
  }
  CHECK((c - CMatrix(c.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("operators of different layouts do not mix") {
  const Operator a2 = annihilation(SpaceLayout(2));
  const Operator a3 = annihilation(SpaceLayout(3));
  CHECK_THROWS_AS(a2 + a3, LayoutMismatch);
  CHECK_THROWS_AS(a2 * a3, LayoutMismatch);
  const DensityMatrix rho = DensityMatrix::pure(SpaceLayout(3), basis_ket(SpaceLayout(3), Level::g, Level::g, 1));
  CHECK_THROWS_AS(expectation(rho, a2), LayoutMismatch);
}

TEST_CASE("density matrices are validated on construction") {
  const SpaceLayout layout(1);
  CMatrix m = CMatrix::Identity(layout.dim(), layout.dim()) / layout.dim();
  CHECK_NOTHROW(DensityMatrix(layout, m));
  CHECK_THROWS_AS(DensityMatrix(layout, 2.0 * m), InvalidArgument);
  CMatrix skew = m;
  skew(0, 1) = Complex(0.0, 1e-6);
  CHECK_THROWS_AS(DensityMatrix(layout, skew), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(SpaceLayout(2), m), LayoutMismatch);
  CHECK(DensityMatrix(layout, m).min_eigenvalue() == doctest::Approx(1.0 / layout.dim()));
}

TEST_CASE("expectation of the number operator") {
  const SpaceLayout layout(4);
  const Operator a = annihilation(layout);
  const auto rho = DensityMatrix::pure(layout, basis_ket(layout, Level::e, Level::g, 3));
  CHECK(expectation(rho, a.adjoint() * a).real() == doctest::Approx(3.0));
  CHECK(std::abs(expectation(rho, a)) == 0.0);
}

TEST_CASE("projector needs a normalized ket") {
  const SpaceLayout layout(1);
  const CVector k = basis_ket(layout, Level::f, Level::f, 1);
  CHECK(projector(k, layout).matrix().trace().real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(projector(2.0 * k, layout), InvalidArgument);
}
