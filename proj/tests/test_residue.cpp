// Copyright 2026 The unilat Authors
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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "unilat/isometry.hpp"
#include "unilat/residue.hpp"
#include "unilat/rootsys.hpp"

using namespace unilat;

TEST_SUITE("residue") {
  TEST_CASE("residue of A1") {
    FiniteQuadraticModule r(parse_standard("A1"));
    CHECK(r.order() == 2);
    auto g = r.zero();
    g[0] = 1;
    CHECK(r.quadratic(g) == Rational(1, 4));
  }

  TEST_CASE("residue of A_n is cyclic") {
    for (int n = 1; n <= 7; ++n) {
      FiniteQuadraticModule r(standard_lattice("A", n));
      REQUIRE(r.divisors().size() == 1);
      CHECK(r.divisors()[0] == n + 1);
    }
  }

  TEST_CASE("residue of two orthogonal roots") {
    FiniteQuadraticModule r(parse_standard("Q0"));
    std::vector<Rational> vals;
    for (const auto& x : r.elements())
      if (!r.is_zero(x)) vals.push_back(r.bilinear(x, x));
    std::sort(vals.begin(), vals.end());
    CHECK(vals == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1, 2)});
  }

  TEST_CASE("modulus") {
    CHECK(modulus(parse_standard("I2"), {1, 1}) == 1);
    CHECK(modulus(parse_standard("A1"), {1}) == 2);
    CHECK(modulus(parse_standard("A2"), {1, -1}) == 3);
  }

  TEST_CASE("characteristic and exceptional vectors") {
    VectorList e = exceptional_vectors(parse_standard("I4"));
    CHECK(e.size() == 16);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (Int c : e.vec(i)) CHECK((c == 1 || c == -1));
    CharacteristicResult c = characteristic_vectors(parse_standard("I3"), 3);
    std::size_t norm3 = 0;
    for (std::size_t i = 0; i < c.vectors.size(); ++i) norm3 += c.vectors.norms[i] == 3;
    CHECK(norm3 == 8);
    VectorList z = exceptional_vectors(parse_standard("E8"));
    REQUIRE(z.size() == 1);
    CHECK(z.vec(0) == Vec(8, 0));
  }

  TEST_CASE("special vectors") {
    Lattice a2 = parse_standard("A2");
    auto s = special_vectors(a2, 6);
    CHECK(s.size() == 6);
    for (const auto& v : s) CHECK(modulus(a2, v) == 3);
    Lattice a4 = parse_standard("A4");
    CHECK(special_vectors(a4, 10).empty());
    auto t = special_vectors(a4, 20);
    REQUIRE(!t.empty());
    Lattice c = sublattice(a4, orthogonal_complement_basis(a4, {t[0]}));
    CHECK(c.rank() == 3);
    CHECK(c.is_even());
    CHECK(determinant(c) == 4);
  }

  TEST_CASE("overlattices") {
    Lattice d4 = parse_standard("D4");
    FiniteQuadraticModule r(d4);
    int odd_unimodular = 0;
    for (const auto& x : r.elements()) {
      if (r.is_zero(x)) continue;
      Lattice o = overlattice(d4, {r.lift(x)});
      CHECK(determinant(o) == 1);
      if (!o.is_even()) {
        ++odd_unimodular;
        CHECK(is_isometric(o, parse_standard("I4")));
      }
    }
    CHECK(odd_unimodular == 3);
    Lattice d8 = parse_standard("D8");
    FiniteQuadraticModule r8(d8);
    int even = 0;
    for (const auto& x : r8.elements())
      if (!r8.is_zero(x) && r8.norm_mod2(x) == 0) {
        Lattice o = overlattice(d8, {r8.lift(x)});
        CHECK(is_isometric(o, parse_standard("E8")));
        ++even;
      }
    CHECK(even == 2);
    CHECK(is_isometric(overlattice(d8, {}), d8));
  }

  TEST_CASE("gluing two roots") {
    Lattice a1 = parse_standard("A1");
    auto eta = anti_embedding(FiniteQuadraticModule(a1), FiniteQuadraticModule(a1), false);
    REQUIRE(eta);
    GlueResult g = glue_pair(a1, a1, *eta);
    CHECK(is_isometric(g.lattice, parse_standard("I2")));
    CHECK(oracle::determinant_identity(a1, a1, g.lattice, g.h_order));
    GlueResult t = glue_pair(a1, parse_standard("A2"), {});
    CHECK(is_isometric(t.lattice, parse_standard("A1+A2")));
  }

  TEST_CASE("splitting") {
    Lattice i3 = parse_standard("I3");
    Mat a(3, 1);
    a(0, 0) = a(1, 0) = a(2, 0) = 1;
    SplitResult s = split_pair(i3, a, sublattice(i3, a));
    CHECK(is_isometric(s.b, parse_standard("A2")));
    CHECK(s.h_order == 3);
    Lattice e8 = parse_standard("E8");
    Mat r(8, 1);
    r(0, 0) = 1;
    SplitResult t = split_pair(e8, r, sublattice(e8, r));
    CHECK(determinant(t.b) == 2);
    CHECK(is_isometric(t.b, parse_standard("E7")));
    Lattice ab = parse_standard("A2+D4");
    Mat f(6, 2);
    f(0, 0) = f(1, 1) = 1;
    SplitResult u = split_pair(ab, f, sublattice(ab, f));
    CHECK(u.h_order == 1);
    CHECK(is_isometric(u.b, parse_standard("D4")));
  }

  TEST_CASE("venkov minima") {
    Lattice a1 = parse_standard("A1");
    FiniteQuadraticModule r(a1);
    auto g = r.zero();
    CHECK(venkov_min(a1, r, g).nu == 0);
    g[0] = 1;
    CHECK(venkov_min(a1, r, g).nu == Rational(1, 2));
    Lattice a3 = parse_standard("A3");
    FiniteQuadraticModule r3(a3);
    auto x = r3.zero();
    x[0] = 2;
    VenkovResult v = venkov_min(a3, r3, x);
    CHECK(v.nu == 1);
    CHECK(v.lifts.size() == 6);
  }

  TEST_CASE("glue round trips") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
      const int n = 2 + t % 3;
      Lattice l = oracle::random_lattice(rng, n);
      const int k = 1 + t % (n - 1);
      Mat ab(n, k);
      for (int j = 0; j < k; ++j) ab(j, j) = 1;
      Lattice a = sublattice(l, ab);
      SplitResult s = split_pair(l, ab, a);
      GlueResult g = glue_pair(a, s.b, s.eta);
      CHECK(g.h_order == s.h_order);
      CHECK(oracle::determinant_identity(a, s.b, g.lattice, g.h_order));
      CHECK(is_isometric(g.lattice, l));
    }
  }
}
