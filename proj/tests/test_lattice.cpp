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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "unilat/lattice.hpp"
#include "unilat/linalg.hpp"
#include "unilat/rootsys.hpp"

using namespace unilat;

TEST_SUITE("lattice") {
  TEST_CASE("determinants") {
    CHECK(determinant(parse_standard("A2")) == 3);
    CHECK(determinant(parse_standard("I5")) == 1);
    CHECK(determinant(parse_standard("E8")) == 1);
    CHECK(determinant(parse_standard("D4")) == 4);
  }

  TEST_CASE("determinant matches elimination over the rationals") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
      Lattice l = oracle::random_lattice(rng, 1 + t % 6);
      const int n = l.rank();
      std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = l(i, j);
      Rational det = 1;
      for (int c = 0; c < n; ++c) {
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
          Rational f = m[r][c] / m[c][c];
          for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
      }
      CHECK(Rational(determinant(l)) == det);
    }
  }

  TEST_CASE("rescaled dual") {
    CHECK(rescaled_dual(parse_standard("I3")).gram() == parse_standard("I3").gram());
    CHECK(rescaled_dual(parse_standard("A1")).gram() == parse_standard("I1").gram());
    Lattice d = rescaled_dual(parse_standard("A2"));
    CHECK(d(0, 0) == 2);
    CHECK(d(1, 1) == 2);
    CHECK(d(0, 1) == 1);
  }

  TEST_CASE("direct sums") {
    Lattice q = direct_sum(scalar_lattice(2), scalar_lattice(2));
    CHECK(determinant(q) == 4);
    CHECK(q.gram() == parse_standard("Q0").gram());
    Lattice l = parse_standard("I1+E8");
    CHECK(l.rank() == 9);
    CHECK(determinant(l) == 1);
    CHECK(short_vectors(l, Int{1}).counts[1] == 2);
    CHECK(direct_sum(std::vector<Lattice>{parse_standard("E8")}).gram() == parse_standard("E8").gram());
  }

  TEST_CASE("standard lattices") {
    Lattice s2 = parse_standard("S2");
    CHECK(s2(0, 0) == 2);
    CHECK(s2(0, 1) == -1);
    CHECK(s2(1, 1) == 4);
    CHECK(determinant(s2) == 7);
    Lattice s5 = parse_standard("S5");
    CHECK(determinant(s5) == 5);
    CHECK_FALSE(s5.is_even());
    Lattice d4 = parse_standard("D4");
    CHECK(short_vectors(d4, Int{2}).counts[2] == 24);
    CHECK(determinant(d4) == 4);
  }

  TEST_CASE("even part") {
    EvenPart e = even_part(parse_standard("E8"));
    CHECK(e.index == 1);
    EvenPart i2 = even_part(parse_standard("I2"));
    CHECK(i2.index == 2);
    CHECK(determinant(i2.lattice) == 4);
    CHECK(root_data(i2.lattice).system.str() == "2A1");
    EvenPart i8 = even_part(parse_standard("I8"));
    CHECK(determinant(i8.lattice) == 4);
    CHECK(root_data(i8.lattice).system.str() == "D8");
  }

  TEST_CASE("theta counts") {
    CHECK(short_vectors(parse_standard("A2"), Int{2}).counts[2] == 6);
    auto e8 = short_vectors(parse_standard("E8"), Int{6});
    CHECK(e8.counts[2] == 240);
    CHECK(e8.counts[4] == 2160);
    CHECK(e8.counts[6] == 6720);
  }

  TEST_CASE("coset vectors") {
    Lattice a1 = parse_standard("A1");
    VectorList v = coset_short_vectors(a1, DualVector({1}, 2), Rational(1, 2));
    CHECK(v.size() == 2);
    Lattice a2 = parse_standard("A2");
    // First fundamental weight in simple-root coordinates: (2/3, 1/3).
    VectorList w = coset_short_vectors(a2, DualVector({2, 1}, 3), Rational(2, 3));
    CHECK(w.size() == 3);
    Lattice d4 = parse_standard("D4");
    std::size_t best = 0;
    for (const auto& x : FiniteQuadraticModule(d4).elements()) {
      DualVector s = FiniteQuadraticModule(d4).lift(x);
      if (s.denom == 1) continue;
      best = std::max(best, coset_short_vectors(d4, s, Rational(1)).size());
    }
    CHECK(best == 8);
  }

  TEST_CASE("indefinite Gram names the failing minor") {
    try {
      Lattice::from_lower_triangle(2, {1, 3, 1});
      FAIL("accepted an indefinite Gram");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("leading minor 2") != std::string::npos);
      CHECK(e.kind() == ErrorKind::kInvalidInput);
    }
  }

  TEST_CASE("short vectors agree with box enumeration") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 100) {
      Lattice l = oracle::random_lattice(rng, 1 + done % 6);
      const Int bound = l.max_diagonal() + static_cast<Int>(done % 3);
      if (oracle::box_size(oracle::box_radii(l, bound)) > 2e5) continue;
      ShortVectorReport rep = short_vectors(l, bound);
      CHECK(rep.counts == oracle::brute_counts(l, bound));
      for (std::size_t i = 0; i < rep.vectors.size(); ++i) {
        CHECK(lex_positive(rep.vectors.vec(i)));
        CHECK(l.norm(rep.vectors.vec(i)) == rep.vectors.norms[i]);
      }
      ++done;
    }
  }

  TEST_CASE("lll keeps the lattice") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      Lattice l = oracle::scramble(parse_standard("E8"), rng);
      Mat b;
      Lattice r = lll_reduce(l, &b);
      CHECK(congruence(l.gram(), b) == r.gram());
      CHECK(determinant(b) * determinant(b) == 1);
      CHECK(theta_counts(r, 4) == theta_counts(l, 4));
    }
  }
}
