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
#include "unilat/classify.hpp"
#include "unilat/isometry.hpp"
#include "unilat/rootsys.hpp"

using namespace unilat;

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Lattice d16_plus() {
  return kneser_neighbor(parse_standard("I16"), 2, Vec(16, 1));
}

}  // namespace

TEST_SUITE("isometry") {
  TEST_CASE("automorphism group orders") {
    CHECK(automorphisms(parse_standard("A2")).order == 12);
    for (int n = 1; n <= 8; ++n)
      CHECK(automorphisms(standard_lattice("I", n)).order == (BigInt(1) << n) * factorial(n));
    CHECK(automorphisms(parse_standard("E8")).order == 696729600);
    CHECK(automorphisms(parse_standard("D4")).order == 1152);
  }

  TEST_CASE("generators preserve the form") {
    for (const char* s : {"A2", "D4", "E6", "I5", "A1+A3"}) {
      Lattice l = parse_standard(s);
      for (const auto& g : automorphisms(l).generators) CHECK(preserves_gram(g, l.gram()));
    }
  }

  TEST_CASE("reduced groups") {
    ReducedGroup e8 = reduced_group(parse_standard("E8"));
    CHECK(e8.order == 1);
    ReducedGroup i3 = reduced_group(parse_standard("I3"));
    CHECK(i3.weyl_order == 24);
    CHECK(i3.order == 2);
    for (const char* s : {"I1", "I3", "I5", "I1+E8", "I7"})
      CHECK(reduced_group(parse_standard(s)).order % 2 == 0);
  }

  TEST_CASE("isometry search") {
    auto g = isometry(parse_standard("A3"), parse_standard("D3"));
    REQUIRE(g);
    CHECK(congruence(parse_standard("A3").gram(), *g) == parse_standard("D3").gram());
    CHECK_FALSE(isometry(parse_standard("E8"), parse_standard("I8")));
    Lattice d16p = d16_plus();
    CHECK(theta_counts(d16p, 2) != theta_counts(parse_standard("I16"), 2));
    CHECK_FALSE(is_isometric(parse_standard("I16"), d16p));
    CHECK_FALSE(is_isometric(d16p, parse_standard("E8+E8")));
  }

  TEST_CASE("isometry of scrambled copies") {
    std::mt19937_64 rng(23);
    for (const char* s : {"E8", "D6+A2", "I5", "E7+I1", "A4+<3>"}) {
      Lattice l = parse_standard(s);
      Lattice t = oracle::scramble(l, rng);
      auto g = isometry(l, t);
      REQUIRE(g);
      CHECK(congruence(l.gram(), *g) == t.gram());
    }
  }

  TEST_CASE("automorphism orders agree with exhaustive search") {
    std::mt19937_64 rng(29);
    int done = 0;
    while (done < 40) {
      Lattice l = lll_reduce(oracle::random_lattice(rng, 1 + done % 5));
      if (oracle::box_size(oracle::box_radii(l, l.max_diagonal())) > 5e4) continue;
      CHECK(automorphisms(l).order == oracle::brute_aut_order(l));
      ++done;
    }
  }

  TEST_CASE("good basis") {
    std::mt19937_64 rng(31);
    Lattice i8 = good_lattice(oracle::scramble(parse_standard("I8"), rng));
    for (int i = 0; i < 8; ++i) CHECK(i8(i, i) == 1);
    Lattice e8 = good_lattice(oracle::scramble(parse_standard("E8"), rng));
    for (int i = 0; i < 8; ++i) CHECK(e8(i, i) == 2);
    Lattice a2 = parse_standard("A2");
    CHECK(good_lattice(a2).max_diagonal() <= a2.max_diagonal());
  }

  TEST_CASE("orbits mod 2 examples") {
    Mod2Orbits id = orbits_mod2({Mat::identity(2)}, 2);
    CHECK(id.representatives.size() == 4);
    Mat s(2, 2), t(2, 2);
    s(0, 1) = s(1, 0) = 1;
    t(0, 0) = t(0, 1) = t(1, 1) = 1;
    Mod2Orbits gl = orbits_mod2({s, t}, 2);
    CHECK(gl.sizes == std::vector<std::uint64_t>{1, 3});
    ClassRecord e8 = make_record(parse_standard("E8"), "E8", InvariantSpec{{}, 0});
    Mod2Orbits o = orbits_mod2(e8.aut_generators, 8);
    std::vector<std::uint64_t> sizes = o.sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::uint64_t>{1, 120, 135});
  }

  TEST_CASE("orbits mod 2 agree with closure") {
    std::mt19937_64 rng(37);
    for (int n = 1; n <= 12; ++n) {
      std::vector<Mat> gens;
      const int k = 1 + n % 3;
      for (int i = 0; i < k; ++i) gens.push_back(oracle::random_gl2(rng, n));
      Mod2Orbits o = orbits_mod2(gens, n);
      auto ref = oracle::closure_orbits(gens, n);
      REQUIRE(o.representatives.size() == ref.size());
      std::size_t i = 0;
      for (const auto& [rep, size] : ref) {
        CHECK(o.representatives[i] == rep);
        CHECK(o.sizes[i] == size);
        ++i;
      }
    }
    for (const char* s : {"D4", "A5", "E6", "I6", "D8+A2", "E7+A3"}) {
      ClassRecord r = make_record(parse_standard(s), s, InvariantSpec{{}, 0});
      Mod2Orbits o = orbits_mod2(r.aut_generators, r.lattice.rank());
      CHECK(o.representatives.size() == oracle::closure_orbits(r.aut_generators, r.lattice.rank()).size());
    }
  }

  TEST_CASE("vector orbits") {
    ClassRecord e8 = make_record(parse_standard("E8"), "E8", InvariantSpec{{}, 0});
    VectorList all = short_vectors_full(e8.lattice, 6);
    VectorList six;
    six.dim = 8;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all.norms[i] == 6) six.push(all[i], 6);
    VectorOrbits o = vector_orbits(e8.aut_generators, six);
    CHECK(o.sizes == std::vector<std::uint64_t>{6720});
    ClassRecord a2 = make_record(parse_standard("A2"), "A2", InvariantSpec{{}, 0});
    VectorList roots = short_vectors_full(a2.lattice, 2);
    CHECK(vector_orbits(a2.aut_generators, roots).sizes == std::vector<std::uint64_t>{6});
    CHECK(vector_orbits({}, roots).representatives.size() == roots.size());
  }
}
