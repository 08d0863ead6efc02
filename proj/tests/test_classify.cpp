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
#include "unilat/residue.hpp"
#include "unilat/rootsys.hpp"

using namespace unilat;

namespace {

const std::vector<std::vector<ClassRecord>>& unimodular_12() {
  static const auto x = classify_unimodular(12);
  return x;
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("small unimodular ranks") {
    const auto& x = unimodular_12();
    const std::vector<std::size_t> expect{1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 3};
    for (int n = 1; n <= 12; ++n) CHECK(x[n].size() == expect[n - 1]);
    CHECK(x[7][0].root_system == "D7");
  }

  TEST_CASE("rank 8 classes and mass") {
    const auto& x8 = unimodular_12()[8];
    std::set<BigInt> orders;
    for (const auto& r : x8) orders.insert(r.aut_order);
    BigInt i8 = BigInt(256) * 40320;
    CHECK(orders == std::set<BigInt>{i8, BigInt(696729600)});
    Rational expect = Rational(1, 696729600) + Rational(BigInt(1), i8);
    expect.canonicalize();
    CHECK(genus_audit(x8, 2, &expect).ok());
  }

  TEST_CASE("audit") {
    CHECK(genus_audit(unimodular_12()[11], 2).count_ok);
    CHECK_FALSE(genus_audit(unimodular_12()[11], 3).ok());
    CHECK(genus_audit({}, 0).ok());
  }

  TEST_CASE("dedup of scrambled copies") {
    std::mt19937_64 rng(47);
    ClassTable t(InvariantSpec{});
    CHECK(t.insert(parse_standard("E8"), "a"));
    CHECK_FALSE(t.insert(oracle::scramble(parse_standard("E8"), rng), "b"));
    CHECK(t.classes().size() == 1);
  }

  TEST_CASE("forced hash collision falls back to isometry") {
    std::mt19937_64 rng(53);
    ClassTable t(InvariantSpec{});
    t.key_override = [](const Lattice&) { return std::uint64_t{0}; };
    Lattice d16p = kneser_neighbor(parse_standard("I16"), 2, Vec(16, 1));
    CHECK(root_data(d16p).system.str() == root_data(parse_standard("I16")).system.str());
    CHECK(t.insert(parse_standard("I16"), "I16"));
    CHECK(t.insert(d16p, "D16+"));
    CHECK_FALSE(t.insert(oracle::scramble(parse_standard("I16"), rng), "copy"));
    CHECK(t.classes().size() == 2);
    CHECK(t.stats().isometry_tests >= 2);
  }

  TEST_CASE("kneser neighbors") {
    Lattice e = kneser_neighbor(parse_standard("I8"), 2, Vec(8, 1));
    CHECK(is_isometric(e, parse_standard("E8")));
    Lattice same = kneser_neighbor(parse_standard("A2"), 1, {1, 0});
    CHECK(same.gram() == parse_standard("A2").gram());
    NeighborSearchOptions o;
    o.attempts = 5;
    for (const auto& l : neighbor_search(parse_standard("I12"), o)) {
      CHECK(l.rank() == 12);
      CHECK(determinant(l) == 1);
    }
  }

  TEST_CASE("orthogonal root extension") {
    ClassRecord i5 = make_record(parse_standard("I5"), "I5", InvariantSpec{});
    ExtendResult er = extend_orthogonal_roots(i5);
    for (const auto& c : er.candidates) {
      CHECK(c.lattice.rank() == 7);
      CHECK(determinant(c.lattice) == 1);
      CHECK(is_isometric(c.lattice, parse_standard("I7")));
    }
  }

  TEST_CASE("orbit method examples") {
    InvariantSpec spec{{"bvnp1"}, 3};
    std::vector<ClassRecord> e8{make_record(parse_standard("E8"), "E8", InvariantSpec{})};
    OrbitMethodResult a = orbit_method(e8, {6, VectorKind::kPlain}, {7, 6, true}, spec);
    REQUIRE(a.classes.size() == 1);
    CHECK(is_isometric(a.classes[0].lattice, parse_standard("A1+E6")));
    CHECK(a.conserved());
    OrbitMethodResult b = orbit_method(e8, {2, VectorKind::kPlain}, {7, 2, true}, InvariantSpec{});
    REQUIRE(b.classes.size() == 1);
    CHECK(is_isometric(b.classes[0].lattice, parse_standard("E7")));
    std::vector<ClassRecord> a2{make_record(parse_standard("A2"), "A2", InvariantSpec{})};
    OrbitMethodResult c = orbit_method(a2, {6, VectorKind::kSpecial}, {1, 2, true}, InvariantSpec{});
    REQUIRE(c.classes.size() == 1);
    CHECK(is_isometric(c.classes[0].lattice, parse_standard("A1")));
  }

  TEST_CASE("exceptional vectors") {
    ExcReport i4 = exceptional_report(parse_standard("I4"));
    CHECK(i4.exc_count == 16);
    CHECK(i4.orbits == 1);
    const auto& x12 = unimodular_12()[12];
    bool seen = false;
    for (const auto& r : x12)
      if (r.root_system == "D12" && short_vectors(r.lattice, 1).vectors.size() == 0) {
        seen = true;
        ExcReport e = exceptional_report(r.lattice);
        CHECK(e.applicable);
        CHECK(e.exc_count <= 24);
        CHECK(e.orbits == 1);
      }
    CHECK(seen);
  }

  TEST_CASE("triplication at two coordinate vectors") {
    Lattice i14 = parse_standard("I14");
    Vec a(14, 0);
    a[0] = a[1] = 1;
    TriplicateResult t = triplicate(i14, a);
    REQUIRE(t.lattices.size() == 3);
    CHECK(t.pairwise_neighbors);
    CHECK(t.source_index >= 0);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(determinant(t.lattices[k]) == 1);
      CHECK(t.lattices[k].norm(t.roots[k]) == 2);
    }
  }

  TEST_CASE("genera of small rank") {
    GenusCache cache;
    CHECK(classify_genus(2, 3, cache).classes.size() == 1);
    CHECK(classify_genus(4, 5, cache).classes.size() == 1);
    CHECK(classify_genus(5, 7, cache).classes.size() == 1);
    const GenusRun& g = classify_genus(9, 5, cache);
    CHECK(g.classes.size() == 3);
    CHECK(g.conserved);
  }
}
