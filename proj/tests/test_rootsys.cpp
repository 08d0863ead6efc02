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

#include <set>

#include "doctest.h"
#include "unilat/lattice.hpp"
#include "unilat/rootsys.hpp"

using namespace unilat;

TEST_SUITE("rootsys") {
  TEST_CASE("root system detection") {
    RootData i4 = root_data(parse_standard("I4"));
    CHECK(i4.system.str() == "D4");
    CHECK(2 * i4.positive_roots.size() == 24);
    CHECK(root_data(parse_standard("E7+A1")).system.str() == "A1+E7");
    CHECK(root_data(parse_standard("<6>")).system.empty());
    CHECK(root_data(parse_standard("I3")).system.str() == "A3");
  }

  TEST_CASE("root systems of standard lattices") {
    for (const char* s : {"A1", "A5", "D4", "D7", "E6", "E7", "E8", "2A2+D5", "A1+A3+E6"})
      CHECK(root_data(parse_standard(s)).system.str() == RootSystem::parse(s).str());
  }

  TEST_CASE("group constants") {
    RootSystem a2 = RootSystem::parse("A2");
    CHECK(a2.weyl_order() == 6);
    CHECK(a2.root_count() == 6);
    CHECK(a2.components()[0].type.coxeter() == 3);
    CHECK(RootSystem::parse("E8").weyl_order() == 696729600);
    RootSystem a1 = RootSystem::parse("3A1");
    CHECK(a1.weyl_order() == 8);
    CHECK(a1.root_count() == 6);
  }

  TEST_CASE("weyl vector pairs to one with simple roots") {
    for (const char* s : {"A4", "D5", "E6", "A1+A2"}) {
      Lattice l = parse_standard(s);
      RootData rd = root_data(l);
      for (const auto& a : rd.simple_roots) {
        DualVector av(a, 1);
        CHECK(l.dot(rd.weyl_vector, av) == 1);
      }
    }
  }

  TEST_CASE("orthogonal pair statistics") {
    CHECK(orthogonal_pair_stats(RootSystem::parse("3A1")).npr == 3);
    CHECK(orthogonal_pair_stats(RootSystem::parse("5A1")).npr == 10);
    CHECK(orthogonal_pair_stats(RootSystem::parse("A1")).np == 0);
    PairStats s = orthogonal_pair_stats(RootSystem::parse("A1+A2"));
    CHECK(s.np > 0);
  }

  TEST_CASE("fertile classes of A5") {
    std::set<std::string> ext;
    for (const auto& c : fertile_classes(RootSystem::parse("A5"))) {
      ext.insert(c.extension.str());
      CHECK(root_data(extended_root_lattice(RootSystem::parse("A5"), c)).system.str() ==
            c.extension.str());
    }
    CHECK(ext.count("A6"));
    CHECK(ext.count("D6"));
    CHECK(ext.count("E6"));
  }

  TEST_CASE("fertile class of 3A1 with three attachments") {
    bool found = false;
    for (const auto& c : fertile_classes(RootSystem::parse("3A1")))
      if (c.nu == Rational(3, 2)) {
        found = true;
        CHECK(c.extension.str() == "D4");
      }
    CHECK(found);
  }

  TEST_CASE("minimal norm of the A2 weight class") {
    auto cs = fertile_classes(RootSystem::parse("A2"));
    REQUIRE(!cs.empty());
    for (const auto& c : cs) CHECK(c.nu == Rational(2, 3));
  }

  TEST_CASE("root embedding orbits") {
    CHECK(root_embedding_orbits(RootSystem::parse("A3"), RootSystem::parse("D5")).orbits.size() == 2);
    CHECK(root_embedding_orbits(RootSystem::parse("A3"), RootSystem::parse("A4")).orbits.size() == 1);
    auto e = root_embedding_orbits(RootSystem::parse("A7"), RootSystem::parse("E8"));
    REQUIRE(e.orbits.size() == 2);
    CHECK(e.orbits[0].saturated != e.orbits[1].saturated);
  }

  TEST_CASE("parse rejects malformed root systems") {
    CHECK_THROWS_AS(RootSystem::parse("X4"), Error);
    CHECK_THROWS_AS(RootSystem::parse("A"), Error);
  }
}
