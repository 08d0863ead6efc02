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

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "unilat/io.hpp"

using namespace unilat;

namespace {

ListFile x8_list() {
  ListFile f;
  f.rank = 8;
  f.genus = "X8";
  auto x = classify_unimodular(8);
  f.records = x[8];
  return f;
}

std::string error_of(const std::string& text) {
  try {
    parse_list(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto p = s.find(from);
  REQUIRE(p != std::string::npos);
  return s.replace(p, from.size(), to);
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("list round trip is byte identical") {
    ListFile f = x8_list();
    std::string text = serialize_list(f);
    ListFile g = parse_list(text);
    REQUIRE(g.records.size() == f.records.size());
    for (std::size_t i = 0; i < f.records.size(); ++i) {
      CHECK(g.records[i].lattice == f.records[i].lattice);
      CHECK(g.records[i].root_system == f.records[i].root_system);
      CHECK(g.records[i].mass() == f.records[i].mass());
      CHECK(g.records[i].invariants == f.records[i].invariants);
      CHECK(g.records[i].provenance == f.records[i].provenance);
    }
    CHECK(serialize_list(g) == text);
    CHECK(text.find("1/696729600") != std::string::npos);
  }

  TEST_CASE("exact masses survive") {
    std::string text = serialize_list(x8_list());
    ListFile g = parse_list(text);
    bool found = false;
    for (const auto& r : g.records)
      if (r.mass() == Rational(1, 696729600)) found = true;
    CHECK(found);
  }

  TEST_CASE("diagnostics carry line numbers") {
    const std::string text = serialize_list(x8_list());
    std::string e = error_of(replace(text, "1/696729600", "1/69672960x"));
    CHECK(e.find("line 9") != std::string::npos);
    e = error_of(replace(text, "invariants bv3", "invariants bv9"));
    CHECK(e.find("line 5") != std::string::npos);
    CHECK(e.find("unknown invariant") != std::string::npos);
    e = error_of(replace(text, "\t2 1 2 ", "\t2 1 2 9 "));
    CHECK(e.find("line 9") != std::string::npos);
    CHECK(e.find("triangular") != std::string::npos);
    e = error_of(replace(text, "\t2 1 2 ", "\t2 3 2 "));
    CHECK(e.find("leading minor 2") != std::string::npos);
    e = error_of(replace(text, "records 2", "records 3"));
    CHECK(e.find("line 7") != std::string::npos);
    e = error_of(replace(text, "1/1\t", "1/2\t"));
    CHECK(e.find("reduced mass") != std::string::npos);
  }

  TEST_CASE("rationals and lattice arguments") {
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("3"), Error);
    CHECK(parse_lattice_arg("2 -1 2").gram() == parse_standard("A2").gram());
    CHECK(parse_lattice_arg("2").rank() == 1);
    CHECK(parse_lattice_arg("2A1").rank() == 2);
    CHECK(parse_lattice_arg("I1+E8").rank() == 9);
  }

  TEST_CASE("atomic writes") {
    const std::string path = "io_atomic_test.txt";
    write_file_atomic(path, "abc");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "abc");
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());
    CHECK(digest_hex("abc") != digest_hex("abd"));
    CHECK(digest_hex("abc").size() == 16);
  }
}
