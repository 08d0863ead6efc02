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

// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "unilat/bv.hpp"
#include "unilat/classify.hpp"
#include "unilat/io.hpp"
#include "unilat/residue.hpp"
#include "unilat/rootsys.hpp"

using namespace unilat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  if (!pass) ++failures;
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

bool no_norm_one(const Lattice& l) { return theta_counts(l, 1)[1] == 0; }

// Unimodular counts for ranks 1..16.
const std::vector<std::size_t> kUnimodularCounts{1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 4, 5, 8};

struct GenusExpect {
  int p;
  std::vector<int> ranks;
  std::vector<std::size_t> counts;
};

const std::vector<GenusExpect> kGenusCounts{
    {3, {2, 6, 10, 14}, {1, 1, 1, 2}},
    {5, {4, 8, 12, 16}, {1, 1, 2, 5}},
    {7, {2, 6, 10, 14}, {1, 1, 2, 4}},
    {3, {1, 3, 5, 7, 9, 11, 13, 15}, {1, 1, 1, 1, 2, 2, 3, 5}},
    {5, {1, 3, 5, 7, 9, 11, 13, 15}, {1, 1, 1, 1, 3, 3, 5, 10}},
    {7, {1, 3, 5, 7, 9, 11, 13, 15}, {1, 1, 1, 2, 3, 5, 8, 14}},
};

struct ThetaCase {
  std::string key;
  bool ok;
};

// r3 against the rank 29 and rank 30 identities for r1 = 0.
ThetaCase theta_case(const Lattice& l) {
  auto th = theta_counts(l, 3);
  const long exc = static_cast<long>(exceptional_vectors(l).size());
  const long r2 = th[2], r3 = th[3];
  long predicted = l.rank() == 30 ? 1520 + 12 * r2 - 64 * exc : 1856 - 128 * exc + 10 * r2;
  std::ostringstream key;
  key << root_data(l).system.str() << "/exc" << exc;
  return {key.str(), th[1] == 0 && predicted == r3};
}

const ClassRecord* find_class(const std::vector<ClassRecord>& v, const std::string& rs) {
  for (const auto& r : v)
    if (r.root_system == rs && no_norm_one(r.lattice)) return &r;
  return nullptr;
}

void theta_identities(const std::vector<std::vector<ClassRecord>>& x) {
  auto t0 = Clock::now();
  std::map<int, std::map<std::string, bool>> seen;
  auto add = [&](const Lattice& l) {
    ThetaCase c = theta_case(l);
    auto& m = seen[l.rank()];
    auto it = m.find(c.key);
    if (it == m.end())
      m[c.key] = c.ok;
    else
      it->second = it->second && c.ok;
  };
  // Direct sums of small r1 = 0 classes.
  const ClassRecord* e7e7 = find_class(x[14], "2E7");
  const ClassRecord* d16 = find_class(x[16], "D16");
  const ClassRecord* a15 = find_class(x[15], "A15");
  Lattice e8 = parse_standard("E8");
  if (e7e7) add(direct_sum({e8, e8, e7e7->lattice}));
  if (e7e7 && d16) add(direct_sum(d16->lattice, e7e7->lattice));
  if (a15) add(direct_sum(a15->lattice, a15->lattice));
  if (e7e7 && a15) add(direct_sum(e7e7->lattice, a15->lattice));
  for (const auto& r : x[13])
    if (no_norm_one(r.lattice)) add(direct_sum({e8, e8, r.lattice}));
  // Kneser neighbors of lattices with norm 1 vectors.
  for (int n : {30, 29}) {
    std::uint64_t seed = 1;
    for (int round = 0; round < 6 && seen[n].size() < 6; ++round)
      for (std::string src : {"I", "E8+I", "E8+E8+I", "E8+E8+E8+I"}) {
        const int k = n - 8 * static_cast<int>(std::count(src.begin(), src.end(), 'E'));
        Lattice s = parse_standard(src + std::to_string(k));
        for (Int d : {Int(3), Int(5), Int(7)}) {
          NeighborSearchOptions o;
          o.d = d;
          o.attempts = 3;
          o.seed = seed++;
          o.coord_range = 2 * d;
          o.require_no_norm1 = true;
          for (const auto& l : neighbor_search(s, o)) add(l);
        }
      }
  }
  bool ok = true;
  std::ostringstream detail;
  for (int n : {30, 29}) {
    std::size_t good = 0;
    for (const auto& [key, pass] : seen[n]) {
      good += pass;
      ok = ok && pass;
    }
    ok = ok && good >= 5;
    detail << "rank " << n << ": " << good << "/" << seen[n].size() << " distinct lattices satisfy r3 identity; ";
  }
  detail << "(" << seconds_since(t0) << " s)";
  report(6, ok, detail.str());
}

void oracle_equivalences() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20261019);
  std::size_t sv_bad = 0, sv_done = 0;
  while (sv_done < 500) {
    Lattice l = oracle::random_lattice(rng, 1 + static_cast<int>(sv_done % 6));
    const Int bound = l.max_diagonal() + static_cast<Int>(sv_done % 4);
    if (oracle::box_size(oracle::box_radii(l, bound)) > 3e5) continue;
    if (short_vectors(l, bound).counts != oracle::brute_counts(l, bound)) ++sv_bad;
    ++sv_done;
  }
  std::size_t m2_bad = 0, m2_done = 0;
  for (int n = 1; n <= 12; ++n)
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<Mat> gens;
      for (int i = 0; i <= rep; ++i) gens.push_back(oracle::random_gl2(rng, n));
      Mod2Orbits o = orbits_mod2(gens, n);
      auto ref = oracle::closure_orbits(gens, n);
      std::vector<std::uint32_t> reps;
      std::vector<std::uint64_t> sizes;
      for (const auto& [r, s] : ref) reps.push_back(r), sizes.push_back(s);
      m2_bad += !(o.representatives == reps && o.sizes == sizes);
      ++m2_done;
    }
  for (const char* s : {"E8", "D4+A2", "E6+A1", "I12", "D10+A2", "A11"}) {
    ClassRecord r = make_record(parse_standard(s), s, InvariantSpec{{}, 0});
    Mod2Orbits o = orbits_mod2(r.aut_generators, r.lattice.rank());
    auto ref = oracle::closure_orbits(r.aut_generators, r.lattice.rank());
    m2_bad += o.representatives.size() != ref.size();
    ++m2_done;
  }
  std::size_t aut_bad = 0, aut_done = 0;
  while (aut_done < 100) {
    Lattice l = lll_reduce(oracle::random_lattice(rng, 1 + static_cast<int>(aut_done % 5)));
    if (oracle::box_size(oracle::box_radii(l, l.max_diagonal())) > 1e5) continue;
    aut_bad += automorphisms(l).order != oracle::brute_aut_order(l);
    ++aut_done;
  }
  std::size_t glue_bad = 0, glue_done = 0;
  while (glue_done < 200) {
    const int n = 2 + static_cast<int>(glue_done % 3);
    Lattice l = oracle::random_lattice(rng, n);
    const int k = 1 + static_cast<int>(glue_done / 3 % (n - 1));
    Mat ab(n, k);
    for (int j = 0; j < k; ++j) ab(j, j) = 1;
    Lattice a = sublattice(l, ab);
    SplitResult s = split_pair(l, ab, a);
    GlueResult g = glue_pair(a, s.b, s.eta);
    bool ok = g.h_order == s.h_order && oracle::determinant_identity(a, s.b, g.lattice, g.h_order) &&
              is_isometric(g.lattice, l);
    glue_bad += !ok;
    ++glue_done;
  }
  std::ostringstream d;
  d << "short_vectors " << sv_bad << "/" << sv_done << " mismatches; orbits_mod2 " << m2_bad << "/" << m2_done
    << "; aut orders " << aut_bad << "/" << aut_done << "; glue round trips " << glue_bad << "/" << glue_done
    << " (" << seconds_since(t0) << " s)";
  report(7, sv_bad + m2_bad + aut_bad + glue_bad == 0, d.str());
}

void triplication(const std::vector<ClassRecord>& x14) {
  auto t0 = Clock::now();
  std::size_t runs = 0, bad = 0;
  for (const auto& c : x14) {
    for (const auto& root : root_orbit_representatives(c)) {
      ++runs;
      TriplicateResult t = triplicate(c.lattice, root);
      bool ok = t.pairwise_neighbors && t.source_index >= 0 && t.lattices.size() == 3;
      for (const auto& l : t.lattices) {
        bool inside = false;
        for (const auto& d : x14)
          if (is_isometric(l, d.lattice)) inside = true;
        ok = ok && inside;
      }
      bad += !ok;
    }
  }
  std::ostringstream d;
  d << runs << " root orbits over " << x14.size() << " classes, " << bad << " failures (" << seconds_since(t0)
    << " s)";
  report(8, runs > 0 && bad == 0, d.str());
}

void performance() {
  // A rank 29 lattice without norm 1 vectors and few short vectors.
  Lattice best;
  std::size_t best_v = ~std::size_t{0};
  for (Int d : {Int(13), Int(17)}) {
    NeighborSearchOptions o;
    o.d = d;
    o.attempts = 10;
    o.seed = 3;
    o.coord_range = 3 * d;
    o.require_no_norm1 = true;
    for (const auto& l : neighbor_search(parse_standard("I29"), o)) {
      auto th = theta_counts(l, 3);
      const std::size_t v = static_cast<std::size_t>((th[2] + th[3]) / 2);
      if (v < best_v) best_v = v, best = l;
    }
  }
  auto t0 = Clock::now();
  BVHash h = best_v != ~std::size_t{0} ? bv(best) : BVHash{};
  const double bv_time = seconds_since(t0);
  std::mt19937_64 rng(7);
  std::vector<Mat> gens;
  for (int i = 0; i < 10; ++i) gens.push_back(oracle::random_gl2(rng, 21));
  t0 = Clock::now();
  Mod2Orbits m = orbits_mod2(gens, 21);
  const double m2_time = seconds_since(t0);
  std::ostringstream d;
  d << "BV depth 3 on rank 29 with " << h.vertex_count << " vertices: " << bv_time << " s; orbits_mod2 n=21 with 10 gens: "
    << m2_time << " s, " << m.representatives.size() << " orbits";
  report(9, h.vertex_count > 0 && bv_time <= 2.0 && m2_time <= 60.0, d.str());
}

}  // namespace

int main() {
  std::printf("acceptance suite, tool %s\n", kToolVersion);
  std::fflush(stdout);

  // Criterion 1.
  auto t0 = Clock::now();
  UnimodularStats stats;
  std::vector<std::vector<ClassRecord>> x;
  try {
    x = classify_unimodular(16, &stats);
  } catch (const Error& e) {
    report(1, false, std::string("classification failed: ") + e.what());
    return 1;
  }
  const double t1 = seconds_since(t0);
  std::vector<std::size_t> counts;
  for (int n = 1; n <= 16; ++n) counts.push_back(x[n].size());
  std::ostringstream d1;
  d1 << "counts " << join(counts) << " in " << t1 << " s, " << stats.candidates << " candidates, "
     << stats.unresolved << " unresolved";
  report(1, counts == kUnimodularCounts && stats.unresolved == 0 && t1 <= 1800, d1.str());

  // Criterion 2.
  std::size_t collisions = 0;
  for (int n = 1; n <= 16; ++n) {
    std::set<std::uint64_t> h;
    for (const auto& r : x[n]) collisions += !h.insert(r.invariants.at("bv3")).second;
  }
  report(2, collisions == 0, std::to_string(collisions) + " BV hash collisions within X_n, n <= 16");

  // Criterion 3.
  t0 = Clock::now();
  GenusCache cache;
  cache.unimodular = x;
  std::size_t genus_bad = 0, genus_total = 0;
  std::ostringstream d3;
  for (const auto& g : kGenusCounts) {
    std::vector<std::size_t> got;
    for (std::size_t i = 0; i < g.ranks.size(); ++i) {
      std::size_t c = 0;
      try {
        c = classify_genus(g.ranks[i], g.p, cache).classes.size();
      } catch (const Error& e) {
        d3 << "[G(" << g.ranks[i] << "," << g.p << ") failed: " << e.what() << "] ";
      }
      got.push_back(c);
      ++genus_total;
      genus_bad += c != g.counts[i];
    }
    d3 << "p=" << g.p << " n=" << g.ranks.front() << ".." << g.ranks.back() << ": " << join(got) << "; ";
  }
  const double t3 = seconds_since(t0);
  d3 << genus_bad << "/" << genus_total << " mismatches in " << t3 << " s";
  report(3, genus_bad == 0 && t3 <= 3600, d3.str());

  // Criterion 4.
  Rational x8 = 0;
  for (const auto& r : x[8]) x8 += r.mass();
  BigInt i8 = BigInt(256) * 40320;
  Rational expect = Rational(1, 696729600) + Rational(BigInt(1), i8);
  expect.canonicalize();
  std::size_t runs = 0, conserved = 0;
  for (const auto& [key, run] : cache.genera) {
    if (run.method == "empty" || run.method == "unimodular") continue;
    ++runs;
    conserved += run.conserved;
  }
  std::ostringstream d4;
  d4 << "X8 mass " << to_string(x8) << " (expected " << to_string(expect) << "); " << conserved << "/" << runs
     << " orbit-method runs conserve mass; " << stats.mass_checks << " rank-extension mass checks, "
     << stats.mass_mismatches << " mismatches";
  report(4, x8 == expect && conserved == runs && stats.mass_mismatches == 0, d4.str());

  // Criterion 5.
  std::size_t exc_checked = 0, exc_bad = 0;
  for (int n = 1; n <= 16; ++n) {
    if (n % 8 == 6 || n % 8 == 7) continue;
    for (const auto& r : x[n]) {
      ExcReport e = exceptional_report(r.lattice);
      if (!e.applicable) continue;
      ++exc_checked;
      exc_bad += e.orbits != 1;
    }
  }
  report(5, exc_checked > 0 && exc_bad == 0,
         std::to_string(exc_checked) + " exceptional classes with r1 = 0, " + std::to_string(exc_bad) +
             " with more than one orbit");

  // Criterion 6.
  theta_identities(x);

  // Criterion 7.
  oracle_equivalences();

  // Criterion 8.
  triplication(x[14]);

  // Criterion 9.
  performance();

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
