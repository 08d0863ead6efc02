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

#include "unilat/rootsys.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "unilat/linalg.hpp"
#include "unilat/residue.hpp"
#include "unilat/vechash.hpp"

namespace unilat {

IrrType normalize_type(Family f, int rank) {
  if (f == Family::D && rank == 3) return {Family::A, 3};
  if (f == Family::E && (rank < 6 || rank > 8))
    fail(ErrorKind::kInvalidInput, "invalid rank for E: " + std::to_string(rank));
  if (f == Family::D && rank < 2)
    fail(ErrorKind::kInvalidInput, "invalid rank for D: " + std::to_string(rank));
  if (rank < 1) fail(ErrorKind::kInvalidInput, "invalid root system rank");
  return {f, rank};
}

std::string IrrType::str() const {
  const char* f = family == Family::A ? "A" : family == Family::D ? "D" : "E";
  return f + std::to_string(rank);
}

BigInt IrrType::weyl_order() const {
  BigInt fact = 1;
  for (int i = 2; i <= rank + (family == Family::A ? 1 : 0); ++i) fact *= i;
  switch (family) {
    case Family::A:
      return fact;
    case Family::D: {
      BigInt p = 1;
      for (int i = 1; i < rank; ++i) p *= 2;
      return p * fact;
    }
    case Family::E:
      if (rank == 6) return 51840;
      if (rank == 7) return 2903040;
      return 696729600;
  }
  return 0;
}

int IrrType::coxeter() const {
  switch (family) {
    case Family::A:
      return rank + 1;
    case Family::D:
      return 2 * rank - 2;
    case Family::E:
      return rank == 6 ? 12 : rank == 7 ? 18 : 30;
  }
  return 0;
}

Lattice IrrType::root_lattice() const {
  const char* f = family == Family::A ? "A" : family == Family::D ? "D" : "E";
  return standard_lattice(f, rank);
}

RootSystem::RootSystem(std::vector<IrrType> irr) {
  std::vector<IrrType> norm;
  for (const auto& t : irr) {
    if (t.family == Family::D && t.rank == 2) {
      norm.push_back({Family::A, 1});
      norm.push_back({Family::A, 1});
    } else {
      norm.push_back(normalize_type(t.family, t.rank));
    }
  }
  std::sort(norm.begin(), norm.end());
  for (const auto& t : norm) {
    if (!comps_.empty() && comps_.back().type == t)
      ++comps_.back().mult;
    else
      comps_.push_back({t, 1});
  }
}

RootSystem RootSystem::parse(const std::string& s) {
  if (s == "0" || s.empty()) return RootSystem();
  std::vector<IrrType> irr;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    size_t p = 0;
    int mult = 0;
    while (p < tok.size() && std::isdigit(static_cast<unsigned char>(tok[p])))
      mult = mult * 10 + (tok[p++] - '0');
    if (p == 0) mult = 1;
    if (p >= tok.size()) fail(ErrorKind::kInvalidInput, "bad root system '" + s + "'");
    char f = tok[p++];
    std::string rest = tok.substr(p);
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::kInvalidInput, "bad root system '" + s + "'");
    int r = std::stoi(rest);
    Family fam;
    if (f == 'A')
      fam = Family::A;
    else if (f == 'D')
      fam = Family::D;
    else if (f == 'E')
      fam = Family::E;
    else
      fail(ErrorKind::kInvalidInput, "bad root system '" + s + "'");
    for (int i = 0; i < mult; ++i) irr.push_back({fam, r});
  }
  return RootSystem(irr);
}

std::string RootSystem::str() const {
  if (comps_.empty()) return "0";
  std::string s;
  for (const auto& c : comps_) {
    if (!s.empty()) s += '+';
    if (c.mult > 1) s += std::to_string(c.mult);
    s += c.type.str();
  }
  return s;
}

std::vector<Component> RootSystem::isotypic_order() const {
  std::vector<Component> v = comps_;
  std::stable_sort(v.begin(), v.end(), [](const Component& a, const Component& b) {
    if (a.mult != b.mult) return a.mult < b.mult;
    return a.type < b.type;
  });
  return v;
}

int RootSystem::rank() const {
  int r = 0;
  for (const auto& c : comps_) r += c.mult * c.type.rank;
  return r;
}

Int RootSystem::root_count() const {
  Int r = 0;
  for (const auto& c : comps_) r += c.mult * c.type.root_count();
  return r;
}

BigInt RootSystem::weyl_order() const {
  BigInt w = 1;
  for (const auto& c : comps_)
    for (int i = 0; i < c.mult; ++i) w *= c.type.weyl_order();
  return w;
}

int RootSystem::m1() const {
  int m = 0;
  for (const auto& c : comps_) m += (c.mult == 1);
  return m;
}

int RootSystem::irreducible_count() const {
  int m = 0;
  for (const auto& c : comps_) m += c.mult;
  return m;
}

Lattice RootSystem::root_lattice() const {
  std::vector<Lattice> parts;
  for (const auto& c : comps_)
    for (int i = 0; i < c.mult; ++i) parts.push_back(c.type.root_lattice());
  if (parts.empty()) fail(ErrorKind::kInvalidInput, "empty root system has no root lattice");
  return direct_sum(parts);
}

IrrType classify_connected_diagram(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  int edges = 0, branch = -1;
  for (int i = 0; i < n; ++i) {
    edges += static_cast<int>(adj[i].size());
    if (adj[i].size() > 3) fail(ErrorKind::kInternal, "diagram node of degree > 3");
    if (adj[i].size() == 3) {
      if (branch >= 0) fail(ErrorKind::kInternal, "diagram with two branch nodes");
      branch = i;
    }
  }
  if (edges / 2 != n - 1) fail(ErrorKind::kInternal, "diagram is not a tree");
  if (branch < 0) return {Family::A, n};
  std::vector<int> arms;
  for (int start : adj[branch]) {
    int len = 1, prev = branch, cur = start;
    while (true) {
      int next = -1;
      for (int x : adj[cur])
        if (x != prev) next = x;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {Family::D, n};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {Family::E, n};
  fail(ErrorKind::kInternal, "diagram is not of ADE type");
}

std::vector<IrrType> classify_diagram(const Mat& cartan, std::vector<int>* comp_of) {
  const int n = cartan.rows;
  std::vector<int> comp(n, -1);
  std::vector<IrrType> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    std::vector<int> nodes{s};
    comp[s] = id;
    for (size_t q = 0; q < nodes.size(); ++q)
      for (int j = 0; j < n; ++j)
        if (j != nodes[q] && cartan(nodes[q], j) != 0 && comp[j] < 0) {
          comp[j] = id;
          nodes.push_back(j);
        }
    std::sort(nodes.begin(), nodes.end());
    std::vector<std::vector<int>> adj(nodes.size());
    for (size_t a = 0; a < nodes.size(); ++a)
      for (size_t b = 0; b < nodes.size(); ++b)
        if (a != b && cartan(nodes[a], nodes[b]) != 0) adj[a].push_back(static_cast<int>(b));
    out.push_back(classify_connected_diagram(adj));
  }
  if (comp_of) *comp_of = comp;
  return out;
}

int RootData::component_of(const Lattice& l, const Vec& root) const {
  Vec p = l.products(root);
  for (size_t i = 0; i < simple_roots.size(); ++i) {
    Int s = 0;
    for (size_t j = 0; j < p.size(); ++j) s += p[j] * simple_roots[i][j];
    if (s != 0) return component_of_simple[i];
  }
  return -1;
}

RootData root_data(const Lattice& l) {
  const int n = l.rank();
  RootData rd;
  auto rep = short_vectors(l, Int{2});
  rd.positive_roots.dim = n;
  for (size_t i = 0; i < rep.vectors.size(); ++i)
    if (rep.vectors.norms[i] == 2) rd.positive_roots.push(rep.vectors[i], 2);
  const size_t np = rd.positive_roots.size();
  VectorIndex idx(n);
  for (size_t i = 0; i < np; ++i) idx.insert(rd.positive_roots[i]);
  Vec diff(n);
  Vec sum(n, 0);
  for (size_t i = 0; i < np; ++i) {
    const Int* a = rd.positive_roots[i];
    for (int k = 0; k < n; ++k) sum[k] += a[k];
    bool simple = true;
    for (size_t j = 0; j < np && simple; ++j) {
      if (j == i) continue;
      const Int* b = rd.positive_roots[j];
      for (int k = 0; k < n; ++k) diff[k] = a[k] - b[k];
      if (idx.find(diff.data()) != VectorIndex::npos) simple = false;
    }
    if (simple) rd.simple_roots.emplace_back(a, a + n);
  }
  rd.weyl_vector = DualVector(sum, 2);
  const int k = static_cast<int>(rd.simple_roots.size());
  Mat cartan(k, k);
  std::vector<Vec> prods;
  for (const auto& s : rd.simple_roots) prods.push_back(l.products(s));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Int s = 0;
      for (int t = 0; t < n; ++t) s += prods[i][t] * rd.simple_roots[j][t];
      cartan(i, j) = s;
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && cartan(i, j) != 0 && cartan(i, j) != -1)
        fail(ErrorKind::kInternal, "simple roots with inner product not in {0,-1}");
  rd.irreducible = classify_diagram(cartan, &rd.component_of_simple);
  rd.component_of_root.resize(np);
  for (size_t i = 0; i < np; ++i) {
    Vec r(rd.positive_roots[i], rd.positive_roots[i] + n);
    rd.component_of_root[i] = rd.component_of(l, r);
  }
  rd.system = RootSystem(rd.irreducible);
  if (rd.system.root_count() != static_cast<Int>(2 * np))
    fail(ErrorKind::kInternal, "root count does not match classified diagram");
  return rd;
}

GroupConstants group_constants(const RootSystem& r) {
  GroupConstants g;
  g.weyl_order = r.weyl_order();
  g.root_count = r.root_count();
  for (const auto& c : r.components()) g.coxeter.push_back(c.type.coxeter());
  return g;
}

namespace {

Int np_irreducible(const IrrType& t) {
  if (t.family == Family::A && t.rank <= 2) return 0;
  if (t.family == Family::D) return 2;
  return 1;
}

bool small_a(const IrrType& t) { return t.family == Family::A && t.rank <= 2; }

}  // namespace

PairStats orthogonal_pair_stats(const RootSystem& r) {
  PairStats s;
  Int h = r.irreducible_count();
  s.np = h * (h - 1) / 2;
  for (const auto& c : r.components()) s.np += c.mult * np_irreducible(c.type);
  if (r.empty()) return s;
  auto iso = r.isotypic_order();
  int m1 = r.m1();
  if (m1 >= 2) {
    s.npr = 1;
  } else if (m1 == 1) {
    const IrrType& c1 = iso[0].type;
    if (small_a(c1))
      s.npr = iso.size() > 1 ? iso[1].mult : 0;
    else
      s.npr = np_irreducible(c1);
  } else {
    Int m = iso[0].mult;
    s.npr = m * (m - 1) / 2;
  }
  return s;
}

bool is_relevant_pair(const std::vector<IrrType>& irr, int ca, int cb) {
  RootSystem r(irr);
  auto iso = r.isotypic_order();
  auto iso_index = [&](const IrrType& t) {
    for (size_t i = 0; i < iso.size(); ++i)
      if (iso[i].type == t) return static_cast<int>(i);
    return -1;
  };
  int ia = iso_index(irr[ca]), ib = iso_index(irr[cb]);
  int m1 = r.m1();
  auto meets_both = [&]() { return (ia == 0 && ib == 1) || (ia == 1 && ib == 0); };
  if (m1 >= 2) return meets_both();
  if (m1 == 1) {
    if (ia == 0 && ib == 0) return true;
    return small_a(iso[0].type) && meets_both();
  }
  return ia == 0 && ib == 0 && ca != cb;
}

std::vector<FertileClass> fertile_classes(const RootSystem& r) {
  Lattice q = r.root_lattice();
  const int n = q.rank();
  FiniteQuadraticModule res(q);
  std::vector<FertileClass> out;
  for (const auto& c : res.elements()) {
    if (res.is_zero(c)) continue;
    DualVector x = res.lift(c);
    VectorList vl = coset_short_vectors(q, x, Rational(2));
    Int den2 = x.denom * x.denom;
    Int best = -1;
    for (size_t i = 0; i < vl.size(); ++i)
      if (vl.norms[i] < 2 * den2 && (best < 0 || vl.norms[i] < best)) best = vl.norms[i];
    if (best < 0) continue;
    FertileClass fc;
    fc.nu = Rational(static_cast<long>(best), static_cast<long>(den2));
    fc.nu.canonicalize();
    bool found = false;
    for (size_t i = 0; i < vl.size(); ++i) {
      if (vl.norms[i] != best) continue;
      ++fc.minimal_lifts;
      Vec w(vl[i], vl[i] + n);
      Vec p = q.products(w);  // numerators over x.denom
      bool dominant = std::all_of(p.begin(), p.end(), [](Int t) { return t >= 0; });
      if (dominant && !found) {
        found = true;
        fc.class_rep = DualVector(w, x.denom);
        for (int k = 0; k < n; ++k)
          if (p[k] == x.denom) fc.attach.push_back(k);
      }
    }
    if (!found) fail(ErrorKind::kInternal, "no dominant minimal lift");
    Mat cart(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cart(i, j) = q(i, j);
    cart(n, n) = 2;
    for (int k : fc.attach) cart(n, k) = cart(k, n) = -1;
    fc.extension = RootSystem(classify_diagram(cart));
    out.push_back(std::move(fc));
  }
  return out;
}

Lattice extended_root_lattice(const RootSystem& r, const FertileClass& c) {
  Lattice q = r.root_lattice();
  const int n = q.rank();
  Mat g(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = q(i, j);
  Vec p = q.products(c.class_rep.coords);
  for (int i = 0; i < n; ++i) {
    if (p[i] % c.class_rep.denom != 0) fail(ErrorKind::kInternal, "class rep not in dual");
    g(i, n) = g(n, i) = -p[i] / c.class_rep.denom;
  }
  g(n, n) = 2;
  return Lattice(g);
}

namespace {

// Reflection of x in the root a (norm 2) of lattice q.
void reflect(const Lattice& q, const Vec& a, Vec& x) {
  Int t = q.dot(x, a);
  if (t == 0) return;
  for (size_t i = 0; i < x.size(); ++i) x[i] -= t * a[i];
}

// Canonical representative of a tuple under W, via successive parabolic
// dominance with respect to the simple roots (the basis of q).
std::vector<Vec> canonical_tuple(const Lattice& q, std::vector<Vec> t) {
  const int n = q.rank();
  std::vector<int> J(n);
  for (int i = 0; i < n; ++i) J[i] = i;
  std::vector<Vec> simple(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) simple[i][i] = 1;
  for (size_t s = 0; s < t.size(); ++s) {
    while (true) {
      Vec p = q.products(t[s]);
      int bad = -1;
      for (int j : J)
        if (p[j] < 0) {
          bad = j;
          break;
        }
      if (bad < 0) break;
      for (auto& v : t) reflect(q, simple[bad], v);
    }
    Vec p = q.products(t[s]);
    std::vector<int> nj;
    for (int j : J)
      if (p[j] == 0) nj.push_back(j);
    J = nj;
  }
  return t;
}

}  // namespace

EmbeddingOrbits root_embedding_orbits(const RootSystem& s, const RootSystem& r,
                                      std::size_t node_cap) {
  Lattice q = r.root_lattice();
  Lattice qs = s.root_lattice();
  const int n = q.rank(), k = qs.rank();
  VectorList roots = short_vectors_full(q, 2);
  std::vector<Vec> prods(roots.size());
  for (size_t i = 0; i < roots.size(); ++i) prods[i] = q.products(roots.vec(i));
  std::vector<std::vector<Vec>> found;
  std::vector<int> choice(k, -1);
  std::size_t nodes = 0;
  // DFS over tuples in canonical form.
  std::function<void(int, const std::vector<int>&)> dfs = [&](int lvl, const std::vector<int>& J) {
    if (++nodes > node_cap) fail(ErrorKind::kResourceCap, "embedding search exceeded cap");
    if (lvl == k) {
      std::vector<Vec> t;
      for (int c : choice) t.push_back(roots.vec(c));
      found.push_back(t);
      return;
    }
    for (size_t c = 0; c < roots.size(); ++c) {
      const Vec& p = prods[c];
      bool ok = true;
      for (int j : J)
        if (p[j] < 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (int prev = 0; prev < lvl && ok; ++prev) {
        Int ip = 0;
        const Int* w = roots[choice[prev]];
        for (int t = 0; t < n; ++t) ip += p[t] * w[t];
        if (ip != qs(lvl, prev)) ok = false;
      }
      if (!ok) continue;
      choice[lvl] = static_cast<int>(c);
      std::vector<int> nj;
      for (int j : J)
        if (p[j] == 0) nj.push_back(j);
      dfs(lvl + 1, nj);
    }
  };
  std::vector<int> J(n);
  for (int i = 0; i < n; ++i) J[i] = i;
  dfs(0, J);
  // Merge each W-orbit with the orbit of its negative.
  std::set<std::vector<Vec>> seen;
  EmbeddingOrbits out;
  for (const auto& t : found) {
    if (seen.count(t)) continue;
    std::vector<Vec> neg = t;
    for (auto& v : neg)
      for (auto& x : v) x = -x;
    seen.insert(t);
    seen.insert(canonical_tuple(q, neg));
    EmbeddingOrbit o;
    o.images = t;
    Mat b(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) b(i, j) = t[j][i];
    o.saturated = is_saturated(b);
    out.orbits.push_back(o);
  }
  return out;
}

}  // namespace unilat
