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
#include <set>

#include "unilat/classify.hpp"
#include "unilat/linalg.hpp"
#include "unilat/residue.hpp"
#include "unilat/rootsys.hpp"

namespace unilat {

namespace {

Int inverse_mod(Int a, Int m) {
  a = mod_pos(a, m);
  Int t = 0, nt = 1, r = m, nr = a;
  while (nr != 0) {
    Int q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) fail(ErrorKind::kInvalidInput, "no inverse modulo " + std::to_string(m));
  return mod_pos(t, m);
}

bool has_norm_one(const Lattice& l) { return theta_counts(l, 1)[1] != 0; }

}  // namespace

ExtendResult extend_orthogonal_roots(const ClassRecord& rec, const SearchOptions& opt) {
  (void)opt;
  const Lattice& l = rec.lattice;
  const int n = l.rank();
  const Mat& g = l.gram();
  ExtendResult out;
  Mod2Orbits orb = orbits_mod2(rec.aut_generators, n);
  out.orbits = orb.representatives.size();
  VectorList norm1 = short_vectors_full(l, 1);

  Mat amb(n + 2, n + 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) amb(i, j) = g(i, j);
  amb(n, n) = 2;
  amb(n + 1, n + 1) = 2;

  for (std::size_t k = 0; k < orb.representatives.size(); ++k) {
    const std::uint32_t bits = orb.representatives[k];
    if (bits == 0) continue;
    Vec e(n, 0);
    for (int i = 0; i < n; ++i) e[i] = (bits >> i) & 1;
    if (mod_pos(l.norm(e), 4) != 2) continue;
    Vec ge = l.products(e);
    // A norm 1 vector of L orthogonal to e mod 2 survives in U.
    bool bad = false;
    for (std::size_t t = 0; t < norm1.size() && !bad; ++t) {
      Int s = 0;
      for (int i = 0; i < n; ++i) s += ge[i] * norm1[t][i];
      if (mod_pos(s, 2) == 0) bad = true;
    }
    if (bad) continue;
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (mod_pos(ge[i], 2) == 1) {
        piv = i;
        break;
      }
    if (piv < 0) fail(ErrorKind::kInternal, "class in L/2L has even products with all of L");
    // Generators over denominator 2 in L + Q0.
    std::vector<Vec> gens;
    for (int j = 0; j < n; ++j) {
      Vec v(n + 2, 0);
      if (j == piv) {
        v[j] = 4;
      } else {
        v[j] = 2;
        if (mod_pos(ge[j], 2) == 1) v[piv] = 2;
      }
      gens.push_back(v);
    }
    Vec a0(n + 2, 0), b0(n + 2, 0);
    a0[n] = 2;
    b0[n + 1] = 2;
    gens.push_back(a0);
    gens.push_back(b0);
    Vec g1(n + 2, 0), g2(n + 2, 0);
    for (int i = 0; i < n; ++i) g1[i] = g2[i] = e[i];
    g1[n] = 1;
    g2[piv] += 2;
    g2[n + 1] = 1;
    gens.push_back(g1);
    gens.push_back(g2);
    Mat basis;
    Lattice u = lattice_from_generators(amb, gens, 2, &basis);
    if (determinant(u) != 1) fail(ErrorKind::kInternal, "U(L,e) is not unimodular");
    if (has_norm_one(u)) continue;
    RootData rd = root_data(u);
    Vec ua(n + 2, 0), ub(n + 2, 0);
    ua[n] = 1;
    ub[n + 1] = 1;
    Vec xa = solve_in_basis(basis, 2, ua, 1);
    Vec xb = solve_in_basis(basis, 2, ub, 1);
    int ca = rd.component_of(u, xa), cb = rd.component_of(u, xb);
    if (!is_relevant_pair(rd.irreducible, ca, cb)) continue;
    ++out.admissible;
    ExtendCandidate c;
    c.lattice = u;
    c.mod2_class = bits;
    c.orbit_size = orb.sizes[k];
    if (rd.system.m1() >= 2) {
      c.check_mass = true;
      BigInt num = BigInt(rd.irreducible[ca].root_count()) * rd.irreducible[cb].root_count() *
                   rec.aut_order;
      c.predicted_order = num / BigInt(static_cast<unsigned long>(c.orbit_size));
      if (c.predicted_order * BigInt(static_cast<unsigned long>(c.orbit_size)) != num)
        c.predicted_order = -1;
    }
    out.candidates.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<ClassRecord>> classify_unimodular(
    int max_rank, UnimodularStats* stats, const SearchOptions& opt,
    const std::function<void(int, const std::vector<ClassRecord>&)>& progress) {
  if (max_rank < 1) fail(ErrorKind::kInvalidInput, "max rank must be positive");
  if (max_rank > 30) fail(ErrorKind::kResourceCap, "rank above 30 is out of scope");
  UnimodularStats local;
  UnimodularStats& st = stats ? *stats : local;
  InvariantSpec spec;
  std::vector<std::vector<ClassRecord>> x(max_rank + 1);
  const Lattice i1 = parse_standard("I1");
  for (int n = 1; n <= max_rank; ++n) {
    std::vector<ClassRecord> level;
    if (n == 1) {
      level.push_back(make_record(i1, "I1", spec, opt));
    } else {
      for (const auto& c : x[n - 1])
        level.push_back(make_record(direct_sum(c.lattice, i1), c.provenance + "+I1", spec, opt));
    }
    if (n >= 3) {
      ClassTable table(spec, opt);
      for (std::size_t li = 0; li < x[n - 2].size(); ++li) {
        const ClassRecord& src = x[n - 2][li];
        ExtendResult er = extend_orthogonal_roots(src, opt);
        for (auto& c : er.candidates) {
          ++st.candidates;
          long idx = -1;
          std::string prov = "U(" + src.root_system + "#" + std::to_string(li) + ",e=" +
                             std::to_string(c.mod2_class) + ")";
          table.insert(c.lattice, prov, &idx);
          if (idx >= 0 && c.check_mass) {
            ++st.mass_checks;
            if (table.classes()[idx].aut_order != c.predicted_order) ++st.mass_mismatches;
          }
        }
      }
      st.unresolved += table.stats().unresolved;
      for (auto& r : table.take()) level.push_back(std::move(r));
    }
    sort_canonical(level);
    x[n] = std::move(level);
    if (progress) progress(n, x[n]);
  }
  return x;
}

Lattice kneser_neighbor(const Lattice& l, Int d, const Vec& x_in) {
  const int n = l.rank();
  if (d < 1) fail(ErrorKind::kInvalidInput, "neighbor index must be positive");
  if (static_cast<int>(x_in.size()) != n) fail(ErrorKind::kInvalidInput, "vector has wrong length");
  if (d == 1) return l;
  Vec x = x_in;
  Int g = d;
  for (Int c : x) g = gcd_int(g, c);
  if (g != 1) fail(ErrorKind::kInvalidInput, "vector is not primitive modulo d");
  Int nx = l.norm(x);
  if (mod_pos(nx, d * d) != 0) {
    Vec gx = l.products(x);
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (gcd_int(mod_pos(gx[i], d), d) == 1) {
        piv = i;
        break;
      }
    if (d % 2 == 0 || mod_pos(nx, d) != 0 || piv < 0)
      fail(ErrorKind::kInvalidInput, "norm congruence x.x = 0 mod d^2 is not satisfiable");
    Int t = mod_pos(-(nx / d) * inverse_mod(2 * gx[piv], d), d);
    x[piv] += d * t;
    nx = l.norm(x);
    if (mod_pos(nx, d * d) != 0) fail(ErrorKind::kInternal, "norm adjustment failed");
  }
  Vec gx = l.products(x);
  // {v : gx.v = 0 mod d} from the kernel of [gx | d].
  Mat row(1, n + 1);
  for (int i = 0; i < n; ++i) row(0, i) = mod_pos(gx[i], d);
  row(0, n) = d;
  Mat ker = integer_kernel(row);
  std::vector<Vec> gens;
  for (int r = 0; r < ker.rows; ++r) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = ker(r, i) * d;
    gens.push_back(v);
  }
  gens.push_back(x);
  Lattice out = lattice_from_generators(l.gram(), gens, d);
  if (out.rank() != n || determinant(out) != determinant(l))
    fail(ErrorKind::kInternal, "neighbor construction changed rank or determinant");
  return lll_reduce(out);
}

std::vector<Lattice> neighbor_search(const Lattice& l, const NeighborSearchOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Int> dist(-opt.coord_range, opt.coord_range);
  std::vector<Lattice> out;
  const int n = l.rank();
  for (std::size_t a = 0; a < opt.attempts; ++a) {
    Vec x(n);
    for (auto& c : x) {
      do {
        c = dist(rng);
      } while (mod_pos(c, opt.d) == 0);
    }
    Lattice nb;
    try {
      nb = kneser_neighbor(l, opt.d, x);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInvalidInput) throw;
      continue;
    }
    if (opt.require_no_norm1 && has_norm_one(nb)) continue;
    if (!opt.root_system.empty() && root_data(nb).system.str() != opt.root_system) continue;
    out.push_back(std::move(nb));
  }
  return out;
}

ExcReport exceptional_report(const Lattice& l) {
  ExcReport rep;
  if (determinant(l) != 1) fail(ErrorKind::kInvalidInput, "exceptional vectors need a unimodular lattice");
  VectorList exc = exceptional_vectors(l);
  rep.exc_count = exc.size();
  const int n = l.rank();
  rep.applicable = exc.size() > 0 && n % 8 != 6 && n % 8 != 7 && !has_norm_one(l);
  if (exc.size() == 0) return rep;
  std::vector<Mat> gens;
  for (const auto& a : root_data(l).simple_roots) gens.push_back(reflection_matrix(l, a));
  VectorList units = short_vectors(l, 1).vectors;
  for (std::size_t i = 0; i < units.size(); ++i) gens.push_back(reflection_matrix(l, units.vec(i)));
  Mat minus = Mat::identity(n);
  for (auto& v : minus.a) v = -v;
  gens.push_back(minus);
  VectorOrbits vo = vector_orbits(gens, exc);
  rep.orbits = vo.representatives.size();
  rep.ok = !rep.applicable || rep.orbits == 1;
  return rep;
}

TriplicateResult triplicate(const Lattice& l, const Vec& root, const SearchOptions& opt) {
  const int n = l.rank();
  if (n % 8 != 6) fail(ErrorKind::kInvalidInput, "triplication needs rank 6 mod 8");
  if (determinant(l) != 1) fail(ErrorKind::kInvalidInput, "triplication needs a unimodular lattice");
  if (l.norm(root) != 2) fail(ErrorKind::kInvalidInput, "triplication needs a root");
  EvenPart ev = even_part(l);
  Vec ae = solve_in_basis(ev.basis, 1, root, 1);
  Mat hb = orthogonal_complement_basis(ev.lattice, {ae});
  Lattice h = lll_reduce(sublattice(ev.lattice, hb));
  FiniteQuadraticModule rh(h);
  using El = FiniteQuadraticModule::Element;
  std::vector<El> w;
  for (const auto& x : rh.elements())
    if (!rh.is_zero(x) && rh.quadratic(x) == Rational(3, 4)) w.push_back(x);
  if (w.size() != 3) fail(ErrorKind::kInternal, "expected three classes with q = 3/4");
  const int m = h.rank();
  Lattice nlat = direct_sum(h, parse_standard("A1"));
  auto embed = [&](const DualVector& x, Int half_alpha) {
    Int den = x.denom;
    if (half_alpha) den = den % 2 == 0 ? den : 2 * den;
    Vec c(n, 0);
    for (int i = 0; i < m; ++i) c[i] = x.coords[i] * (den / x.denom);
    c[m] = half_alpha ? den / 2 : 0;
    return DualVector(c, den);
  };
  TriplicateResult out;
  // Subgroups of res N = res H + Z/2 as sets.
  std::vector<std::set<std::pair<El, int>>> subgroups;
  for (int k = 0; k < 3; ++k) {
    const El& a = w[k];
    El b = rh.add(w[(k + 1) % 3], w[(k + 2) % 3]);
    DualVector ga = embed(rh.lift(a), 1);
    DualVector gb = embed(rh.lift(b), 0);
    Mat basis;
    Int bden = 1;
    Lattice lw = overlattice(nlat, {ga, gb}, &basis, &bden);
    if (determinant(lw) != 1) fail(ErrorKind::kInternal, "L_w is not unimodular");
    Vec alpha(n, 0);
    alpha[m] = 1;
    Mat red;
    Lattice lwr = lll_reduce(lw, &red);
    Vec ax = solve_in_basis(basis, bden, alpha, 1);
    out.roots.push_back(inverse_unimodular(red) * ax);
    out.lattices.push_back(lwr);
    std::set<std::pair<El, int>> s;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        El e = rh.zero();
        if (i) e = rh.add(e, a);
        if (j) e = rh.add(e, b);
        s.insert({e, i});
      }
    subgroups.push_back(std::move(s));
  }
  out.pairwise_neighbors = true;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      std::size_t common = 0;
      for (const auto& e : subgroups[i]) common += subgroups[j].count(e);
      if (subgroups[i].size() != 4 || common != 2) out.pairwise_neighbors = false;
    }
  for (int k = 0; k < 3 && out.source_index < 0; ++k)
    if (is_isometric(out.lattices[k], l, opt)) out.source_index = k;
  return out;
}

std::vector<Vec> root_orbit_representatives(const ClassRecord& r) {
  VectorList all = short_vectors_full(r.lattice, 2);
  VectorList roots;
  roots.dim = all.dim;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all.norms[i] == 2) roots.push(all[i], 2);
  VectorOrbits vo = vector_orbits(r.aut_generators, roots);
  std::vector<Vec> out;
  for (std::size_t i : vo.representatives) out.push_back(roots.vec(i));
  return out;
}

}  // namespace unilat
