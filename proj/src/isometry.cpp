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

#include "unilat/isometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "unilat/linalg.hpp"
#include "unilat/rootsys.hpp"
#include "unilat/vechash.hpp"

namespace unilat {

namespace {

constexpr std::size_t kFullFingerprint = 1200;

// A lattice in reduced coordinates with the vectors that may serve as images
// of basis vectors.
struct Side {
  Lattice red;
  Mat basis;  // columns: reduced basis in original coordinates
  VectorList vecs;
  std::vector<Int> prods;  // G v, flat
  std::vector<Int> phi;    // phi . v per vector, empty when unused
  std::vector<std::uint64_t> fp;
  VectorIndex index;

  int dim() const { return red.rank(); }
  const Int* prod(std::size_t i) const { return prods.data() + i * dim(); }
  Int dot(std::size_t i, std::size_t j) const {
    const Int* a = vecs[i];
    const Int* p = prod(j);
    Int s = 0;
    for (int t = 0; t < dim(); ++t) s += a[t] * p[t];
    return s;
  }
};

void build_side(Side& s, Int bound, const Vec* phi, const SearchOptions& opt) {
  const int n = s.red.rank();
  EnumOptions eo;
  eo.cap = opt.vector_cap;
  s.vecs = short_vectors_full(s.red, bound, eo);
  const std::size_t m = s.vecs.size();
  s.prods.resize(m * n);
  s.index = VectorIndex(n);
  for (std::size_t i = 0; i < m; ++i) {
    const Int* v = s.vecs[i];
    for (int r = 0; r < n; ++r) {
      Int t = 0;
      const Int* g = s.red.gram().row(r);
      for (int c = 0; c < n; ++c) t += g[c] * v[c];
      s.prods[i * n + r] = t;
    }
    s.index.insert(v);
  }
  if (phi) {
    s.phi.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      Int t = 0;
      for (int c = 0; c < n; ++c) t += (*phi)[c] * s.vecs[i][c];
      s.phi[i] = t;
    }
  }
  // Fingerprint: multiset of (norm, product, phi) against a reference set
  // chosen by an isometry-invariant rule.
  std::vector<std::size_t> ref;
  if (m <= kFullFingerprint) {
    ref.resize(m);
    std::iota(ref.begin(), ref.end(), 0);
  } else {
    Int mn = *std::min_element(s.vecs.norms.begin(), s.vecs.norms.end());
    for (std::size_t i = 0; i < m; ++i)
      if (s.vecs.norms[i] == mn) ref.push_back(i);
    if (ref.size() > kFullFingerprint) ref.clear();
  }
  s.fp.assign(m, 0);
  std::vector<std::uint64_t> keys(ref.size());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < ref.size(); ++r) {
      std::size_t j = ref[r];
      std::uint64_t k = static_cast<std::uint64_t>(s.vecs.norms[j]) * 1000003ULL +
                        static_cast<std::uint64_t>(s.dot(i, j) + 500000);
      if (!s.phi.empty()) k = mix64(k ^ static_cast<std::uint64_t>(s.phi[j]));
      keys[r] = k;
    }
    std::sort(keys.begin(), keys.end());
    std::uint64_t h = mix64(static_cast<std::uint64_t>(s.vecs.norms[i]));
    if (!s.phi.empty()) h = mix64(h ^ static_cast<std::uint64_t>(s.phi[i]) * 0x9e37ULL);
    for (auto k : keys) h = mix64(h ^ k);
    s.fp[i] = h;
  }
}

Side make_side(const Lattice& l, Int bound, const Vec* phi_orig, const SearchOptions& opt,
               const Mat* basis = nullptr) {
  Side s;
  if (basis) {
    s.basis = *basis;
    s.red = Lattice(congruence(l.gram(), s.basis));
  } else {
    s.red = lll_reduce(l, &s.basis);
  }
  Vec phi;
  if (phi_orig) phi = s.basis.transpose() * *phi_orig;
  build_side(s, bound, phi_orig ? &phi : nullptr, opt);
  return s;
}

// Backtracking search for images of the source basis among target vectors.
class Searcher {
 public:
  Searcher(const Mat& g1, const std::vector<std::uint64_t>& fp1, const Vec& phi1,
           const Side& tgt, const SearchOptions& opt)
      : g1_(g1), tgt_(tgt), n_(g1.rows), budget_(opt.node_budget) {
    std::vector<std::vector<std::uint32_t>> cand(n_);
    for (int k = 0; k < n_; ++k)
      for (std::size_t c = 0; c < tgt.vecs.size(); ++c) {
        if (tgt.vecs.norms[c] != g1(k, k)) continue;
        if (!tgt.phi.empty() && tgt.phi[c] != phi1[k]) continue;
        if (!fp1.empty() && tgt.fp[c] != fp1[k]) continue;
        cand[k].push_back(static_cast<std::uint32_t>(c));
      }
    // Level order: small candidate sets first, preferring levels tied to
    // those already placed.
    std::vector<char> used(n_, 0);
    for (int step = 0; step < n_; ++step) {
      int best = -1;
      bool best_linked = false;
      for (int k = 0; k < n_; ++k) {
        if (used[k]) continue;
        bool linked = false;
        for (int j : order_)
          if (g1(k, j) != 0) linked = true;
        if (best < 0 || (linked && !best_linked) ||
            (linked == best_linked && cand[k].size() < cand[best].size())) {
          best = k;
          best_linked = linked;
        }
      }
      used[best] = 1;
      order_.push_back(best);
    }
    cand_.resize(n_);
    for (int d = 0; d < n_; ++d) cand_[d] = std::move(cand[order_[d]]);
    pool_.assign(n_ + 1, std::vector<std::vector<std::uint32_t>>(n_));
  }

  const std::vector<int>& order() const { return order_; }
  std::size_t candidates(int d) const { return cand_[d].size(); }
  const std::vector<std::uint32_t>& candidate_list(int d) const { return cand_[d]; }

  // forced[d] >= 0 pins the image at depth d. Fills x (by depth).
  bool search(const std::vector<std::int64_t>& forced, std::vector<std::uint32_t>& x) {
    x.assign(n_, 0);
    for (int d = 0; d < n_; ++d) pool_[0][d] = cand_[d];
    return rec(0, forced, x);
  }

  // Image matrix (target coordinates) with columns in source basis order.
  Mat to_matrix(const std::vector<std::uint32_t>& x) const {
    Mat g(n_, n_);
    for (int d = 0; d < n_; ++d) {
      const Int* v = tgt_.vecs[x[d]];
      for (int i = 0; i < n_; ++i) g(i, order_[d]) = v[i];
    }
    return g;
  }

 private:
  bool rec(int d, const std::vector<std::int64_t>& forced, std::vector<std::uint32_t>& x) {
    if (d == n_) return true;
    if (++nodes_ > budget_)
      fail(ErrorKind::kBudget, "isometry search exceeded node budget of " +
                                   std::to_string(budget_));
    const auto& here = pool_[d][d];
    const int kd = order_[d];
    for (std::uint32_t c : here) {
      if (forced[d] >= 0 && c != forced[d]) continue;
      bool ok = true;
      for (int m = d + 1; m < n_ && ok; ++m) {
        auto& out = pool_[d + 1][m];
        out.clear();
        const Int want = g1_(order_[m], kd);
        for (std::uint32_t c2 : pool_[d][m])
          if (tgt_.dot(c2, c) == want) out.push_back(c2);
        if (out.empty() || (forced[m] >= 0 &&
                            std::find(out.begin(), out.end(), forced[m]) == out.end()))
          ok = false;
      }
      if (!ok) continue;
      x[d] = c;
      if (rec(d + 1, forced, x)) return true;
    }
    return false;
  }

  const Mat& g1_;
  const Side& tgt_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> order_;
  std::vector<std::vector<std::uint32_t>> cand_;
  std::vector<std::vector<std::vector<std::uint32_t>>> pool_;
};

Vec apply(const Mat& g, const Int* v) {
  Vec out(g.rows, 0);
  for (int i = 0; i < g.rows; ++i) {
    const Int* r = g.row(i);
    Int s = 0;
    for (int j = 0; j < g.cols; ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

// Closure of `seed` points under gens, added to `orbit`.
void close_orbit(VectorIndex& orbit, const std::vector<Mat>& gens, std::size_t from) {
  for (std::size_t i = from; i < orbit.size(); ++i)
    for (const auto& g : gens) {
      Vec w = apply(g, orbit[i]);
      orbit.insert(w.data());
    }
}

// Stabilizer chain over the reduced basis of a side. Returns generators in
// reduced coordinates.
IsometryGroup chain(const Side& s, const SearchOptions& opt) {
  const int n = s.dim();
  IsometryGroup out;
  out.dim = n;
  if (n == 0) return out;
  std::vector<std::uint64_t> fp1(n);
  std::vector<std::int64_t> base(n);
  Vec phi1(n, 0);
  for (int k = 0; k < n; ++k) {
    Vec e(n, 0);
    e[k] = 1;
    std::size_t id = s.index.find(e.data());
    if (id == VectorIndex::npos) fail(ErrorKind::kInternal, "basis vector missing from search set");
    base[k] = static_cast<std::int64_t>(id);
    fp1[k] = s.fp[id];
    if (!s.phi.empty()) phi1[k] = s.phi[id];
  }
  Searcher srch(s.red.gram(), fp1, phi1, s, opt);
  const auto& ord = srch.order();
  std::vector<std::int64_t> forced(n, -1);
  std::vector<std::uint32_t> x;
  for (int lvl = n - 1; lvl >= 0; --lvl) {
    // Fix depths < lvl to the basis itself.
    for (int d = 0; d < n; ++d) forced[d] = d < lvl ? base[ord[d]] : -1;
    Vec e(n, 0);
    e[ord[lvl]] = 1;
    VectorIndex orbit(n);
    orbit.insert(e.data());
    close_orbit(orbit, out.generators, 0);
    VectorIndex excluded(n);
    for (std::uint32_t c : srch.candidate_list(lvl)) {
      const Int* v = s.vecs[c];
      if (orbit.find(v) != VectorIndex::npos || excluded.find(v) != VectorIndex::npos) continue;
      // Cheap filter: must match fixed basis products.
      bool ok = true;
      for (int d = 0; d < lvl && ok; ++d)
        if (s.dot(c, base[ord[d]]) != s.red(ord[lvl], ord[d])) ok = false;
      if (!ok) continue;
      forced[lvl] = c;
      if (srch.search(forced, x)) {
        out.generators.push_back(srch.to_matrix(x));
        close_orbit(orbit, out.generators, 0);
      } else {
        std::size_t start = excluded.size();
        excluded.insert(v);
        close_orbit(excluded, out.generators, start);
      }
    }
    forced[lvl] = -1;
    out.order *= static_cast<unsigned long>(orbit.size());
  }
  return out;
}

Mat conjugate_back(const Mat& b, const Mat& g_red, const Mat& b_inv) { return b * g_red * b_inv; }

}  // namespace

bool preserves_gram(const Mat& g, const Mat& gram) { return congruence(gram, g) == gram; }

Mat reflection_matrix(const Lattice& l, const Vec& root) {
  const int n = l.rank();
  Vec p = l.products(root);
  Int nr = 0;
  for (int i = 0; i < n; ++i) nr += p[i] * root[i];
  Mat r = Mat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int t = 2 * root[i] * p[j];
      if (t % nr != 0) fail(ErrorKind::kInvalidInput, "vector does not define an integral reflection");
      r(i, j) -= t / nr;
    }
  return r;
}

IsometryGroup stabilizer_of_form(const Lattice& l, const Vec& phi, const SearchOptions& opt) {
  Mat b;
  Lattice red = lll_reduce(l, &b);
  bool use_phi = std::any_of(phi.begin(), phi.end(), [](Int t) { return t != 0; });
  Side s = make_side(l, red.max_diagonal(), use_phi ? &phi : nullptr, opt, &b);
  IsometryGroup g = chain(s, opt);
  Mat binv = inverse_unimodular(b);
  for (auto& m : g.generators) m = conjugate_back(b, m, binv);
  return g;
}

IsometryGroup automorphisms_direct(const Lattice& l, const SearchOptions& opt) {
  return stabilizer_of_form(l, Vec(l.rank(), 0), opt);
}

ReducedGroup reduced_group(const Lattice& l, const SearchOptions& opt) {
  ReducedGroup out;
  RootData rd = root_data(l);
  const int n = l.rank();
  Vec two_rho(n, 0);
  for (std::size_t i = 0; i < rd.positive_roots.size(); ++i)
    for (int k = 0; k < n; ++k) two_rho[k] += rd.positive_roots[i][k];
  Vec phi = l.products(two_rho);
  IsometryGroup g = stabilizer_of_form(l, phi, opt);
  out.weyl_order = rd.system.weyl_order();
  out.order = g.order;
  out.generators = std::move(g.generators);
  out.simple_roots = rd.simple_roots;
  return out;
}

IsometryGroup automorphisms(const Lattice& l, const SearchOptions& opt) {
  ReducedGroup r = reduced_group(l, opt);
  IsometryGroup out;
  out.dim = l.rank();
  for (const auto& a : r.simple_roots) out.generators.push_back(reflection_matrix(l, a));
  for (auto& g : r.generators) out.generators.push_back(std::move(g));
  out.order = r.weyl_order * r.order;
  return out;
}

std::optional<Mat> isometry(const Lattice& a, const Lattice& b, const SearchOptions& opt) {
  const int n = a.rank();
  if (b.rank() != n) return std::nullopt;
  if (n == 0) return Mat();
  if (determinant(a) != determinant(b) || a.is_even() != b.is_even()) return std::nullopt;
  RootData ra = root_data(a), rb = root_data(b);
  if (!(ra.system == rb.system)) return std::nullopt;
  auto phi_of = [n](const Lattice& l, const RootData& rd) {
    Vec two_rho(n, 0);
    for (std::size_t i = 0; i < rd.positive_roots.size(); ++i)
      for (int k = 0; k < n; ++k) two_rho[k] += rd.positive_roots[i][k];
    return l.products(two_rho);
  };
  const bool use_phi = !ra.positive_roots.norms.empty();
  Vec pa = phi_of(a, ra), pb = phi_of(b, rb);
  Mat bb;
  Lattice redb = lll_reduce(b, &bb);
  const Int bound = redb.max_diagonal();
  Side src = make_side(b, bound, use_phi ? &pb : nullptr, opt, &bb);
  Side tgt = make_side(a, bound, use_phi ? &pa : nullptr, opt);
  if (src.vecs.size() != tgt.vecs.size()) return std::nullopt;
  std::vector<std::uint64_t> fp1(n);
  Vec phi1(n, 0);
  for (int k = 0; k < n; ++k) {
    Vec e(n, 0);
    e[k] = 1;
    std::size_t id = src.index.find(e.data());
    fp1[k] = src.fp[id];
    if (use_phi) phi1[k] = src.phi[id];
  }
  // Fingerprint multisets must agree.
  auto sorted_fp = [](const Side& s) {
    auto f = s.fp;
    std::sort(f.begin(), f.end());
    return f;
  };
  if (sorted_fp(src) != sorted_fp(tgt)) return std::nullopt;
  Searcher srch(src.red.gram(), fp1, phi1, tgt, opt);
  std::vector<std::int64_t> forced(n, -1);
  std::vector<std::uint32_t> x;
  if (!srch.search(forced, x)) return std::nullopt;
  Mat xr = srch.to_matrix(x);
  Mat g = tgt.basis * xr * inverse_unimodular(bb);
  if (congruence(a.gram(), g) != b.gram()) fail(ErrorKind::kInternal, "isometry check failed");
  return g;
}

bool is_isometric(const Lattice& a, const Lattice& b, const SearchOptions& opt) {
  return isometry(a, b, opt).has_value();
}

Mat good_basis(const Lattice& l, std::uint64_t seed) {
  const int n = l.rank();
  Mat lll;
  Lattice red = lll_reduce(l, &lll);
  if (n == 0) return lll;
  const Int cap_norm = red.max_diagonal();
  const BigInt det = determinant(l);
  Int lo = cap_norm;
  for (int i = 0; i < n; ++i) lo = std::min(lo, red(i, i));
  std::mt19937_64 rng(seed ^ 0x5eedb10cULL);
  const std::uint64_t p = 2147483647ULL;
  for (Int d = lo; d < cap_norm; ++d) {
    VectorList vl;
    try {
      EnumOptions eo;
      eo.cap = 200000;
      vl = short_vectors_full(red, d, eo);
    } catch (const Error&) {
      break;
    }
    if (vl.size() < static_cast<std::size_t>(n)) continue;
    std::vector<std::size_t> idx(vl.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (int attempt = 0; attempt < 24; ++attempt) {
      std::shuffle(idx.begin(), idx.end(), rng);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t a, std::size_t b) { return vl.norms[a] < vl.norms[b]; });
      // Independence mod a large prime, exact determinant check at the end.
      std::vector<std::vector<std::uint64_t>> ech;
      std::vector<int> pivots;
      std::vector<std::size_t> chosen;
      for (std::size_t id : idx) {
        std::vector<std::uint64_t> r(n);
        for (int k = 0; k < n; ++k) r[k] = static_cast<std::uint64_t>(mod_pos(vl[id][k], p));
        for (std::size_t e = 0; e < ech.size(); ++e) {
          std::uint64_t f = r[pivots[e]];
          if (!f) continue;
          for (int k = 0; k < n; ++k) r[k] = (r[k] + (p - f) * ech[e][k]) % p;
        }
        int piv = -1;
        for (int k = 0; k < n; ++k)
          if (r[k]) {
            piv = k;
            break;
          }
        if (piv < 0) continue;
        // Normalize the pivot to 1.
        std::uint64_t inv = 1, base = r[piv], ex = p - 2;
        while (ex) {
          if (ex & 1) inv = static_cast<std::uint64_t>((static_cast<unsigned __int128>(inv) * base) % p);
          base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % p);
          ex >>= 1;
        }
        for (int k = 0; k < n; ++k) r[k] = r[k] * inv % p;
        for (std::size_t e = 0; e < ech.size(); ++e) {
          std::uint64_t f = ech[e][piv];
          if (!f) continue;
          for (int k = 0; k < n; ++k) ech[e][k] = (ech[e][k] + (p - f) * r[k]) % p;
        }
        ech.push_back(std::move(r));
        pivots.push_back(piv);
        chosen.push_back(id);
        if (static_cast<int>(chosen.size()) == n) break;
      }
      if (static_cast<int>(chosen.size()) < n) break;
      Mat c(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) c(i, j) = vl[chosen[j]][i];
      BigInt dc = determinant(c);
      if (dc == 1 || dc == -1) {
        Mat b = lll * c;
        return b;
      }
    }
  }
  return lll;
}

Lattice good_lattice(const Lattice& l, std::uint64_t seed) {
  return Lattice(congruence(l.gram(), good_basis(l, seed)));
}

Mod2Orbits orbits_mod2(const std::vector<Mat>& gens, int n, int max_dim) {
  if (n > max_dim || n > 31)
    fail(ErrorKind::kResourceCap, "mod 2 orbit dimension " + std::to_string(n) + " above cap");
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& g : gens) {
    if (g.rows != n || g.cols != n) fail(ErrorKind::kInvalidInput, "generator size mismatch");
    std::vector<std::uint32_t> r(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (g(i, j) & 1) r[i] |= 1u << j;
    rows.push_back(std::move(r));
  }
  const std::uint32_t total = n == 0 ? 1u : (1u << n);
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::uint32_t v = 0; v < total; ++v)
    for (const auto& r : rows) {
      std::uint32_t w = 0;
      for (int i = 0; i < n; ++i) w |= static_cast<std::uint32_t>(std::popcount(r[i] & v) & 1) << i;
      std::uint32_t a = find(v), b = find(w);
      if (a != b) {
        if (a < b)
          parent[b] = a;
        else
          parent[a] = b;
      }
    }
  // Roots are orbit minima since unions keep the smaller index.
  Mod2Orbits out;
  out.dim = n;
  std::vector<std::uint64_t> count(total, 0);
  for (std::uint32_t v = 0; v < total; ++v) ++count[find(v)];
  for (std::uint32_t v = 0; v < total; ++v)
    if (parent[v] == v) {
      out.representatives.push_back(v);
      out.sizes.push_back(count[v]);
    }
  return out;
}

VectorOrbits vector_orbits(const std::vector<Mat>& gens, const VectorList& vecs) {
  const int n = vecs.dim;
  VectorIndex index(n);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    if (index.insert(vecs[i]) != i) fail(ErrorKind::kInvalidInput, "duplicate vector in orbit input");
  VectorOrbits out;
  const std::uint32_t none = ~0u;
  out.orbit_of.assign(vecs.size(), none);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < vecs.size(); ++s) {
    if (out.orbit_of[s] != none) continue;
    const std::uint32_t id = static_cast<std::uint32_t>(out.representatives.size());
    queue.assign(1, s);
    out.orbit_of[s] = id;
    std::size_t best = s;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Int* v = vecs[queue[q]];
      for (const auto& g : gens) {
        Vec w = apply(g, v);
        std::size_t j = index.find(w.data());
        if (j == VectorIndex::npos) fail(ErrorKind::kInvalidInput, "vector set not closed under the group");
        if (out.orbit_of[j] == none) {
          out.orbit_of[j] = id;
          queue.push_back(j);
          if (std::lexicographical_compare(vecs[j], vecs[j] + n, vecs[best], vecs[best] + n)) best = j;
        }
      }
    }
    out.representatives.push_back(best);
    out.sizes.push_back(queue.size());
  }
  return out;
}

}  // namespace unilat
