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

#include "unilat/residue.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "unilat/linalg.hpp"

namespace unilat {

namespace {

Rational mod2(const Rational& r) {
  Rational h = r / 2;
  return frac_part(h) * 2;
}

Int lcm_int(Int a, Int b) { return a / gcd_int(a, b) * b; }

}  // namespace

FiniteQuadraticModule::FiniteQuadraticModule(const Lattice& l)
    : lattice_(l), even_(l.is_even()) {
  const int n = l.rank();
  SmithForm s = smith_form(l.gram());
  Mat v = to_mat(s.v);
  v_inv_ = to_mat(s.v_inv);
  for (int t = 0; t < n; ++t) {
    Int d = s.diag[t].get_si();
    full_div_.push_back(d);
    if (d <= 1) continue;
    div_.push_back(d);
    gens_.emplace_back(v.column(t), d);
  }
  const size_t k = gens_.size();
  bil_.assign(k, std::vector<Rational>(k));
  norm2_.resize(k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      Rational x = l.dot(gens_[i], gens_[j]);
      bil_[i][j] = frac_part(x);
      if (i == j) norm2_[i] = mod2(x);
    }
}

FiniteQuadraticModule residue(const Lattice& l) { return FiniteQuadraticModule(l); }

Int FiniteQuadraticModule::order() const {
  Int o = 1;
  for (Int d : div_) o *= d;
  return o;
}

std::vector<FiniteQuadraticModule::Element> FiniteQuadraticModule::elements() const {
  std::vector<Element> out;
  Element x = zero();
  const size_t k = div_.size();
  while (true) {
    out.push_back(x);
    size_t i = 0;
    while (i < k) {
      if (++x[i] < div_[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return out;
}

FiniteQuadraticModule::Element FiniteQuadraticModule::add(const Element& x,
                                                          const Element& y) const {
  Element r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = (x[i] + y[i]) % div_[i];
  return r;
}

FiniteQuadraticModule::Element FiniteQuadraticModule::neg(const Element& x) const {
  Element r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = mod_pos(-x[i], div_[i]);
  return r;
}

FiniteQuadraticModule::Element FiniteQuadraticModule::scale(const Element& x, Int k) const {
  Element r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = mod_pos(x[i] * (k % div_[i]), div_[i]);
  return r;
}

bool FiniteQuadraticModule::is_zero(const Element& x) const {
  return std::all_of(x.begin(), x.end(), [](Int a) { return a == 0; });
}

Int FiniteQuadraticModule::element_order(const Element& x) const {
  Int o = 1;
  for (size_t i = 0; i < x.size(); ++i) {
    Int g = gcd_int(x[i], div_[i]);
    o = lcm_int(o, div_[i] / g);
  }
  return o;
}

DualVector FiniteQuadraticModule::lift(const Element& x) const {
  const int n = lattice_.rank();
  Int den = 1;
  for (Int d : div_) den = lcm_int(den, d);
  Vec c(n, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    Int f = x[i] * (den / gens_[i].denom);
    for (int j = 0; j < n; ++j) c[j] += f * gens_[i].coords[j];
  }
  return DualVector(c, den);
}

FiniteQuadraticModule::Element FiniteQuadraticModule::class_of(const DualVector& x) const {
  Vec y = v_inv_ * x.coords;
  Element e;
  for (size_t t = 0; t < full_div_.size(); ++t) {
    __int128 z = static_cast<__int128>(y[t]) * full_div_[t];
    if (z % x.denom != 0) fail(ErrorKind::kInvalidInput, "vector is not in the dual lattice");
    Int zi = static_cast<Int>(z / x.denom);
    if (full_div_[t] > 1) e.push_back(mod_pos(zi, full_div_[t]));
  }
  return e;
}

Rational FiniteQuadraticModule::bilinear(const Element& x, const Element& y) const {
  Rational s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      if (y[j]) s += bil_[i][j] * Rational(static_cast<long>(x[i] * y[j]));
  }
  return frac_part(s);
}

Rational FiniteQuadraticModule::norm_mod2(const Element& x) const {
  Rational s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    s += norm2_[i] * Rational(static_cast<long>(x[i] * x[i]));
    for (size_t j = i + 1; j < x.size(); ++j)
      if (x[j]) s += 2 * bil_[i][j] * Rational(static_cast<long>(x[i] * x[j]));
  }
  return mod2(s);
}

Rational FiniteQuadraticModule::quadratic(const Element& x) const {
  if (!even_) fail(ErrorKind::kInvalidInput, "quadratic residue needs an even lattice");
  return frac_part(norm_mod2(x) / 2);
}

Int modulus(const Lattice& l, const Vec& v) {
  Vec p = l.products(v);
  Int g = 0;
  for (Int x : p) g = gcd_int(g, x);
  if (g == 0) fail(ErrorKind::kInvalidInput, "modulus of the zero vector");
  return g;
}

bool is_primitive(const Vec& v) {
  Int g = 0;
  for (Int x : v) g = gcd_int(g, x);
  return g == 1;
}

CharacteristicResult characteristic_vectors(const Lattice& l, Int bound) {
  if (determinant(l) != 1)
    fail(ErrorKind::kInvalidInput, "characteristic vector enumeration needs a unimodular lattice");
  const int n = l.rank();
  Vec diag(n);
  for (int i = 0; i < n; ++i) diag[i] = mod_pos(l(i, i), 2);
  Mat inv = inverse_unimodular(l.gram());
  Vec xi = inv * diag;
  CharacteristicResult out;
  out.representative = DualVector(xi, 1);
  // xi + 2L: enumerate xi/2 + L with bound/4, then double.
  DualVector shift(xi, 2);
  const Int f = 2 / shift.denom;
  VectorList half = coset_short_vectors(l, shift, Rational(bound, 4));
  out.vectors.dim = n;
  for (size_t i = 0; i < half.size(); ++i) {
    Vec v(half[i], half[i] + n);
    for (auto& x : v) x *= f;
    out.vectors.push(v.data(), l.norm(v));
  }
  return out;
}

VectorList exceptional_vectors(const Lattice& l) {
  auto c = characteristic_vectors(l, 7);
  return c.vectors;
}

std::vector<Vec> special_vectors(const Lattice& l, Int norm) {
  const Int d = determinant(l).get_si();
  Mat adj = adjugate(l.gram());
  std::vector<Vec> out;
  if (norm % d != 0) return out;
  // y in the lattice with Gram adj; u = adj y / d in L#, v = adj y.
  Lattice flat(adj);
  Int target = norm / d;
  for_each_short_vector(flat, target, target, [&](const Int* y, Int) {
    Vec yv(y, y + l.rank());
    if (!is_primitive(yv)) return;
    Vec v = adj * yv;
    if (!is_primitive(v)) return;
    out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Lattice overlattice(const Lattice& l, const std::vector<DualVector>& gens, Mat* basis_out,
                    Int* basis_denom) {
  const int n = l.rank();
  Int den = 1;
  for (const auto& g : gens) den = lcm_int(den, g.denom);
  for (size_t i = 0; i < gens.size(); ++i) {
    Rational nn = l.dot(gens[i], gens[i]);
    if (nn.get_den() != 1)
      fail(ErrorKind::kInvalidInput, "glue vector has non-integral norm");
    for (size_t j = 0; j < i; ++j)
      if (l.dot(gens[i], gens[j]).get_den() != 1)
        fail(ErrorKind::kInvalidInput, "glue vectors are not mutually integral");
  }
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = den;
    rows.push_back(e);
  }
  for (const auto& g : gens) {
    Vec r(n);
    for (int j = 0; j < n; ++j) r[j] = g.coords[j] * (den / g.denom);
    rows.push_back(r);
  }
  Lattice out = lattice_from_generators(l.gram(), rows, den, basis_out);
  if (basis_denom) *basis_denom = den;
  return out;
}

Vec solve_in_basis(const Mat& b, Int bden, const Vec& v, Int vden) {
  const int m = b.rows, k = b.cols;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(k + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = Rational(static_cast<long>(b(i, j)), static_cast<long>(bden));
    a[i][k] = Rational(static_cast<long>(v[i]), static_cast<long>(vden));
    for (auto& x : a[i]) x.canonicalize();
  }
  int r = 0;
  std::vector<int> pc;
  for (int c = 0; c < k && r < m; ++c) {
    int p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
    }
    pc.push_back(c);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (a[i][k] != 0) fail(ErrorKind::kInvalidInput, "vector not in the span of the basis");
  Vec x(k, 0);
  for (int i = 0; i < r; ++i) {
    if (a[i][k].get_den() != 1) fail(ErrorKind::kInvalidInput, "vector not in the lattice");
    x[pc[i]] = a[i][k].get_num().get_si();
  }
  return x;
}

bool is_saturated(const Mat& basis_cols) {
  SmithForm s = smith_form(basis_cols);
  for (const auto& d : s.diag)
    if (d != 1) return false;
  return static_cast<int>(s.diag.size()) == basis_cols.cols;
}

GlueResult glue_pair(const Lattice& a, const Lattice& b, const GlueMap& eta) {
  FiniteQuadraticModule ra(a), rb(b);
  const int ka = a.rank(), kb = b.rank(), m = ka + kb;
  for (size_t i = 0; i < eta.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      Rational s = ra.bilinear(eta[i].first, eta[j].first) +
                   rb.bilinear(eta[i].second, eta[j].second);
      if (frac_part(s) != 0) fail(ErrorKind::kInvalidInput, "glue map is not anti-isometric");
    }
  Lattice amb = direct_sum(a, b);
  std::vector<DualVector> lifts;
  Int den = 1;
  for (const auto& [h, e] : eta) {
    DualVector la = ra.lift(h), lb = rb.lift(e);
    Int d = lcm_int(la.denom, lb.denom);
    Vec c(m);
    for (int i = 0; i < ka; ++i) c[i] = la.coords[i] * (d / la.denom);
    for (int i = 0; i < kb; ++i) c[ka + i] = lb.coords[i] * (d / lb.denom);
    lifts.emplace_back(c, d);
    den = lcm_int(den, d);
  }
  GlueResult out;
  Mat basis;
  Int bden = 1;
  try {
    out.lattice = overlattice(amb, lifts, &basis, &bden);
  } catch (const Error& e) {
    fail(ErrorKind::kInvalidInput, std::string("glue map is not isometric: ") + e.what());
  }
  out.a_images = Mat(m, ka);
  out.b_images = Mat(m, kb);
  for (int i = 0; i < m; ++i) {
    Vec e(m, 0);
    e[i] = 1;
    Vec x = solve_in_basis(basis, bden, e, 1);
    for (int r = 0; r < m; ++r) {
      if (i < ka)
        out.a_images(r, i) = x[r];
      else
        out.b_images(r, i - ka) = x[r];
    }
  }
  BigInt q = determinant(a) * determinant(b) / determinant(out.lattice);
  BigInt h = sqrt(q);
  out.h_order = h.get_si();
  return out;
}

SplitResult split_pair(const Lattice& l, const Mat& a_basis, const Lattice& a_lat) {
  if (!is_saturated(a_basis)) fail(ErrorKind::kInvalidInput, "sublattice is not saturated");
  const int n = l.rank(), k = a_basis.cols;
  std::vector<Vec> avecs;
  for (int j = 0; j < k; ++j) avecs.push_back(a_basis.column(j));
  SplitResult out;
  Mat bb = orthogonal_complement_basis(l, avecs);
  Mat red;
  Lattice braw = sublattice(l, bb);
  out.b = lll_reduce(braw, &red);
  out.b_basis = bb * red;
  const int kb = out.b.rank();
  FiniteQuadraticModule ra(a_lat), rb(out.b);
  Mat ga = a_lat.gram(), gb = out.b.gram();
  Mat adja = adjugate(ga), adjb = adjugate(gb);
  Int da = determinant(ga).get_si(), db = determinant(gb).get_si();
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    Vec p = l.products(e);
    Vec wa(k), wb(kb);
    for (int j = 0; j < k; ++j) {
      Int s = 0;
      for (int r = 0; r < n; ++r) s += a_basis(r, j) * p[r];
      wa[j] = s;
    }
    for (int j = 0; j < kb; ++j) {
      Int s = 0;
      for (int r = 0; r < n; ++r) s += out.b_basis(r, j) * p[r];
      wb[j] = s;
    }
    DualVector xa(adja * wa, da), xb(adjb * wb, db);
    auto ca = ra.class_of(xa), cb = rb.class_of(xb);
    if (ra.is_zero(ca) && rb.is_zero(cb)) continue;
    out.eta.emplace_back(ca, cb);
  }
  BigInt q = determinant(a_lat) * determinant(out.b) / determinant(l);
  out.h_order = BigInt(sqrt(q)).get_si();
  return out;
}

VenkovResult venkov_min(const Lattice& m, const FiniteQuadraticModule& res,
                        const FiniteQuadraticModule::Element& c) {
  VenkovResult out;
  DualVector x = res.lift(c);
  out.denom = x.denom;
  if (res.is_zero(c)) {
    out.nu = 0;
    out.lifts.dim = m.rank();
    Vec z(m.rank(), 0);
    out.lifts.push(z.data(), 0);
    return out;
  }
  Rational b = 2;
  Rational upper = m.dot(x, x);
  while (true) {
    VectorList vl = coset_short_vectors(m, x, b);
    if (vl.size() > 0) {
      Int best = *std::min_element(vl.norms.begin(), vl.norms.end());
      out.lifts.dim = m.rank();
      for (size_t i = 0; i < vl.size(); ++i)
        if (vl.norms[i] == best) out.lifts.push(vl[i], best);
      out.nu = Rational(static_cast<long>(best), static_cast<long>(x.denom * x.denom));
      out.nu.canonicalize();
      return out;
    }
    if (b >= upper) fail(ErrorKind::kInternal, "venkov_min: lift not found");
    b *= 2;
    if (b > upper) b = upper;
  }
}

std::vector<std::vector<FiniteQuadraticModule::Element>> isotropic_subgroups(
    const FiniteQuadraticModule& r, std::size_t cap) {
  using Element = FiniteQuadraticModule::Element;
  if (r.order() > (Int{1} << 16))
    fail(ErrorKind::kResourceCap, "isotropic subgroup enumeration needs |res| <= 2^16");
  auto elems = r.elements();
  const size_t N = elems.size();
  auto index_of = [&](const Element& x) {
    size_t idx = 0, mult = 1;
    for (size_t i = 0; i < x.size(); ++i) {
      idx += static_cast<size_t>(x[i]) * mult;
      mult *= static_cast<size_t>(r.divisors()[i]);
    }
    return idx;
  };
  // Odd lattices: integrality of norms of lifts.
  std::vector<char> iso(N);
  for (size_t i = 0; i < N; ++i) {
    if (r.has_quadratic())
      iso[i] = r.quadratic(elems[i]) == 0;
    else
      iso[i] = r.bilinear(elems[i], elems[i]) == 0;
  }
  using Bits = std::vector<std::uint64_t>;
  auto closure = [&](const Bits& base, size_t g) {
    Bits b = base;
    std::vector<size_t> members;
    for (size_t i = 0; i < N; ++i)
      if (b[i / 64] >> (i % 64) & 1) members.push_back(i);
    std::vector<size_t> out = members;
    // Add multiples of g to every member.
    Element x = elems[g];
    Element acc = x;
    while (!r.is_zero(acc)) {
      for (size_t m : members) {
        size_t id = index_of(r.add(elems[m], acc));
        if (!(b[id / 64] >> (id % 64) & 1)) {
          b[id / 64] |= std::uint64_t{1} << (id % 64);
          out.push_back(id);
        }
      }
      acc = r.add(acc, x);
    }
    return std::make_pair(b, out);
  };
  Bits zero((N + 63) / 64, 0);
  zero[0] = 1;
  std::set<Bits> seen{zero};
  std::vector<std::pair<Bits, std::vector<size_t>>> queue{{zero, {0}}};
  std::vector<std::vector<Element>> result;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    auto [bits, mem] = queue[qi];
    std::vector<Element> sub;
    for (size_t m : mem) sub.push_back(elems[m]);
    result.push_back(sub);
    if (result.size() > cap) fail(ErrorKind::kResourceCap, "too many isotropic subgroups");
    for (size_t g = 1; g < N; ++g) {
      if (!iso[g] || (bits[g / 64] >> (g % 64) & 1)) continue;
      bool ok = true;
      for (size_t m : mem)
        if (r.bilinear(elems[g], elems[m]) != 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      auto [nb, nm] = closure(bits, g);
      if (seen.insert(nb).second) queue.emplace_back(nb, nm);
    }
  }
  return result;
}

std::optional<GlueMap> anti_embedding(const FiniteQuadraticModule& a,
                                      const FiniteQuadraticModule& b, bool quadratic) {
  if (b.order() % a.order() != 0) return std::nullopt;
  const bool quad = quadratic && a.has_quadratic() && b.has_quadratic();
  const auto& div = a.divisors();
  const int k = static_cast<int>(div.size());
  std::vector<FiniteQuadraticModule::Element> gens(k, a.zero());
  for (int i = 0; i < k; ++i) gens[i][i] = 1;
  const auto pool = b.elements();
  std::vector<FiniteQuadraticModule::Element> img(k);
  std::function<bool(int)> rec = [&](int i) {
    if (i == k) return true;
    for (const auto& h : pool) {
      if (b.element_order(h) != div[i]) continue;
      if (quad) {
        if (frac_part(a.quadratic(gens[i]) + b.quadratic(h)) != 0) continue;
      } else if (frac_part(a.bilinear(gens[i], gens[i]) + b.bilinear(h, h)) != 0) {
        continue;
      }
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        ok = frac_part(a.bilinear(gens[i], gens[j]) + b.bilinear(h, img[j])) == 0;
      if (!ok) continue;
      img[i] = h;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  GlueMap out;
  for (int i = 0; i < k; ++i) out.emplace_back(gens[i], img[i]);
  return out;
}

GlueResult glue_companion(const Lattice& a, const Lattice& l) {
  FiniteQuadraticModule ra(a), rl(l);
  auto eta = anti_embedding(ra, rl, false);
  if (!eta) fail(ErrorKind::kInvalidInput, "residue of the companion does not embed oppositely");
  return glue_pair(a, l, *eta);
}

}  // namespace unilat
