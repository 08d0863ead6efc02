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

#include "unilat/lattice.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "unilat/linalg.hpp"

namespace unilat {

Lattice::Lattice(Mat gram) : gram_(std::move(gram)) {
  const int n = gram_.rows;
  if (gram_.cols != n) fail(ErrorKind::kInvalidInput, "Gram matrix is not square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i))
        fail(ErrorKind::kInvalidInput, "Gram matrix is not symmetric at (" +
                                           std::to_string(i) + "," + std::to_string(j) + ")");
  auto minors = leading_minors(gram_);
  for (size_t k = 0; k < minors.size(); ++k)
    if (minors[k] <= 0)
      fail(ErrorKind::kInvalidInput, "Gram matrix not positive definite: leading minor " +
                                         std::to_string(k + 1) + " equals " +
                                         minors[k].get_str());
}

Lattice Lattice::from_lower_triangle(int n, const std::vector<Int>& lower) {
  if (static_cast<Int>(lower.size()) != static_cast<Int>(n) * (n + 1) / 2)
    fail(ErrorKind::kInvalidInput, "wrong number of lower-triangular entries");
  Mat g(n, n);
  size_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      g(i, j) = lower[p];
      g(j, i) = lower[p];
      ++p;
    }
  return Lattice(std::move(g));
}

Int Lattice::dot(const Vec& x, const Vec& y) const {
  const int n = rank();
  Int s = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    const Int* r = gram_.row(i);
    Int t = 0;
    for (int j = 0; j < n; ++j) t += r[j] * y[j];
    s += x[i] * t;
  }
  return s;
}

Vec Lattice::products(const Vec& x) const { return gram_ * x; }

Rational Lattice::dot(const DualVector& x, const DualVector& y) const {
  const int n = rank();
  BigInt s = 0;
  for (int i = 0; i < n; ++i) {
    if (x.coords[i] == 0) continue;
    BigInt t = 0;
    for (int j = 0; j < n; ++j)
      t += BigInt(static_cast<long>(gram_(i, j))) * static_cast<long>(y.coords[j]);
    s += t * static_cast<long>(x.coords[i]);
  }
  Rational r(s, BigInt(static_cast<long>(x.denom)) * static_cast<long>(y.denom));
  r.canonicalize();
  return r;
}

bool Lattice::is_even() const {
  for (int i = 0; i < rank(); ++i)
    if (gram_(i, i) % 2 != 0) return false;
  return true;
}

Int Lattice::max_diagonal() const {
  Int m = 0;
  for (int i = 0; i < rank(); ++i) m = std::max(m, gram_(i, i));
  return m;
}

BigInt determinant(const Lattice& l) { return determinant(l.gram()); }

Lattice rescaled_dual(const Lattice& l) { return Lattice(adjugate(l.gram())); }

Mat dual_basis_numerators(const Lattice& l) { return adjugate(l.gram()); }

Lattice direct_sum(const Lattice& a, const Lattice& b) { return direct_sum({a, b}); }

Lattice direct_sum(const std::vector<Lattice>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.rank();
  Mat g(n, n);
  int off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < p.rank(); ++i)
      for (int j = 0; j < p.rank(); ++j) g(off + i, off + j) = p(i, j);
    off += p.rank();
  }
  return Lattice(std::move(g));
}

Lattice sublattice(const Lattice& l, const Mat& basis_cols) {
  return Lattice(congruence(l.gram(), basis_cols));
}

EvenPart even_part(const Lattice& l) {
  const int n = l.rank();
  EvenPart out;
  if (l.is_even()) {
    out.lattice = l;
    out.basis = Mat::identity(n);
    out.index = 1;
    return out;
  }
  int k = 0;
  while (l(k, k) % 2 == 0) ++k;
  Mat b(n, n);
  int col = 0;
  for (int j = 0; j < n; ++j) {
    if (j == k) continue;
    b(j, col) = 1;
    if (l(j, j) % 2 != 0) b(k, col) = -1;
    ++col;
  }
  b(k, col) = 2;
  Mat red;
  Lattice sub = sublattice(l, b);
  Lattice reduced = lll_reduce(sub, &red);
  out.lattice = reduced;
  out.basis = b * red;
  out.index = 2;
  return out;
}

Lattice lll_reduce(const Lattice& l, Mat* basis) {
  Mat b;
  Mat g = lll_gram(l.gram(), &b);
  if (basis) *basis = b;
  return Lattice(std::move(g));
}

Lattice lattice_from_generators(const Mat& ambient, const std::vector<Vec>& gens,
                                Int denom, Mat* basis_out) {
  const int m = ambient.rows;
  ZMat z;
  for (const auto& v : gens) {
    std::vector<BigInt> r(m);
    for (int j = 0; j < m; ++j) r[j] = static_cast<long>(v[j]);
    z.push_back(std::move(r));
  }
  ZMat h = hnf_rows(std::move(z));
  const int n = static_cast<int>(h.size());
  ZMat az = to_zmat(ambient);
  ZMat gz(n, std::vector<BigInt>(n));
  BigInt d2 = BigInt(static_cast<long>(denom)) * static_cast<long>(denom);
  for (int i = 0; i < n; ++i) {
    std::vector<BigInt> ai(m);
    for (int p = 0; p < m; ++p) {
      BigInt s = 0;
      for (int q = 0; q < m; ++q)
        if (h[i][q] != 0) s += az[p][q] * h[i][q];
      ai[p] = s;
    }
    for (int j = 0; j <= i; ++j) {
      BigInt s = 0;
      for (int p = 0; p < m; ++p) s += h[j][p] * ai[p];
      if (s % d2 != 0) fail(ErrorKind::kInvalidInput, "generated lattice is not integral");
      gz[i][j] = gz[j][i] = s / d2;
    }
  }
  Mat g0 = to_mat(gz);
  Mat red;
  Mat g = lll_gram(g0, &red);
  if (basis_out) {
    // basis columns = H^T * red
    Mat ht = to_mat(h).transpose();
    *basis_out = ht * red;
  }
  return Lattice(std::move(g));
}

Mat orthogonal_complement_basis(const Lattice& l, const std::vector<Vec>& vs) {
  Mat a(static_cast<int>(vs.size()), l.rank());
  for (size_t i = 0; i < vs.size(); ++i) {
    Vec p = l.products(vs[i]);
    for (int j = 0; j < l.rank(); ++j) a(static_cast<int>(i), j) = p[j];
  }
  Mat k = integer_kernel(a);  // rows
  return k.transpose();
}

namespace {

Mat cartan_a(int n) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return g;
}

Mat cartan_d(int n) {
  Mat g = cartan_a(n);
  // Last node attaches to n-3 instead of n-2.
  g(n - 1, n - 2) = g(n - 2, n - 1) = 0;
  g(n - 1, n - 3) = g(n - 3, n - 1) = -1;
  return g;
}

Mat cartan_e(int n) {
  // Bourbaki labels: 1-3-4-5-6-7-8 chain with 2 attached to 4.
  Mat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  auto edge = [&](int a, int b) { g(a - 1, b - 1) = g(b - 1, a - 1) = -1; };
  edge(1, 3);
  edge(3, 4);
  edge(2, 4);
  for (int k = 4; k < n; ++k) edge(k, k + 1);
  return g;
}

Lattice root_complement(const Lattice& l) {
  Vec root(l.rank(), 0);
  root[0] = 1;
  Mat b = orthogonal_complement_basis(l, {root});
  return lll_reduce(sublattice(l, b));
}

}  // namespace

Lattice scalar_lattice(Int d) {
  if (d <= 0) fail(ErrorKind::kInvalidInput, "<d> needs d > 0");
  Mat g(1, 1);
  g(0, 0) = d;
  return Lattice(g);
}

Lattice standard_lattice(const std::string& name, int rank) {
  auto bad_rank = [&]() -> Lattice {
    fail(ErrorKind::kInvalidInput,
         "invalid rank " + std::to_string(rank) + " for " + name);
  };
  if (name == "A") {
    if (rank < 1) return bad_rank();
    return Lattice(cartan_a(rank));
  }
  if (name == "D") {
    if (rank < 2) return bad_rank();
    if (rank == 2) return direct_sum(scalar_lattice(2), scalar_lattice(2));
    if (rank == 3) return Lattice(cartan_a(3));
    return Lattice(cartan_d(rank));
  }
  if (name == "E") {
    if (rank < 6 || rank > 8) return bad_rank();
    return Lattice(cartan_e(rank));
  }
  if (name == "I") {
    if (rank < 1) return bad_rank();
    return Lattice(Mat::identity(rank));
  }
  if (name == "Ap") {
    if (rank < 2) return bad_rank();
    return root_complement(standard_lattice("A", rank));
  }
  if (name == "S2") {
    Mat g(2, 2);
    g(0, 0) = 2; g(0, 1) = g(1, 0) = -1; g(1, 1) = 4;
    return Lattice(g);
  }
  if (name == "S5") {
    Mat g(2, 2);
    g(0, 0) = 2; g(0, 1) = g(1, 0) = 1; g(1, 1) = 3;
    return Lattice(g);
  }
  if (name == "S7") {
    Mat g(3, 3);
    g(0, 0) = 2; g(1, 1) = 2; g(2, 2) = 3;
    g(0, 1) = g(1, 0) = 1; g(0, 2) = g(2, 0) = 1; g(1, 2) = g(2, 1) = 1;
    return Lattice(g);
  }
  if (name == "Q0") return direct_sum(scalar_lattice(2), scalar_lattice(2));
  if (name == "F8" || name == "F8p") {
    Lattice e7 = standard_lattice("E", 7);
    Mat amb = direct_sum(e7, scalar_lattice(10)).gram();
    Mat adj = adjugate(e7.gram());  // det E7 = 2
    int j = 0;
    for (; j < 7; ++j) {
      bool odd = false;
      for (int i = 0; i < 7; ++i) odd |= (adj(i, j) % 2 != 0);
      if (odd) break;
    }
    std::vector<Vec> gens;
    for (int i = 0; i < 8; ++i) {
      Vec v(8, 0);
      v[i] = 2;
      gens.push_back(v);
    }
    Vec glue(8, 0);
    for (int i = 0; i < 7; ++i) glue[i] = adj(i, j);
    glue[7] = 1;
    gens.push_back(glue);
    Lattice f8 = lattice_from_generators(amb, gens, 2);
    if (name == "F8") return f8;
    auto sv = short_vectors(f8, Int{2});
    if (sv.vectors.size() == 0) fail(ErrorKind::kInternal, "F8 has no roots");
    Mat b = orthogonal_complement_basis(f8, {sv.vectors.vec(0)});
    return lll_reduce(sublattice(f8, b));
  }
  fail(ErrorKind::kInvalidInput, "unknown lattice name '" + name + "'");
}

Lattice parse_standard(const std::string& spec) {
  std::vector<Lattice> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    if (tok.empty()) fail(ErrorKind::kInvalidInput, "empty component in '" + spec + "'");
    size_t p = 0;
    int mult = 1;
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      mult = 0;
      while (p < tok.size() && std::isdigit(static_cast<unsigned char>(tok[p])))
        mult = mult * 10 + (tok[p++] - '0');
    }
    std::string body = tok.substr(p);
    Lattice one;
    if (!body.empty() && body.front() == '<' && body.back() == '>') {
      one = scalar_lattice(std::stoll(body.substr(1, body.size() - 2)));
    } else if (body == "S2" || body == "S5" || body == "S7" || body == "F8" ||
               body == "F8p" || body == "Q0") {
      one = standard_lattice(body);
    } else {
      if (body.empty()) fail(ErrorKind::kInvalidInput, "bad lattice name '" + tok + "'");
      std::string fam(1, body[0]);
      std::string rest = body.substr(1);
      bool prime = !rest.empty() && rest.back() == 'p';
      if (prime) rest.pop_back();
      if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
        fail(ErrorKind::kInvalidInput, "bad lattice name '" + tok + "'");
      int r = std::stoi(rest);
      if (prime) {
        if (fam != "A") fail(ErrorKind::kInvalidInput, "bad lattice name '" + tok + "'");
        fam = "Ap";
      }
      one = standard_lattice(fam, r);
    }
    for (int i = 0; i < mult; ++i) parts.push_back(one);
  }
  if (parts.empty()) fail(ErrorKind::kInvalidInput, "empty lattice spec");
  return direct_sum(parts);
}

// ---------------------------------------------------------------------------
// Fincke-Pohst enumeration. Floating point only bounds the search intervals
// (with slack); every reported vector is checked with exact integer norms.

namespace {

struct Chol {
  int n;
  std::vector<long double> q;  // n*n, q[i*n+j]
  long double at(int i, int j) const { return q[static_cast<size_t>(i) * n + j]; }
};

Chol cholesky(const Mat& g) {
  const int n = g.rows;
  Chol c{n, std::vector<long double>(static_cast<size_t>(n) * n)};
  auto Q = [&](int i, int j) -> long double& { return c.q[static_cast<size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Q(i, j) = static_cast<long double>(g(i, j));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Q(j, i) = Q(i, j);
      Q(i, j) = Q(i, j) / Q(i, i);
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) Q(k, l) -= Q(k, i) * Q(i, l);
  }
  return c;
}

// Enumerates integer y with Q(s + y) <= bound (approximately, with slack).
// When half is set (requires s = 0), only one of +-y is produced and y = 0
// is skipped.
template <typename F>
void fp_enumerate(const Mat& g, const std::vector<long double>& s, long double bound,
                  bool half, F&& leaf) {
  const int n = g.rows;
  if (n == 0) return;
  Chol c = cholesky(g);
  const long double slack = 1e-9L * (bound + 1.0L) + 1e-9L;
  std::vector<Int> y(n, 0), hi(n, 0);
  std::vector<long double> T(n), U(n);
  std::vector<char> zero_above(n + 1, 1);
  auto set_bounds = [&](int i) {
    long double center = -(s[i] + U[i]);
    long double r2 = T[i] / c.at(i, i);
    if (r2 < 0) r2 = 0;
    long double r = std::sqrt(r2) + 1e-9L;
    Int lo = static_cast<Int>(std::ceil(center - r));
    hi[i] = static_cast<Int>(std::floor(center + r));
    if (half && zero_above[i + 1] && lo < 0) lo = 0;
    y[i] = lo - 1;
  };
  int i = n - 1;
  T[i] = bound + slack;
  U[i] = 0;
  zero_above[n] = 1;
  set_bounds(i);
  while (true) {
    ++y[i];
    if (y[i] > hi[i]) {
      ++i;
      if (i == n) return;
      continue;
    }
    long double t = s[i] + y[i] + U[i];
    long double rem = T[i] - c.at(i, i) * t * t;
    if (rem < -slack) continue;
    if (i == 0) {
      if (half && zero_above[1] && y[0] == 0) continue;
      leaf(y.data());
      continue;
    }
    zero_above[i] = zero_above[i + 1] && y[i] == 0;
    --i;
    long double u = 0;
    for (int j = i + 1; j < n; ++j) u += c.at(i, j) * (s[j] + y[j]);
    U[i] = u;
    T[i] = rem;
    set_bounds(i);
  }
}

__int128 exact_norm(const Mat& g, const Int* z) {
  const int n = g.rows;
  __int128 s = 0;
  for (int i = 0; i < n; ++i) {
    if (z[i] == 0) continue;
    const Int* r = g.row(i);
    __int128 t = 0;
    for (int j = 0; j < n; ++j) t += static_cast<__int128>(r[j]) * z[j];
    s += t * z[i];
  }
  return s;
}

Int floor_rational(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

}  // namespace

ShortVectorReport short_vectors(const Lattice& l, const Rational& bound,
                                const EnumOptions& opt) {
  if (bound < 0) fail(ErrorKind::kInvalidInput, "negative bound");
  const int n = l.rank();
  Int b = floor_rational(bound);
  ShortVectorReport rep;
  rep.bound = bound;
  rep.vectors.dim = n;
  rep.counts.assign(static_cast<size_t>(b) + 1, 0);
  if (n == 0) return rep;
  rep.counts[0] = 1;
  Mat basis;
  Lattice red = lll_reduce(l, &basis);
  std::vector<long double> s(n, 0.0L);
  Vec v(n);
  fp_enumerate(red.gram(), s, static_cast<long double>(b), true, [&](const Int* y) {
    __int128 nr = exact_norm(red.gram(), y);
    if (nr > b || nr <= 0) return;
    for (int i = 0; i < n; ++i) {
      Int t = 0;
      const Int* row = basis.row(i);
      for (int j = 0; j < n; ++j) t += row[j] * y[j];
      v[i] = t;
    }
    v = canonical_sign(std::move(v));
    if (rep.vectors.size() >= opt.cap)
      fail(ErrorKind::kResourceCap, "short vector enumeration exceeded cap of " +
                                        std::to_string(opt.cap) + " vectors");
    rep.vectors.push(v.data(), static_cast<Int>(nr));
    rep.counts[static_cast<size_t>(nr)] += 2;
  });
  return rep;
}

ShortVectorReport short_vectors(const Lattice& l, Int bound, const EnumOptions& opt) {
  return short_vectors(l, Rational(static_cast<long>(bound)), opt);
}

VectorList short_vectors_full(const Lattice& l, Int bound, const EnumOptions& opt) {
  EnumOptions o = opt;
  o.cap = opt.cap / 2 + 1;
  auto rep = short_vectors(l, bound, o);
  VectorList out;
  out.dim = l.rank();
  const int n = l.rank();
  Vec neg(n);
  for (size_t i = 0; i < rep.vectors.size(); ++i) {
    out.push(rep.vectors[i], rep.vectors.norms[i]);
    for (int j = 0; j < n; ++j) neg[j] = -rep.vectors[i][j];
    out.push(neg.data(), rep.vectors.norms[i]);
  }
  return out;
}

std::size_t for_each_short_vector(const Lattice& l, Int lo, Int hi,
                                  const std::function<void(const Int*, Int)>& fn) {
  const int n = l.rank();
  if (n == 0) return 0;
  Mat basis;
  Lattice red = lll_reduce(l, &basis);
  std::vector<long double> s(n, 0.0L);
  Vec v(n);
  std::size_t count = 0;
  fp_enumerate(red.gram(), s, static_cast<long double>(hi), true, [&](const Int* y) {
    __int128 nr = exact_norm(red.gram(), y);
    if (nr > hi || nr < lo || nr <= 0) return;
    for (int i = 0; i < n; ++i) {
      Int t = 0;
      const Int* row = basis.row(i);
      for (int j = 0; j < n; ++j) t += row[j] * y[j];
      v[i] = t;
    }
    fn(v.data(), static_cast<Int>(nr));
    for (auto& x : v) x = -x;
    fn(v.data(), static_cast<Int>(nr));
    count += 2;
  });
  return count;
}

VectorList coset_short_vectors(const Lattice& l, const DualVector& shift,
                               const Rational& bound, const EnumOptions& opt) {
  const int n = l.rank();
  const Int den = shift.denom;
  VectorList out;
  out.dim = n;
  if (n == 0) return out;
  Mat basis;
  Lattice red = lll_reduce(l, &basis);
  Mat binv = inverse_unimodular(basis);
  Vec c = binv * shift.coords;  // numerators in reduced coordinates
  // Reduce the shift into a fundamental box to keep the center small.
  Vec cr(n);
  Vec off(n);
  for (int i = 0; i < n; ++i) {
    off[i] = floor_div(c[i], den);
    cr[i] = c[i] - off[i] * den;
  }
  std::vector<long double> s(n);
  for (int i = 0; i < n; ++i) s[i] = static_cast<long double>(cr[i]) / den;
  Rational bd2 = bound * Rational(BigInt(static_cast<long>(den)) * static_cast<long>(den));
  Int bnum = floor_rational(bd2);
  long double bf = static_cast<long double>(bound.get_d());
  Vec z(n), v(n);
  fp_enumerate(red.gram(), s, bf, false, [&](const Int* y) {
    for (int i = 0; i < n; ++i) z[i] = cr[i] + den * y[i];
    __int128 nr = exact_norm(red.gram(), z.data());
    if (nr > bnum) return;
    for (int i = 0; i < n; ++i) {
      Int t = 0;
      const Int* row = basis.row(i);
      for (int j = 0; j < n; ++j) t += row[j] * z[j];
      v[i] = t;
    }
    if (out.size() >= opt.cap)
      fail(ErrorKind::kResourceCap, "coset enumeration exceeded cap of " +
                                        std::to_string(opt.cap) + " vectors");
    out.push(v.data(), static_cast<Int>(nr));
  });
  return out;
}

std::vector<Int> theta_counts(const Lattice& l, Int max_norm) {
  return short_vectors(l, max_norm).counts;
}

std::string gram_to_string(const Mat& g) {
  std::string s;
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j <= i; ++j) {
      if (!s.empty()) s += ' ';
      s += std::to_string(g(i, j));
    }
  return s;
}

}  // namespace unilat
