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

#include "unilat/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace unilat {

Mat operator*(const Mat& x, const Mat& y) {
  Mat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Int v = x(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

Vec operator*(const Mat& x, const Vec& v) {
  Vec r(x.rows, 0);
  for (int i = 0; i < x.rows; ++i) {
    Int s = 0;
    const Int* row = x.row(i);
    for (int j = 0; j < x.cols; ++j) s += row[j] * v[j];
    r[i] = s;
  }
  return r;
}

Mat congruence(const Mat& g, const Mat& b) { return b.transpose() * (g * b); }

Int gcd_int(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_pos(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

void DualVector::normalize() {
  if (denom < 0) {
    denom = -denom;
    for (auto& c : coords) c = -c;
  }
  Int g = denom;
  for (Int c : coords) g = gcd_int(g, c);
  if (g > 1) {
    denom /= g;
    for (auto& c : coords) c /= g;
  }
}

bool lex_positive(const Vec& v) {
  for (Int x : v)
    if (x != 0) return x > 0;
  return false;
}

Vec canonical_sign(Vec v) {
  for (Int x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

Rational frac_part(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational f = r - Rational(q);
  f.canonicalize();
  return f;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

ZMat to_zmat(const Mat& m) {
  ZMat z(m.rows, std::vector<BigInt>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) z[i][j] = static_cast<long>(m(i, j));
  return z;
}

Mat to_mat(const ZMat& z) {
  int r = static_cast<int>(z.size());
  int c = r ? static_cast<int>(z[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (!z[i][j].fits_slong_p())
        fail(ErrorKind::kResourceCap, "matrix entry exceeds 64 bits");
      m(i, j) = z[i][j].get_si();
    }
  return m;
}

BigInt determinant(const Mat& m) {
  int n = m.rows;
  if (n == 0) return 1;
  ZMat a = to_zmat(m);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<BigInt> leading_minors(const Mat& m) {
  int n = m.rows;
  ZMat a = to_zmat(m);
  std::vector<BigInt> minors;
  BigInt prev = 1;
  for (int k = 0; k < n; ++k) {
    minors.push_back(a[k][k]);
    if (a[k][k] <= 0) break;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return minors;
}

ZMat hnf_rows(ZMat g) {
  if (g.empty()) return g;
  size_t cols = g[0].size();
  size_t piv = 0;
  for (size_t c = 0; c < cols && piv < g.size(); ++c) {
    while (true) {
      size_t best = g.size();
      for (size_t r = piv; r < g.size(); ++r)
        if (g[r][c] != 0 &&
            (best == g.size() || abs(g[r][c]) < abs(g[best][c])))
          best = r;
      if (best == g.size()) break;
      std::swap(g[piv], g[best]);
      bool done = true;
      for (size_t r = piv + 1; r < g.size(); ++r) {
        if (g[r][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), g[r][c].get_mpz_t(), g[piv][c].get_mpz_t());
        for (size_t j = c; j < cols; ++j) g[r][j] -= q * g[piv][j];
        if (g[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (g[piv][c] == 0) continue;
    if (g[piv][c] < 0)
      for (size_t j = c; j < cols; ++j) g[piv][j] = -g[piv][j];
    for (size_t r = 0; r < piv; ++r) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), g[r][c].get_mpz_t(), g[piv][c].get_mpz_t());
      if (q != 0)
        for (size_t j = c; j < cols; ++j) g[r][j] -= q * g[piv][j];
    }
    ++piv;
  }
  g.resize(piv);
  return g;
}

Mat integer_kernel(const Mat& a) {
  int k = a.rows, n = a.cols;
  // Rows of [A^T | I].
  ZMat w(n, std::vector<BigInt>(k + n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) w[i][j] = static_cast<long>(a(j, i));
    w[i][k + i] = 1;
  }
  int piv = 0;
  for (int c = 0; c < k && piv < n; ++c) {
    while (true) {
      int best = -1;
      for (int r = piv; r < n; ++r)
        if (w[r][c] != 0 && (best < 0 || abs(w[r][c]) < abs(w[best][c])))
          best = r;
      if (best < 0) break;
      std::swap(w[piv], w[best]);
      bool done = true;
      for (int r = piv + 1; r < n; ++r) {
        if (w[r][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), w[r][c].get_mpz_t(), w[piv][c].get_mpz_t());
        for (int j = 0; j < k + n; ++j) w[r][j] -= q * w[piv][j];
        if (w[r][c] != 0) done = false;
      }
      if (done) {
        ++piv;
        break;
      }
    }
  }
  ZMat ker;
  for (int r = piv; r < n; ++r)
    ker.emplace_back(w[r].begin() + k, w[r].end());
  ker = hnf_rows(ker);
  if (ker.empty()) return Mat(0, n);
  return to_mat(ker);
}

namespace {

void swap_rows(ZMat& m, size_t i, size_t j) { std::swap(m[i], m[j]); }
void swap_cols(ZMat& m, size_t i, size_t j) {
  for (auto& r : m) std::swap(r[i], r[j]);
}
// row_i += q * row_j
void add_row(ZMat& m, size_t i, size_t j, const BigInt& q) {
  for (size_t c = 0; c < m[i].size(); ++c) m[i][c] += q * m[j][c];
}
void add_col(ZMat& m, size_t i, size_t j, const BigInt& q) {
  for (auto& r : m) r[i] += q * r[j];
}
ZMat zidentity(size_t n) {
  ZMat z(n, std::vector<BigInt>(n));
  for (size_t i = 0; i < n; ++i) z[i][i] = 1;
  return z;
}

}  // namespace

SmithForm smith_form(const Mat& am) {
  ZMat a = to_zmat(am);
  size_t r = a.size(), c = r ? a[0].size() : 0;
  ZMat u = zidentity(r), v = zidentity(c), vi = zidentity(c);
  size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block to (t,t).
      size_t bi = r, bj = c;
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j)
          if (a[i][j] != 0 && (bi == r || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == r) goto done;
      if (bi != t) {
        swap_rows(a, bi, t);
        swap_rows(u, bi, t);
      }
      if (bj != t) {
        swap_cols(a, bj, t);
        swap_cols(v, bj, t);
        swap_rows(vi, bj, t);
      }
      bool clean = true;
      for (size_t i = t + 1; i < r; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(a, i, t, -q);
        add_row(u, i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < c; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(a, j, t, -q);
        add_col(v, j, t, -q);
        add_row(vi, t, j, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the trailing block.
      bool divides = true;
      for (size_t i = t + 1; i < r && divides; ++i)
        for (size_t j = t + 1; j < c; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_row(a, t, i, 1);
            add_row(u, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
done:
  SmithForm s;
  for (size_t i = 0; i < std::min(r, c); ++i) s.diag.push_back(a[i][i]);
  s.u = std::move(u);
  s.v = std::move(v);
  s.v_inv = std::move(vi);
  return s;
}

Mat adjugate(const Mat& g) {
  int n = g.rows;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = static_cast<long>(g(i, j));
    a[i][n + i] = 1;
  }
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) fail(ErrorKind::kInvalidInput, "singular matrix");
    std::swap(a[p], a[k]);
    Rational inv = 1 / a[k][k];
    for (int j = 0; j < 2 * n; ++j) a[k][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k];
      for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  BigInt d = determinant(g);
  ZMat r(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational x = a[i][n + j] * Rational(d);
      if (x.get_den() != 1) fail(ErrorKind::kInternal, "adjugate not integral");
      r[i][j] = x.get_num();
    }
  return to_mat(r);
}

Mat inverse_unimodular(const Mat& m) {
  BigInt d = determinant(m);
  if (d != 1 && d != -1) fail(ErrorKind::kInvalidInput, "matrix not unimodular");
  Mat adj = adjugate(m);
  if (d == -1)
    for (auto& x : adj.a) x = -x;
  return adj;
}

int rank_q(const std::vector<Vec>& rows, int n) {
  ZMat a;
  for (const auto& v : rows) {
    std::vector<BigInt> r(n);
    for (int j = 0; j < n; ++j) r[j] = static_cast<long>(v[j]);
    a.push_back(std::move(r));
  }
  return static_cast<int>(hnf_rows(std::move(a)).size());
}

namespace {

BigInt round_div(const BigInt& a, const BigInt& b) {
  // nearest integer to a/b, b > 0
  BigInt q;
  BigInt num = 2 * a + b;
  BigInt den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

Mat lll_gram(const Mat& gram, Mat* basis) {
  const int n = gram.rows;
  if (n <= 1) {
    if (basis) *basis = Mat::identity(n);
    return gram;
  }
  // 1-based arrays following the integral LLL formulation.
  ZMat g(n + 1, std::vector<BigInt>(n + 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i + 1][j + 1] = static_cast<long>(gram(i, j));
  ZMat h(n + 1, std::vector<BigInt>(n + 1));
  for (int i = 1; i <= n; ++i) h[i][i] = 1;
  ZMat lam(n + 1, std::vector<BigInt>(n + 1));
  std::vector<BigInt> d(n + 1);
  d[0] = 1;
  d[1] = g[1][1];
  int k = 2, kmax = 1;

  auto red = [&](int kk, int l) {
    BigInt two = 2 * lam[kk][l];
    if (abs(two) <= d[l]) return;
    BigInt q = round_div(lam[kk][l], d[l]);
    for (int j = 1; j <= n; ++j) h[kk][j] -= q * h[l][j];
    BigInt gkl = g[kk][l];
    for (int j = 1; j <= n; ++j)
      if (j != kk) g[kk][j] -= q * g[l][j];
    g[kk][kk] = g[kk][kk] - 2 * q * gkl + q * q * g[l][l];
    for (int j = 1; j <= n; ++j)
      if (j != kk) g[j][kk] = g[kk][j];
    lam[kk][l] -= q * d[l];
    for (int i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
  };
  auto swp = [&](int kk) {
    std::swap(h[kk], h[kk - 1]);
    std::swap(g[kk], g[kk - 1]);
    for (int j = 1; j <= n; ++j) std::swap(g[j][kk], g[j][kk - 1]);
    for (int j = 1; j <= kk - 2; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    BigInt l = lam[kk][kk - 1];
    BigInt b = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (int i = kk + 1; i <= kmax; ++i) {
      BigInt t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (b * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = b;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 1; j <= k; ++j) {
        BigInt u = g[k][j];
        for (int i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else
          d[k] = u;
      }
      if (d[k] <= 0) fail(ErrorKind::kInvalidInput, "LLL: form not positive definite");
    }
    while (true) {
      red(k, k - 1);
      if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
        swp(k);
        k = std::max(2, k - 1);
        continue;
      }
      for (int l = k - 2; l >= 1; --l) red(k, l);
      ++k;
      break;
    }
  }
  Mat out(n, n);
  ZMat gz(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gz[i][j] = g[i + 1][j + 1];
  out = to_mat(gz);
  if (basis) {
    ZMat bz(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) bz[j][i] = h[i + 1][j + 1];
    *basis = to_mat(bz);
  }
  return out;
}

}  // namespace unilat
