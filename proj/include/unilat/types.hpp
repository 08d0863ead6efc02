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

#ifndef UNILAT_TYPES_HPP_
#define UNILAT_TYPES_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace unilat {

using Int = std::int64_t;
using BigInt = mpz_class;
using Rational = mpq_class;
using Vec = std::vector<Int>;

enum class ErrorKind {
  kInvalidInput,
  kResourceCap,
  kBudget,
  kAuditMismatch,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

// Dense row-major integer matrix.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  Int operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
  const Int* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }
  Int* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Vec column(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }
};

Mat operator*(const Mat& x, const Mat& y);
Vec operator*(const Mat& x, const Vec& v);

// Congruence transform B^T G B.
Mat congruence(const Mat& g, const Mat& b);

// Rational vector (1/denom)*coords in a lattice basis.
struct DualVector {
  Vec coords;
  Int denom = 1;

  DualVector() = default;
  DualVector(Vec c, Int d) : coords(std::move(c)), denom(d) { normalize(); }
  void normalize();
  bool operator==(const DualVector& o) const {
    return denom == o.denom && coords == o.coords;
  }
  bool operator<(const DualVector& o) const {
    if (denom != o.denom) return denom < o.denom;
    return coords < o.coords;
  }
};

Int gcd_int(Int a, Int b);
Int floor_div(Int a, Int b);
Int mod_pos(Int a, Int m);

// Lexicographically larger of v and -v.
Vec canonical_sign(Vec v);
bool lex_positive(const Vec& v);

// Rational reduced into [0,1).
Rational frac_part(const Rational& r);

std::string to_string(const Rational& r);

}  // namespace unilat

#endif  // UNILAT_TYPES_HPP_
