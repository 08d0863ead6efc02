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

// Independent reference implementations used by the unit and acceptance tests.

#ifndef UNILAT_TESTS_ORACLES_HPP_
#define UNILAT_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "unilat/classify.hpp"
#include "unilat/isometry.hpp"
#include "unilat/lattice.hpp"
#include "unilat/linalg.hpp"
#include "unilat/residue.hpp"

namespace unilat::oracle {

// Gram B^T B for a random nonsingular integer B.
inline Lattice random_lattice(std::mt19937_64& rng, int n, Int range = 2) {
  std::uniform_int_distribution<Int> dist(-range, range);
  for (;;) {
    Mat b(n, n);
    for (auto& x : b.a) x = dist(rng);
    if (determinant(b) == 0) continue;
    return Lattice(congruence(Mat::identity(n), b));
  }
}

// Product of random elementary column operations.
inline Mat random_unimodular(std::mt19937_64& rng, int n, int steps = 24) {
  Mat u = Mat::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<Int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Int c = coef(rng);
    for (int r = 0; r < n; ++r) u(r, i) += c * u(r, j);
  }
  return u;
}

inline Lattice scramble(const Lattice& l, std::mt19937_64& rng) {
  return Lattice(congruence(l.gram(), random_unimodular(rng, l.rank())));
}

// Coordinate box containing every vector of norm <= bound, from the diagonal of G^{-1}.
inline std::vector<Int> box_radii(const Lattice& l, Int bound) {
  const int n = l.rank();
  Mat adj = adjugate(l.gram());
  const double det = determinant(l).get_d();
  std::vector<Int> r(n);
  for (int i = 0; i < n; ++i)
    r[i] = static_cast<Int>(std::floor(std::sqrt(static_cast<double>(bound) * adj(i, i) / det) + 1e-9));
  return r;
}

inline double box_size(const std::vector<Int>& r) {
  double s = 1;
  for (Int x : r) s *= 2.0 * x + 1;
  return s;
}

template <typename F>
void for_each_in_box(const std::vector<Int>& r, F&& f) {
  const int n = static_cast<int>(r.size());
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = -r[i];
  for (;;) {
    f(x);
    int i = 0;
    while (i < n && x[i] == r[i]) x[i] = -r[i], ++i;
    if (i == n) return;
    ++x[i];
  }
}

// counts[k] = #{v : v.v = k} for k <= bound, both signs.
inline std::vector<Int> brute_counts(const Lattice& l, Int bound) {
  std::vector<Int> c(static_cast<std::size_t>(bound) + 1, 0);
  for_each_in_box(box_radii(l, bound), [&](const Vec& x) {
    Int nn = l.norm(x);
    if (nn <= bound) ++c[nn];
  });
  return c;
}

// Vectors of exact norm k, both signs.
inline std::vector<Vec> brute_vectors(const Lattice& l, Int k) {
  std::vector<Vec> out;
  for_each_in_box(box_radii(l, k), [&](const Vec& x) {
    if (l.norm(x) == k) out.push_back(x);
  });
  return out;
}

// |O(L)| by extending images of the basis one vector at a time.
inline std::uint64_t brute_aut_order(const Lattice& l) {
  const int n = l.rank();
  std::vector<std::vector<Vec>> cand(n);
  for (int i = 0; i < n; ++i) cand[i] = brute_vectors(l, l(i, i));
  std::vector<Vec> img(n);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      ++count;
      return;
    }
    for (const auto& v : cand[i]) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = l.dot(img[j], v) == l(i, j);
      if (!ok) continue;
      img[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

// Orbits on F_2^n by breadth-first closure; reps are orbit minima.
inline std::map<std::uint32_t, std::uint64_t> closure_orbits(const std::vector<Mat>& gens, int n) {
  const std::uint32_t total = 1u << n;
  std::vector<char> seen(total, 0);
  std::map<std::uint32_t, std::uint64_t> out;
  for (std::uint32_t s = 0; s < total; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> q{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < q.size(); ++k) {
      for (const auto& g : gens) {
        std::uint32_t w = 0;
        for (int i = 0; i < n; ++i) {
          Int acc = 0;
          for (int j = 0; j < n; ++j)
            if (q[k] >> j & 1) acc += g(i, j);
          if (acc & 1) w |= 1u << i;
        }
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
      }
    }
    out[s] = q.size();
  }
  return out;
}

// Random matrix invertible mod 2.
inline Mat random_gl2(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> bit(0, 1);
  for (;;) {
    Mat m(n, n);
    for (auto& x : m.a) x = bit(rng);
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) rows.push_back(Vec(m.row(i), m.row(i) + n));
    // Gaussian elimination over F_2.
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
      int p = -1;
      for (int r = rank; r < n; ++r)
        if (rows[r][c] & 1) p = r;
      if (p < 0) continue;
      std::swap(rows[p], rows[rank]);
      for (int r = 0; r < n; ++r)
        if (r != rank && (rows[r][c] & 1))
          for (int j = 0; j < n; ++j) rows[r][j] ^= rows[rank][j] & 1;
      ++rank;
    }
    if (rank == n) return m;
  }
}

// det(A) det(B) = det(L) |H|^2 for L glued from A and B along H.
inline bool determinant_identity(const Lattice& a, const Lattice& b, const Lattice& glued, Int h) {
  return determinant(a) * determinant(b) == determinant(glued) * BigInt(h) * BigInt(h);
}

}  // namespace unilat::oracle

#endif  // UNILAT_TESTS_ORACLES_HPP_
