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

#ifndef UNILAT_LATTICE_HPP_
#define UNILAT_LATTICE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "unilat/types.hpp"

namespace unilat {

// Integral positive definite lattice given by its Gram matrix.
class Lattice {
 public:
  Lattice() = default;
  // Validates symmetry and positive definiteness (leading minors).
  explicit Lattice(Mat gram);
  static Lattice from_lower_triangle(int n, const std::vector<Int>& lower);

  int rank() const { return gram_.rows; }
  const Mat& gram() const { return gram_; }
  Int operator()(int i, int j) const { return gram_(i, j); }

  Int dot(const Vec& x, const Vec& y) const;
  Int norm(const Vec& x) const { return dot(x, x); }
  // Gram * x: inner products of x with the basis vectors.
  Vec products(const Vec& x) const;
  Rational dot(const DualVector& x, const DualVector& y) const;
  bool is_even() const;
  Int max_diagonal() const;
  bool operator==(const Lattice& o) const { return gram_ == o.gram_; }

 private:
  Mat gram_;
};

BigInt determinant(const Lattice& l);

// Gram of L# in the dual basis scaled by det L; integral.
Lattice rescaled_dual(const Lattice& l);
// Columns: the dual basis in coordinates of L, common denominator det L.
Mat dual_basis_numerators(const Lattice& l);

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice direct_sum(const std::vector<Lattice>& parts);

struct EvenPart {
  Lattice lattice;
  Mat basis;  // columns in coordinates of L
  int index = 1;
};
EvenPart even_part(const Lattice& l);

// Names: "A" "D" "E" "I" with rank, "<d>" via scalar(d), "S2" "S5" "S7",
// "F8", "Ap" (root orthogonal in A_n), "F8p", "Q0".
Lattice standard_lattice(const std::string& name, int rank = 0);
Lattice scalar_lattice(Int d);
// Parse "A4", "E8", "I3", "<10>", "S5", "A5p", "F8" ...; throws on failure.
Lattice parse_standard(const std::string& spec);

// Lattice spanned by `gens` (rows; rational with common denominator
// `denom`) inside an ambient space with integral Gram `ambient`. The columns
// of *basis_out (if given) are basis vectors, numerators over `denom`.
Lattice lattice_from_generators(const Mat& ambient, const std::vector<Vec>& gens,
                                Int denom, Mat* basis_out = nullptr);

// Sublattice with given basis columns.
Lattice sublattice(const Lattice& l, const Mat& basis_cols);

// Orthogonal complement of the span of the given vectors; basis columns.
Mat orthogonal_complement_basis(const Lattice& l, const std::vector<Vec>& vs);

// LLL-reduced copy; *basis gets the columns of the new basis.
Lattice lll_reduce(const Lattice& l, Mat* basis = nullptr);

struct EnumOptions {
  std::size_t cap = std::size_t{1} << 24;
};

// Flat list of coordinate vectors.
struct VectorList {
  int dim = 0;
  std::vector<Int> data;
  std::vector<Int> norms;  // numerators; see ShortVectorReport for scale

  std::size_t size() const { return norms.size(); }
  const Int* operator[](std::size_t i) const { return data.data() + i * dim; }
  Vec vec(std::size_t i) const { return Vec((*this)[i], (*this)[i] + dim); }
  void push(const Int* v, Int nrm) {
    data.insert(data.end(), v, v + dim);
    norms.push_back(nrm);
  }
};

struct ShortVectorReport {
  Rational bound;
  VectorList vectors;       // one per +-pair, lexicographically positive
  std::vector<Int> counts;  // counts[i] = #{v : v.v = i} (both signs)
};

// All nonzero v with v.v <= bound, one per sign pair.
ShortVectorReport short_vectors(const Lattice& l, const Rational& bound,
                                const EnumOptions& opt = {});
// Integer bound convenience.
ShortVectorReport short_vectors(const Lattice& l, Int bound,
                                const EnumOptions& opt = {});
// Both signs, as a flat list; norms stored exactly.
VectorList short_vectors_full(const Lattice& l, Int bound,
                              const EnumOptions& opt = {});

// Visits every v (both signs, v != 0) with lo <= v.v <= hi. Returns count.
std::size_t for_each_short_vector(const Lattice& l, Int lo, Int hi,
                                  const std::function<void(const Int*, Int)>& fn);

// Elements v of shift + L with v.v <= bound. Vectors are returned as
// numerators over shift.denom; norms as numerators over denom^2.
VectorList coset_short_vectors(const Lattice& l, const DualVector& shift,
                               const Rational& bound, const EnumOptions& opt = {});

// r_k counts (both signs) for k = 0..max_norm.
std::vector<Int> theta_counts(const Lattice& l, Int max_norm);

std::string gram_to_string(const Mat& g);

}  // namespace unilat

#endif  // UNILAT_LATTICE_HPP_
