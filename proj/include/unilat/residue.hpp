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

#ifndef UNILAT_RESIDUE_HPP_
#define UNILAT_RESIDUE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "unilat/lattice.hpp"

namespace unilat {

// res L = L#/L with its Q/Z bilinear form and, for even L, q(x) = x.x/2.
class FiniteQuadraticModule {
 public:
  using Element = std::vector<Int>;

  FiniteQuadraticModule() = default;
  explicit FiniteQuadraticModule(const Lattice& l);

  const std::vector<Int>& divisors() const { return div_; }
  const std::vector<DualVector>& generators() const { return gens_; }
  bool has_quadratic() const { return even_; }
  Int order() const;
  int rank() const { return lattice_.rank(); }

  Element zero() const { return Element(div_.size(), 0); }
  std::vector<Element> elements() const;
  Element add(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element scale(const Element& x, Int k) const;
  Int element_order(const Element& x) const;
  bool is_zero(const Element& x) const;

  DualVector lift(const Element& x) const;
  // Class of an element of L# given in L coordinates. Throws if x not in L#.
  Element class_of(const DualVector& x) const;

  Rational bilinear(const Element& x, const Element& y) const;  // in [0,1)
  Rational quadratic(const Element& x) const;                   // in [0,1), even only
  Rational norm_mod2(const Element& x) const;                   // x.x mod 2, even only
  Rational generator_bilinear(int i, int j) const { return bil_[i][j]; }

 private:
  Lattice lattice_;
  bool even_ = false;
  std::vector<Int> div_;
  std::vector<DualVector> gens_;
  std::vector<std::vector<Rational>> bil_;
  std::vector<Rational> norm2_;  // generator norms mod 2
  Mat v_inv_;
  std::vector<Int> full_div_;  // all Smith divisors, including 1
};

FiniteQuadraticModule residue(const Lattice& l);

// gcd of v.e_i.
Int modulus(const Lattice& l, const Vec& v);
bool is_primitive(const Vec& v);

struct CharacteristicResult {
  DualVector representative;
  VectorList vectors;  // norms in `norms`, both signs
};
// Characteristic vectors of unimodular L with norm <= bound.
CharacteristicResult characteristic_vectors(const Lattice& l, Int bound);
// Characteristic vectors of norm < 8.
VectorList exceptional_vectors(const Lattice& l);

// Primitive v with m(v) = det L and v.v = norm.
std::vector<Vec> special_vectors(const Lattice& l, Int norm);

// Overlattice generated by L and the given elements of L#.
Lattice overlattice(const Lattice& l, const std::vector<DualVector>& gens,
                    Mat* basis_out = nullptr, Int* basis_denom = nullptr);

// Anti-isometric gluing data: pairs (h, eta(h)) with h in res A and eta(h) in
// res B, generating the graph of eta.
using GlueMap = std::vector<std::pair<FiniteQuadraticModule::Element,
                                      FiniteQuadraticModule::Element>>;

struct GlueResult {
  Lattice lattice;
  Mat a_images;  // columns: images of the basis of A in lattice coordinates
  Mat b_images;
  Int h_order = 1;
};
// Injective map res A -> res B reversing the bilinear form (and the quadratic
// form when `quadratic`), as pairs (generator of res A, image), or empty if
// none exists. With equal orders this is an anti-isometry.
std::optional<GlueMap> anti_embedding(const FiniteQuadraticModule& a,
                                      const FiniteQuadraticModule& b, bool quadratic);

GlueResult glue_pair(const Lattice& a, const Lattice& b, const GlueMap& eta);

// Overlattice of A + L gluing all of res A into res L with the bilinear
// form reversed (basis of A first). Throws if res A does not embed.
GlueResult glue_companion(const Lattice& a, const Lattice& l);

struct SplitResult {
  Lattice b;
  Mat b_basis;  // columns in L coordinates
  GlueMap eta;  // relative to residue(a) and residue(b)
  Int h_order = 1;
};
// a_basis: columns spanning a saturated sublattice A of L.
SplitResult split_pair(const Lattice& l, const Mat& a_basis, const Lattice& a_gram_lattice);
bool is_saturated(const Mat& basis_cols);

struct VenkovResult {
  Rational nu;
  VectorList lifts;  // numerators over lift denominators
  Int denom = 1;
};
VenkovResult venkov_min(const Lattice& m, const FiniteQuadraticModule& res,
                        const FiniteQuadraticModule::Element& c);

// Isotropic subgroups of res L (quadratic isotropy when L is even, bilinear
// with integral norms otherwise). Exhaustive only when |res L| <= 2^16.
std::vector<std::vector<FiniteQuadraticModule::Element>> isotropic_subgroups(
    const FiniteQuadraticModule& r, std::size_t cap = 100000);

// Solve basis * x = v over Q where basis columns and v share denominators.
Vec solve_in_basis(const Mat& basis_cols, Int basis_denom, const Vec& v, Int v_denom);

}  // namespace unilat

#endif  // UNILAT_RESIDUE_HPP_
