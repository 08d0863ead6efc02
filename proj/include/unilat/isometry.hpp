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

#ifndef UNILAT_ISOMETRY_HPP_
#define UNILAT_ISOMETRY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "unilat/lattice.hpp"

namespace unilat {

struct SearchOptions {
  std::uint64_t node_budget = 400'000'000;
  std::size_t vector_cap = std::size_t{1} << 22;
};

// Generators act on coordinate columns: g^T G g = G.
struct IsometryGroup {
  int dim = 0;
  std::vector<Mat> generators;
  BigInt order = 1;
};

// Full O(L) by backtracking over images of a reduced basis.
IsometryGroup automorphisms_direct(const Lattice& l, const SearchOptions& opt = {});

// Isometries fixing the linear form x -> phi . x (phi in coordinates).
IsometryGroup stabilizer_of_form(const Lattice& l, const Vec& phi,
                                 const SearchOptions& opt = {});

struct ReducedGroup {
  BigInt weyl_order = 1;
  BigInt order = 1;           // |O(L)| / |W(L)|
  std::vector<Mat> generators;  // generators of O(L; rho)
  std::vector<Vec> simple_roots;
};
ReducedGroup reduced_group(const Lattice& l, const SearchOptions& opt = {});

// O(L) as W(L) x| O(L; rho): simple reflections plus reduced generators.
IsometryGroup automorphisms(const Lattice& l, const SearchOptions& opt = {});

// g with g^T gram(a) g = gram(b), or nullopt if none exists.
std::optional<Mat> isometry(const Lattice& a, const Lattice& b, const SearchOptions& opt = {});
bool is_isometric(const Lattice& a, const Lattice& b, const SearchOptions& opt = {});

// Columns: a basis of L made of short vectors. Max diagonal never exceeds
// that of an LLL-reduced basis.
Mat good_basis(const Lattice& l, std::uint64_t seed = 0);
Lattice good_lattice(const Lattice& l, std::uint64_t seed = 0);

Mat reflection_matrix(const Lattice& l, const Vec& root);
bool preserves_gram(const Mat& g, const Mat& gram);

struct Mod2Orbits {
  int dim = 0;
  std::vector<std::uint32_t> representatives;  // minimal element of each orbit
  std::vector<std::uint64_t> sizes;
};
// Orbits of <gens> mod 2 on (Z/2)^n. Bit i of an element is coordinate i.
Mod2Orbits orbits_mod2(const std::vector<Mat>& gens, int n, int max_dim = 30);

struct VectorOrbits {
  std::vector<std::size_t> representatives;  // indices into the input list
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint32_t> orbit_of;  // per input vector
};
// Orbits of <gens> on an explicit finite set of vectors, closed under gens.
VectorOrbits vector_orbits(const std::vector<Mat>& gens, const VectorList& vecs);

}  // namespace unilat

#endif  // UNILAT_ISOMETRY_HPP_
