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

#ifndef UNILAT_ROOTSYS_HPP_
#define UNILAT_ROOTSYS_HPP_

#include <string>
#include <vector>

#include "unilat/lattice.hpp"

namespace unilat {

enum class Family { A = 0, D = 1, E = 2 };

// Irreducible ADE type. Normal form: D2 -> 2A1, D3 -> A3.
struct IrrType {
  Family family = Family::A;
  int rank = 0;

  bool operator==(const IrrType& o) const { return family == o.family && rank == o.rank; }
  bool operator<(const IrrType& o) const {
    if (family != o.family) return family < o.family;
    return rank < o.rank;
  }
  std::string str() const;
  BigInt weyl_order() const;
  int coxeter() const;
  int root_count() const { return rank * coxeter(); }  // both signs
  Lattice root_lattice() const;
};

struct Component {
  IrrType type;
  int mult = 1;
  bool operator==(const Component& o) const { return type == o.type && mult == o.mult; }
};

// Multiset of irreducible components.
class RootSystem {
 public:
  RootSystem() = default;
  explicit RootSystem(std::vector<IrrType> irreducibles);
  static RootSystem parse(const std::string& s);

  // Sorted by type: A1 < A2 < ... < D4 < ... < E8.
  const std::vector<Component>& components() const { return comps_; }
  // Isotypic components ordered by (multiplicity, type).
  std::vector<Component> isotypic_order() const;

  std::string str() const;
  int rank() const;
  Int root_count() const;  // |R|, both signs
  BigInt weyl_order() const;
  int m1() const;
  int irreducible_count() const;
  bool empty() const { return comps_.empty(); }
  bool operator==(const RootSystem& o) const { return comps_ == o.comps_; }

  // Q(R) with simple roots as basis, components in sorted order.
  Lattice root_lattice() const;

 private:
  std::vector<Component> comps_;
};

IrrType normalize_type(Family f, int rank);

// Classify a connected simply laced Dynkin diagram given as adjacency lists.
IrrType classify_connected_diagram(const std::vector<std::vector<int>>& adj);

// Components of a Cartan-like matrix (2 on diagonal, 0/-1 off diagonal).
// comp_of[i] gets the component id of node i.
std::vector<IrrType> classify_diagram(const Mat& cartan, std::vector<int>* comp_of = nullptr);

struct RootData {
  VectorList positive_roots;             // lexicographically positive roots
  std::vector<Vec> simple_roots;         // basis of the positive system
  DualVector weyl_vector;                // half the sum of positive roots
  std::vector<IrrType> irreducible;      // one entry per irreducible component
  std::vector<int> component_of_root;    // per positive root
  std::vector<int> component_of_simple;  // per simple root
  RootSystem system;

  int component_of(const Lattice& l, const Vec& root) const;
};

RootData root_data(const Lattice& l);

struct GroupConstants {
  BigInt weyl_order;
  Int root_count;
  std::vector<int> coxeter;  // per component (sorted order)
};
GroupConstants group_constants(const RootSystem& r);

struct PairStats {
  Int np = 0;
  Int npr = 0;
};
PairStats orthogonal_pair_stats(const RootSystem& r);

// Relevance of an orthogonal pair of roots lying in irreducible components
// ca and cb of a root system whose irreducible components are `irr`.
bool is_relevant_pair(const std::vector<IrrType>& irr, int ca, int cb);

struct FertileClass {
  DualVector class_rep;   // dominant minimal lift, coordinates in Q(R)
  Rational nu;
  std::vector<int> attach;  // simple roots with class_rep . alpha_i = 1
  RootSystem extension;     // predicted by the marked-node rule
  std::size_t minimal_lifts = 0;
};
std::vector<FertileClass> fertile_classes(const RootSystem& r);
// Gram of Q(R) + Z(e0 - w) for a fertile class of R.
Lattice extended_root_lattice(const RootSystem& r, const FertileClass& c);

struct EmbeddingOrbit {
  std::vector<Vec> images;  // images of the simple roots of S in Q(R)
  bool saturated = true;
};
struct EmbeddingOrbits {
  std::vector<EmbeddingOrbit> orbits;  // W(R)^{+-} orbits
};
EmbeddingOrbits root_embedding_orbits(const RootSystem& s, const RootSystem& r,
                                      std::size_t node_cap = 50'000'000);

}  // namespace unilat

#endif  // UNILAT_ROOTSYS_HPP_
