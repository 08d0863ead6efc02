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

#ifndef UNILAT_BV_HPP_
#define UNILAT_BV_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "unilat/lattice.hpp"

namespace unilat {

// Bump when the hashing scheme changes; recorded in list files.
constexpr int kBVHashVersion = 1;

enum class BVVariant { kParity, kAbsolute, kSigned };
const char* variant_name(BVVariant v);
BVVariant parse_variant(const std::string& s);

struct BVParams {
  int depth = 3;
  std::vector<Vec> marking;  // vectors of L in coordinates
  BVVariant variant = BVVariant::kParity;
  std::size_t vertex_cap = 20000;
};

struct BVHash {
  std::uint64_t value = 0;
  std::size_t vertex_count = 0;
  bool operator==(const BVHash& o) const { return value == o.value; }
};

// Depth-d marked invariant of the short-vector graph.
BVHash bv(const Lattice& l, const BVParams& params = {});

// Hashing pieces shared with reference implementations.
std::uint64_t bv_column_hash(std::vector<Int> column);
std::uint64_t bv_marking_hash(Vec tuple, BVVariant variant);
std::uint64_t bv_vertex_key(std::uint64_t column_hash, std::uint64_t marking_hash);
std::uint64_t bv_combine(std::vector<std::uint64_t> keys, const BVParams& params);

std::string hash_hex(std::uint64_t h);
std::uint64_t parse_hash_hex(const std::string& s);

// Companion lattice for even lattices of rank n and determinant p (n even)
// or 2p (n odd), p in {3,5,7}: its bilinear residue is opposite.
Lattice np_companion(int n, int p);

struct MarkedLattice {
  Lattice lattice;
  std::vector<Vec> marking;
};
// Unimodular (which = 1) or determinant 2 / p (which = 2 / 3) overlattice
// with the glued companion marked.
MarkedLattice np_overlattice(const Lattice& l, int p, int which);

// Depth-3 marked hashes for each selector.
std::vector<BVHash> bv_np(const Lattice& l, int p, const std::vector<int>& which);

}  // namespace unilat

#endif  // UNILAT_BV_HPP_
