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

#ifndef UNILAT_VECHASH_HPP_
#define UNILAT_VECHASH_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "unilat/types.hpp"

namespace unilat {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_ints(const Int* v, int n) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL ^ static_cast<std::uint64_t>(n);
  for (int i = 0; i < n; ++i) h = mix64(h ^ static_cast<std::uint64_t>(v[i]));
  return h;
}

struct VecHasher {
  std::size_t operator()(const Vec& v) const {
    return static_cast<std::size_t>(hash_ints(v.data(), static_cast<int>(v.size())));
  }
};

// Index of explicit vectors of fixed dimension stored in a flat array.
class VectorIndex {
 public:
  explicit VectorIndex(int dim = 0) : dim_(dim) {}
  int dim() const { return dim_; }
  std::size_t size() const { return data_.size() / (dim_ ? dim_ : 1); }
  const Int* operator[](std::size_t i) const { return data_.data() + i * dim_; }

  // Returns index, inserting if new.
  std::size_t insert(const Int* v) {
    auto h = hash_ints(v, dim_);
    auto range = map_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (equal(it->second, v)) return it->second;
    std::size_t id = size();
    data_.insert(data_.end(), v, v + dim_);
    map_.emplace(h, id);
    return id;
  }
  // npos if absent.
  std::size_t find(const Int* v) const {
    auto h = hash_ints(v, dim_);
    auto range = map_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (equal(it->second, v)) return it->second;
    return npos;
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  bool equal(std::size_t id, const Int* v) const {
    const Int* w = (*this)[id];
    for (int i = 0; i < dim_; ++i)
      if (w[i] != v[i]) return false;
    return true;
  }
  int dim_;
  std::vector<Int> data_;
  std::unordered_multimap<std::uint64_t, std::size_t> map_;
};

}  // namespace unilat

#endif  // UNILAT_VECHASH_HPP_
