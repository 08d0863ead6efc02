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

#include "unilat/bv.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

#include "unilat/residue.hpp"
#include "unilat/vechash.hpp"

namespace unilat {

namespace {

std::vector<Lattice> sum_of(std::initializer_list<const char*> names) {
  std::vector<Lattice> out;
  for (const char* n : names) out.push_back(parse_standard(n));
  return out;
}

}  // namespace

const char* variant_name(BVVariant v) {
  switch (v) {
    case BVVariant::kParity:
      return "parity";
    case BVVariant::kAbsolute:
      return "absolute";
    case BVVariant::kSigned:
      return "signed";
  }
  return "parity";
}

BVVariant parse_variant(const std::string& s) {
  if (s == "parity") return BVVariant::kParity;
  if (s == "absolute") return BVVariant::kAbsolute;
  if (s == "signed") return BVVariant::kSigned;
  fail(ErrorKind::kInvalidInput, "unknown BV variant '" + s + "'");
}

std::uint64_t bv_column_hash(std::vector<Int> column) {
  std::sort(column.begin(), column.end());
  std::uint64_t h = 0x243f6a8885a308d3ULL ^ column.size();
  for (Int x : column) h = mix64(h ^ static_cast<std::uint64_t>(x));
  return h;
}

std::uint64_t bv_marking_hash(Vec tuple, BVVariant variant) {
  if (variant != BVVariant::kSigned) tuple = canonical_sign(std::move(tuple));
  return hash_ints(tuple.data(), static_cast<int>(tuple.size()));
}

std::uint64_t bv_vertex_key(std::uint64_t column_hash, std::uint64_t marking_hash) {
  return mix64(column_hash ^ mix64(marking_hash + 0x13198a2e03707344ULL));
}

std::uint64_t bv_combine(std::vector<std::uint64_t> keys, const BVParams& params) {
  std::sort(keys.begin(), keys.end());
  std::uint64_t h = mix64(static_cast<std::uint64_t>(kBVHashVersion) * 0x100000001b3ULL ^
                          static_cast<std::uint64_t>(params.depth) << 8 ^
                          static_cast<std::uint64_t>(params.variant) << 4 ^
                          params.marking.size() << 16);
  h = mix64(h ^ keys.size());
  for (auto k : keys) h = mix64(h ^ k);
  return h;
}

BVHash bv(const Lattice& l, const BVParams& params) {
  const int n = l.rank();
  if (params.depth < 1) fail(ErrorKind::kInvalidInput, "BV depth must be positive");
  EnumOptions eo;
  eo.cap = params.vertex_cap * 2;
  ShortVectorReport rep = short_vectors(l, static_cast<Int>(params.depth), eo);
  VectorList verts = std::move(rep.vectors);
  if (params.variant == BVVariant::kSigned) {
    const std::size_t half = verts.size();
    Vec neg(n);
    for (std::size_t i = 0; i < half; ++i) {
      for (int k = 0; k < n; ++k) neg[k] = -verts[i][k];
      verts.push(neg.data(), verts.norms[i]);
    }
  }
  const std::size_t m = verts.size();
  if (m > params.vertex_cap)
    fail(ErrorKind::kResourceCap, "BV graph has " + std::to_string(m) + " vertices, cap " +
                                      std::to_string(params.vertex_cap));
  for (const auto& a : params.marking)
    if (static_cast<int>(a.size()) != n) fail(ErrorKind::kInvalidInput, "marking vector has wrong length");

  // Marking tuples.
  std::vector<Vec> mark_prod;
  for (const auto& a : params.marking) mark_prod.push_back(l.products(a));
  std::vector<std::uint64_t> mark_hash(m);
  Vec tuple(params.marking.size());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < mark_prod.size(); ++r) {
      Int s = 0;
      for (int k = 0; k < n; ++k) s += mark_prod[r][k] * verts[i][k];
      tuple[r] = s;
    }
    mark_hash[i] = bv_marking_hash(tuple, params.variant);
  }

  BVHash out;
  out.vertex_count = m;
  std::vector<std::uint64_t> keys(m);
  if (params.variant == BVVariant::kAbsolute) {
    // Dense integer matrix of |v.w|; squared column by column.
    std::vector<Int> a(m * m);
    std::vector<Vec> prods(m);
    for (std::size_t i = 0; i < m; ++i) prods[i] = l.products(verts.vec(i));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Int s = 0;
        for (int k = 0; k < n; ++k) s += prods[i][k] * verts[j][k];
        a[i * m + j] = s < 0 ? -s : s;
      }
    std::vector<Int> col(m);
    for (std::size_t v = 0; v < m; ++v) {
      for (std::size_t w = 0; w < m; ++w) {
        Int s = 0;
        const Int* rv = &a[v * m];
        const Int* rw = &a[w * m];
        for (std::size_t u = 0; u < m; ++u) s += rv[u] * rw[u];
        col[w] = s;
      }
      keys[v] = bv_vertex_key(bv_column_hash(col), mark_hash[v]);
    }
  } else {
    // Packed adjacency rows; parities via Gram v mod 2.
    const std::size_t words = (m + 63) / 64;
    std::vector<std::uint64_t> rows(m * words, 0);
    std::vector<std::uint64_t> pmask(m), vmask(m);
    if (n > 64) fail(ErrorKind::kResourceCap, "BV parity packing supports rank <= 64");
    for (std::size_t i = 0; i < m; ++i) {
      Vec p = l.products(verts.vec(i));
      std::uint64_t pm = 0, vm = 0;
      for (int k = 0; k < n; ++k) {
        if (p[k] & 1) pm |= std::uint64_t{1} << k;
        if (verts[i][k] & 1) vm |= std::uint64_t{1} << k;
      }
      pmask[i] = pm;
      vmask[i] = vm;
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (std::popcount(pmask[i] & vmask[j]) & 1) rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    std::vector<std::uint32_t> hist(m + 1);
    for (std::size_t v = 0; v < m; ++v) {
      std::fill(hist.begin(), hist.end(), 0);
      const std::uint64_t* rv = &rows[v * words];
      for (std::size_t w = 0; w < m; ++w) {
        const std::uint64_t* rw = &rows[w * words];
        std::uint32_t c = 0;
        for (std::size_t t = 0; t < words; ++t) c += std::popcount(rv[t] & rw[t]);
        ++hist[c];
      }
      // Same fold as bv_column_hash over the sorted column.
      std::uint64_t h = 0x243f6a8885a308d3ULL ^ m;
      for (std::size_t val = 0; val <= m; ++val)
        for (std::uint32_t r = 0; r < hist[val]; ++r) h = mix64(h ^ static_cast<std::uint64_t>(val));
      keys[v] = bv_vertex_key(h, mark_hash[v]);
    }
  }
  out.value = bv_combine(std::move(keys), params);
  return out;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t parse_hash_hex(const std::string& s) {
  if (s.size() != 16 || s.find_first_not_of("0123456789abcdef") != std::string::npos)
    fail(ErrorKind::kInvalidInput, "hash must be 16 lowercase hex digits: '" + s + "'");
  return std::stoull(s, nullptr, 16);
}

Lattice np_companion(int n, int p) {
  const int r = ((n % 8) + 8) % 8;
  auto sum = [](std::initializer_list<const char*> names) { return direct_sum(sum_of(names)); };
  if (p == 3) {
    switch (r) {
      case 1:
      case 3:
        return sum({"<2>", "<3>"});
      case 2:
        return parse_standard("<3>");
      case 5:
        return parse_standard("<6>");
      case 6:
        return parse_standard("A2");
      case 7:
        return sum({"<2>", "A2"});
    }
  } else if (p == 5) {
    switch (r) {
      case 1:
        return parse_standard("<10>");
      case 3:
      case 5:
        return sum({"<2>", "<5>"});
      case 4:
        return parse_standard("<5>");
      case 7:
        return sum({"<2>", "S5"});
      case 0:
        return parse_standard("S5");
    }
  } else if (p == 7) {
    switch (r) {
      case 1:
      case 3:
        return sum({"<2>", "S7"});
      case 2:
        return parse_standard("S7");
      case 5:
        return parse_standard("<14>");
      case 6:
        return parse_standard("<7>");
      case 7:
        return sum({"<2>", "<7>"});
    }
  }
  fail(ErrorKind::kInvalidInput, "no companion for rank " + std::to_string(n) + " and p = " +
                                     std::to_string(p));
}

MarkedLattice np_overlattice(const Lattice& l, int p, int which) {
  const int n = l.rank();
  Lattice a;
  if (which == 1) {
    a = np_companion(n, p);
  } else if (which == 2) {
    if (n % 2 == 0) fail(ErrorKind::kInvalidInput, "second companion needs odd rank");
    const int m = ((n + 1 + p) % 4 == 1) ? n + 1 : n - 1;
    a = np_companion(m, p);
  } else if (which == 3) {
    if (n % 2 == 0) fail(ErrorKind::kInvalidInput, "third companion needs odd rank");
    a = parse_standard("A1");
  } else {
    fail(ErrorKind::kInvalidInput, "companion selector must be 1, 2 or 3");
  }
  GlueResult g = glue_companion(a, l);
  MarkedLattice out;
  out.lattice = g.lattice;
  for (int j = 0; j < g.a_images.cols; ++j) out.marking.push_back(g.a_images.column(j));
  return out;
}

std::vector<BVHash> bv_np(const Lattice& l, int p, const std::vector<int>& which) {
  std::vector<BVHash> out;
  for (int w : which) {
    MarkedLattice ml = np_overlattice(l, p, w);
    BVParams bp;
    bp.marking = ml.marking;
    out.push_back(bv(ml.lattice, bp));
  }
  return out;
}

}  // namespace unilat
