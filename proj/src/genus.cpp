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

#include <algorithm>

#include "unilat/classify.hpp"
#include "unilat/linalg.hpp"
#include "unilat/residue.hpp"
#include "unilat/rootsys.hpp"

namespace unilat {

namespace {

VectorList typed_vectors(const Lattice& l, const TypeTag& t) {
  VectorList out;
  out.dim = l.rank();
  switch (t.kind) {
    case VectorKind::kPlain:
      for_each_short_vector(l, t.norm, t.norm, [&](const Int* v, Int nrm) {
        Vec x(v, v + l.rank());
        if (is_primitive(x) && modulus(l, x) == 1) out.push(v, nrm);
      });
      break;
    case VectorKind::kChar: {
      auto c = characteristic_vectors(l, t.norm);
      for (std::size_t i = 0; i < c.vectors.size(); ++i)
        if (c.vectors.norms[i] == t.norm) out.push(c.vectors[i], t.norm);
      break;
    }
    case VectorKind::kSpecial:
      for (const auto& v : special_vectors(l, t.norm)) out.push(v.data(), t.norm);
      break;
  }
  return out;
}

Lattice complement(const Lattice& l, const Vec& v) {
  Mat b = orthogonal_complement_basis(l, {v});
  return lll_reduce(sublattice(l, b));
}

void check_target(const Lattice& n, const GenusTarget& t) {
  if (n.rank() != t.rank || determinant(n) != t.det || n.is_even() != t.even)
    fail(ErrorKind::kInvalidInput,
         "orthogonal complement has rank " + std::to_string(n.rank()) + ", det " +
             determinant(n).get_str() + (n.is_even() ? ", even" : ", odd") +
             ": inconsistent vector type for the target genus");
}

// Column change of basis conjugated into the ambient lattice coordinates.
Mat conjugate_into(const Mat& b, const Mat& g) {
  const int n = b.rows;
  Mat adj = adjugate(b);
  BigInt det = determinant(b);
  Mat prod = b * g * adj;
  Mat out(n, n);
  const Int d = det.get_si();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (prod(i, j) % d != 0) fail(ErrorKind::kInternal, "isometry of M does not preserve L");
      out(i, j) = prod(i, j) / d;
    }
  return out;
}

Lattice mod2_kernel(const Lattice& l, const Vec& e, Mat* basis) {
  const int n = l.rank();
  Vec ge = l.products(e);
  int piv = -1;
  for (int i = 0; i < n; ++i)
    if (mod_pos(ge[i], 2) == 1) {
      piv = i;
      break;
    }
  if (piv < 0) fail(ErrorKind::kInternal, "class has even products with all of L");
  Mat b(n, n);
  for (int j = 0; j < n; ++j) {
    if (j == piv) {
      b(j, j) = 2;
    } else {
      b(j, j) = 1;
      if (mod_pos(ge[j], 2) == 1) b(piv, j) = 1;
    }
  }
  *basis = b;
  return sublattice(l, b);
}

Int output_weight(const TypeTag& t, Int source_det) {
  Int o = t.norm;
  if (t.kind == VectorKind::kSpecial) o = t.norm / source_det;
  return o == 2 ? 1 : 2;
}

}  // namespace

const char* kind_name(VectorKind k) {
  switch (k) {
    case VectorKind::kPlain:
      return "plain";
    case VectorKind::kChar:
      return "char";
    case VectorKind::kSpecial:
      return "sp";
  }
  return "plain";
}

VectorKind parse_kind(const std::string& s) {
  if (s == "plain") return VectorKind::kPlain;
  if (s == "char" || s == "exc") return VectorKind::kChar;
  if (s == "sp") return VectorKind::kSpecial;
  fail(ErrorKind::kInvalidInput, "unknown vector type '" + s + "'");
}

bool genus_nonempty(int n, int p) {
  if (n < 1) return false;
  return n % 2 == 1 || (n + p) % 4 == 1;
}

OrbitMethodResult orbit_method(const std::vector<ClassRecord>& sources, const TypeTag& t,
                               const GenusTarget& target, const InvariantSpec& spec,
                               bool two_stage, const SearchOptions& opt) {
  OrbitMethodResult res;
  ClassTable table(spec, opt);
  Int weight = 0;
  for (std::size_t si = 0; si < sources.size(); ++si) {
    const ClassRecord& src = sources[si];
    const Lattice& l = src.lattice;
    const Int sdet = determinant(l).get_si();
    const Int w = output_weight(t, sdet);
    if (weight != 0 && weight != w) fail(ErrorKind::kInvalidInput, "sources have mixed determinants");
    weight = w;
    auto emit = [&](const Vec& v, const std::string& prov) {
      Lattice nl = complement(l, v);
      check_target(nl, target);
      table.insert(nl, prov, nullptr);
    };
    if (!two_stage) {
      VectorList s = typed_vectors(l, t);
      if (s.size() == 0) continue;
      VectorOrbits vo = vector_orbits(src.aut_generators, s);
      res.orbits += vo.representatives.size();
      res.source_side += Rational(static_cast<unsigned long>(s.size())) / Rational(src.aut_order);
      for (std::size_t k = 0; k < vo.representatives.size(); ++k)
        emit(s.vec(vo.representatives[k]),
             src.root_system + ":" + kind_name(t.kind) + std::to_string(t.norm));
      continue;
    }
    if (t.kind != VectorKind::kPlain || mod_pos(t.norm, 4) != 2)
      fail(ErrorKind::kInvalidInput, "two-stage mode needs plain vectors of norm 2 mod 4");
    if (sdet != 1) fail(ErrorKind::kInvalidInput, "two-stage mode needs unimodular sources");
    const int n = l.rank();
    Mod2Orbits orb = orbits_mod2(src.aut_generators, n);
    for (std::size_t k = 0; k < orb.representatives.size(); ++k) {
      const std::uint32_t bits = orb.representatives[k];
      if (bits == 0) continue;
      Vec e(n, 0);
      for (int i = 0; i < n; ++i) e[i] = (bits >> i) & 1;
      if (mod_pos(l.norm(e), 4) != 2) continue;
      VectorList raw = coset_short_vectors(l, DualVector(e, 2), Rational(t.norm, 4));
      VectorList s;
      s.dim = n;
      for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw.norms[i] == t.norm) s.push(raw[i], t.norm);
      if (s.size() == 0) continue;
      Mat mb;
      Lattice m = mod2_kernel(l, e, &mb);
      IsometryGroup gm = automorphisms(m, opt);
      if (gm.order * BigInt(static_cast<unsigned long>(orb.sizes[k])) != src.aut_order)
        fail(ErrorKind::kAuditMismatch, "stabilizer of a class in L/2L has the wrong order");
      std::vector<Mat> gl;
      for (const auto& g : gm.generators) gl.push_back(conjugate_into(mb, g));
      VectorOrbits vo = vector_orbits(gl, s);
      res.orbits += vo.representatives.size();
      res.source_side += Rational(static_cast<unsigned long>(s.size())) / Rational(gm.order);
      for (std::size_t r = 0; r < vo.representatives.size(); ++r)
        emit(s.vec(vo.representatives[r]), src.root_system + ":2stage" + std::to_string(t.norm));
    }
  }
  res.classes = table.take();
  for (const auto& c : res.classes) res.target_side += Rational(weight) / Rational(c.aut_order);
  return res;
}

OrbitMethodResult glue_up(const std::vector<ClassRecord>& sources, const GenusTarget& target,
                          const InvariantSpec& spec, const SearchOptions& opt) {
  OrbitMethodResult res;
  ClassTable table(spec, opt);
  const Lattice a1 = parse_standard("A1");
  FiniteQuadraticModule ra(a1);
  for (const auto& src : sources) {
    FiniteQuadraticModule rl(src.lattice);
    auto eta = anti_embedding(ra, rl, true);
    if (!eta) continue;
    GlueResult g = glue_pair(a1, src.lattice, *eta);
    Lattice nl = lll_reduce(g.lattice);
    check_target(nl, target);
    ++res.orbits;
    res.source_side += Rational(1) / Rational(src.aut_order);
    table.insert(nl, src.root_system + ":glueA1", nullptr);
  }
  res.classes = table.take();
  for (const auto& c : res.classes) {
    Int r2 = theta_counts(c.lattice, 2)[2];
    res.target_side += Rational(static_cast<long>(r2)) / Rational(c.aut_order);
  }
  return res;
}

namespace {

enum class StepKind { kChar, kRoots, kSpecial, kE8, kTwoStage, kGlue };
struct Step {
  StepKind kind;
  int src_n = 0;
  int src_p = 0;
  Int norm = 0;
};

bool chain_step(int n, int p, Step* s) {
  auto C = [&](int k, Int nu) { *s = {StepKind::kChar, k, 0, nu}; };
  auto R = [&](int k) { *s = {StepKind::kRoots, k, p, 2}; };
  auto S = [&](int k, int q, Int nu) { *s = {StepKind::kSpecial, k, q, nu}; };
  auto E = [&](Int nu) { *s = {StepKind::kE8, 8, 0, nu}; };
  auto T = [&](Int nu) { *s = {StepKind::kTwoStage, 16, 0, nu}; };
  auto G = [&](int k) { *s = {StepKind::kGlue, k, p, 0}; };
  if (p == 1) {
    if (n == 7) return E(2), true;
    if (n == 15) return *s = {StepKind::kTwoStage, 16, 0, 2}, true;
    return false;
  }
  if (p == 3) {
    switch (n) {
      case 1: return R(2), true;
      case 2: return C(3, 3), true;
      case 3: return S(4, 5, 30), true;
      case 5: return R(6), true;
      case 6: return S(7, 1, 6), true;
      case 7: return E(6), true;
      case 9: return R(10), true;
      case 10: return C(11, 3), true;
      case 11: return S(12, 5, 30), true;
      case 13: return R(14), true;
      case 14: return S(15, 1, 6), true;
      case 15: return T(6), true;
    }
  } else if (p == 5) {
    switch (n) {
      case 1: return C(2, 10), true;
      case 3: return R(4), true;
      case 4: return C(5, 5), true;
      case 5: return S(6, 3, 30), true;
      case 7: return E(10), true;
      case 8: return G(7), true;
      case 9: return C(10, 10), true;
      case 11: return R(12), true;
      case 12: return C(13, 5), true;
      case 13: return S(14, 3, 30), true;
      case 15: return T(10), true;
      case 16: return G(15), true;
    }
  } else if (p == 7) {
    switch (n) {
      case 1: return S(2, 3, 42), true;
      case 2: return G(1), true;
      case 3: return S(4, 5, 70), true;
      case 5: return R(6), true;
      case 6: return C(7, 7), true;
      case 7: return E(14), true;
      case 9: return S(10, 3, 42), true;
      case 10: return G(9), true;
      case 11: return S(12, 5, 70), true;
      case 13: return R(14), true;
      case 14: return C(15, 7), true;
      case 15: return T(14), true;
    }
  }
  return false;
}

const std::vector<ClassRecord>& unimodular_level(int k, GenusCache& cache, const SearchOptions& opt) {
  if (static_cast<int>(cache.unimodular.size()) <= k) cache.unimodular = classify_unimodular(k, nullptr, opt);
  return cache.unimodular[k];
}

std::vector<ClassRecord> even_only(const std::vector<ClassRecord>& v) {
  std::vector<ClassRecord> out;
  for (const auto& r : v)
    if (r.lattice.is_even()) out.push_back(r);
  return out;
}

}  // namespace

const GenusRun& classify_genus(int n, int p, GenusCache& cache, const SearchOptions& opt) {
  auto key = std::make_pair(n, p);
  auto it = cache.genera.find(key);
  if (it != cache.genera.end()) return it->second;
  if (p != 1 && p != 3 && p != 5 && p != 7) fail(ErrorKind::kInvalidInput, "p must be 3, 5 or 7");
  GenusRun run;
  if (!genus_nonempty(n, p)) {
    run.method = "empty";
    return cache.genera[key] = run;
  }
  Step st;
  if (!chain_step(n, p, &st))
    fail(ErrorKind::kResourceCap, "no classification chain for rank " + std::to_string(n) +
                                      " and p = " + std::to_string(p));
  GenusTarget target{n, p == 1 ? 2 : (n % 2 == 1 ? 2 * p : p), true};
  InvariantSpec spec;
  if (p != 1) spec = InvariantSpec{{"bvnp1"}, p};
  OrbitMethodResult r;
  std::string desc;
  switch (st.kind) {
    case StepKind::kChar: {
      const auto& src = unimodular_level(st.src_n, cache, opt);
      desc = "char vectors of norm " + std::to_string(st.norm) + " in X" + std::to_string(st.src_n);
      r = orbit_method(src, {st.norm, VectorKind::kChar}, target, spec, false, opt);
      break;
    }
    case StepKind::kRoots:
    case StepKind::kSpecial: {
      std::vector<ClassRecord> src = classify_genus(st.src_n, st.src_p, cache, opt).classes;
      VectorKind k = st.kind == StepKind::kRoots ? VectorKind::kPlain : VectorKind::kSpecial;
      desc = std::string(st.kind == StepKind::kRoots ? "roots" : "special vectors of norm " +
                                                                    std::to_string(st.norm)) +
             " in G(" + std::to_string(st.src_n) + "," + std::to_string(st.src_p) + ")";
      r = orbit_method(src, {st.norm, k}, target, spec, false, opt);
      break;
    }
    case StepKind::kE8: {
      auto src = even_only(unimodular_level(8, cache, opt));
      desc = "vectors of norm " + std::to_string(st.norm) + " in E8";
      r = orbit_method(src, {st.norm, VectorKind::kPlain}, target, spec, false, opt);
      break;
    }
    case StepKind::kTwoStage: {
      auto src = even_only(unimodular_level(16, cache, opt));
      const bool staged = st.norm > 2;
      desc = std::string(staged ? "two-stage " : "") + "vectors of norm " + std::to_string(st.norm) +
             " in even unimodular rank 16";
      r = orbit_method(src, {st.norm, VectorKind::kPlain}, target, spec, staged, opt);
      break;
    }
    case StepKind::kGlue: {
      std::vector<ClassRecord> src = classify_genus(st.src_n, st.src_p, cache, opt).classes;
      desc = "A1 glued to G(" + std::to_string(st.src_n) + "," + std::to_string(st.src_p) + ")";
      r = glue_up(src, target, spec, opt);
      break;
    }
  }
  run.method = desc;
  run.conserved = r.conserved();
  run.log.push_back(desc + ": " + std::to_string(r.orbits) + " orbits, " +
                    std::to_string(r.classes.size()) + " classes, mass " +
                    to_string(r.source_side) + (run.conserved ? " == " : " != ") +
                    to_string(r.target_side));
  run.classes = std::move(r.classes);
  sort_canonical(run.classes);
  return cache.genera[key] = std::move(run);
}

}  // namespace unilat
