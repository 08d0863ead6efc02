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

#include "unilat.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "json.hpp"
#include "unilat/bv.hpp"
#include "unilat/classify.hpp"
#include "unilat/io.hpp"
#include "unilat/residue.hpp"
#include "unilat/rootsys.hpp"

struct unilat_lattice {
  unilat::Lattice l;
};

struct unilat_list {
  unilat::ListFile f;
};

namespace {

using json = nlohmann::ordered_json;
using namespace unilat;

thread_local std::string g_last_error;

int status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidInput:
      return UNILAT_INVALID_INPUT;
    case ErrorKind::kResourceCap:
    case ErrorKind::kBudget:
      return UNILAT_RESOURCE_CAP;
    case ErrorKind::kAuditMismatch:
      return UNILAT_AUDIT_MISMATCH;
    case ErrorKind::kInternal:
      break;
  }
  return UNILAT_INTERNAL;
}

template <typename F>
int guard(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return UNILAT_RESOURCE_CAP;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UNILAT_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(const json& j, char** out) {
  if (out) *out = dup(j.dump(2));
}

SearchOptions search_opts(const unilat_options* o) {
  SearchOptions s;
  if (o) {
    s.node_budget = o->node_budget;
    s.vector_cap = static_cast<std::size_t>(o->vector_cap);
  }
  return s;
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols; ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json lattice_json(const Lattice& l) {
  json j;
  j["rank"] = l.rank();
  j["det"] = determinant(l).get_str();
  j["even"] = l.is_even();
  j["root_system"] = root_data(l).system.str();
  j["gram"] = gram_lower_string(l.gram());
  return j;
}

json dual_json(const DualVector& v) {
  json j;
  j["coords"] = v.coords;
  j["denom"] = v.denom;
  return j;
}

std::string rat(const Rational& r) { return to_string(r); }

Vec vec_from(const int64_t* p, int n) { return Vec(p, p + n); }

// Source records need generators, which lists do not store.
std::vector<ClassRecord> rebuild(const ListFile& f, const SearchOptions& opt) {
  InvariantSpec spec{f.invariants, f.p};
  std::vector<ClassRecord> out;
  for (const auto& r : f.records) out.push_back(make_record(r.lattice, r.provenance, spec, opt));
  return out;
}

ListFile make_list(int rank, const std::string& genus, int p, std::vector<ClassRecord> recs) {
  ListFile f;
  f.rank = rank;
  f.genus = genus;
  f.p = p;
  if (!recs.empty()) {
    f.invariants.clear();
    for (const auto& [name, v] : recs.front().invariants) f.invariants.push_back(name);
  }
  f.records = std::move(recs);
  return f;
}

json audit_json(const AuditReport& a) {
  json j;
  j["count"] = a.count;
  j["mass"] = rat(a.mass);
  j["count_ok"] = a.count_ok;
  j["mass_ok"] = a.mass_ok;
  j["distinct_ok"] = a.distinct_ok;
  json by = json::object();
  for (const auto& [rs, m] : a.reduced_mass_by_root_system) by[rs] = rat(m);
  j["reduced_mass_by_root_system"] = by;
  return j;
}

}  // namespace

extern "C" {

void unilat_options_default(unilat_options* opt) {
  SearchOptions s;
  BVParams b;
  opt->node_budget = s.node_budget;
  opt->vector_cap = s.vector_cap;
  opt->vertex_cap = b.vertex_cap;
  opt->seed = 0;
  opt->threads = 1;
}

const char* unilat_version(void) { return kToolVersion; }

const char* unilat_last_error(void) { return g_last_error.c_str(); }

void unilat_string_free(char* s) { std::free(s); }

int unilat_lattice_parse(const char* spec, unilat_lattice** out) {
  return guard([&] {
    *out = new unilat_lattice{parse_lattice_arg(spec)};
    return UNILAT_OK;
  });
}

int unilat_lattice_from_lower(int rank, const int64_t* lower, unilat_lattice** out) {
  return guard([&] {
    std::vector<Int> v(lower, lower + static_cast<std::size_t>(rank) * (rank + 1) / 2);
    *out = new unilat_lattice{Lattice::from_lower_triangle(rank, v)};
    return UNILAT_OK;
  });
}

void unilat_lattice_free(unilat_lattice* l) { delete l; }

int unilat_lattice_rank(const unilat_lattice* l) { return l->l.rank(); }

void unilat_lattice_lower(const unilat_lattice* l, int64_t* lower) {
  const Mat& g = l->l.gram();
  for (int i = 0, k = 0; i < g.rows; ++i)
    for (int j = 0; j <= i; ++j) lower[k++] = g(i, j);
}

int unilat_list_read(const char* path, unilat_list** out) {
  return guard([&] {
    *out = new unilat_list{read_list(path)};
    return UNILAT_OK;
  });
}

int unilat_list_parse(const char* text, unilat_list** out) {
  return guard([&] {
    *out = new unilat_list{parse_list(text)};
    return UNILAT_OK;
  });
}

int unilat_list_write(const unilat_list* list, const char* path) {
  return guard([&] {
    write_list(list->f, path);
    return UNILAT_OK;
  });
}

int unilat_list_serialize(const unilat_list* list, char** out) {
  return guard([&] {
    *out = dup(serialize_list(list->f));
    return UNILAT_OK;
  });
}

void unilat_list_free(unilat_list* list) { delete list; }

size_t unilat_list_size(const unilat_list* list) { return list->f.records.size(); }

int unilat_list_get(const unilat_list* list, size_t index, unilat_lattice** out) {
  return guard([&] {
    if (index >= list->f.records.size())
      fail(ErrorKind::kInvalidInput, "index " + std::to_string(index) + " out of range (list has " +
                                         std::to_string(list->f.records.size()) + " records)");
    *out = new unilat_lattice{list->f.records[index].lattice};
    return UNILAT_OK;
  });
}

int unilat_list_merge(unilat_list* into, const unilat_list* from) {
  return guard([&] {
    if (into->f.rank != from->f.rank || into->f.invariants != from->f.invariants)
      fail(ErrorKind::kInvalidInput, "lists differ in rank or invariants");
    for (const auto& r : from->f.records) into->f.records.push_back(r);
    return UNILAT_OK;
  });
}

int unilat_write_file_atomic(const char* path, const char* data, size_t size) {
  return guard([&] {
    write_file_atomic(path, std::string(data, size));
    return UNILAT_OK;
  });
}

void unilat_digest_hex(const char* data, size_t size, char out[17]) {
  std::string h = digest_hex(std::string(data, size));
  std::memcpy(out, h.c_str(), 17);
}

int unilat_shortvec(const unilat_lattice* l, int64_t bound, int list_vectors,
                    const unilat_options* opt, char** out) {
  return guard([&] {
    EnumOptions eo;
    if (opt) eo.cap = static_cast<std::size_t>(opt->vector_cap);
    ShortVectorReport rep = short_vectors(l->l, static_cast<Int>(bound), eo);
    json j;
    j["bound"] = bound;
    j["pairs"] = rep.vectors.size();
    j["counts"] = rep.counts;
    if (list_vectors) {
      json vs = json::array();
      for (std::size_t i = 0; i < rep.vectors.size(); ++i)
        vs.push_back({{"norm", rep.vectors.norms[i]}, {"v", rep.vectors.vec(i)}});
      j["vectors"] = vs;
    }
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_aut(const unilat_lattice* l, const unilat_options* opt, char** out) {
  return guard([&] {
    SearchOptions so = search_opts(opt);
    ReducedGroup g = reduced_group(l->l, so);
    json j;
    j["root_system"] = root_data(l->l).system.str();
    j["order"] = BigInt(g.weyl_order * g.order).get_str();
    j["weyl_order"] = g.weyl_order.get_str();
    j["reduced_order"] = g.order.get_str();
    json gens = json::array();
    for (const auto& a : g.simple_roots) gens.push_back(mat_json(reflection_matrix(l->l, a)));
    for (const auto& m : g.generators) gens.push_back(mat_json(m));
    j["generators"] = gens;
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_iso(const unilat_lattice* a, const unilat_lattice* b, const unilat_options* opt,
               char** out) {
  return guard([&] {
    auto m = isometry(a->l, b->l, search_opts(opt));
    json j;
    j["isometric"] = m.has_value();
    if (m) j["matrix"] = mat_json(*m);
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_bv(const unilat_lattice* l, int depth, const char* variant, const int64_t* marking,
              int marking_count, const unilat_options* opt, char** out) {
  return guard([&] {
    BVParams p;
    p.depth = depth;
    p.variant = parse_variant(variant ? variant : "parity");
    if (opt) p.vertex_cap = static_cast<std::size_t>(opt->vertex_cap);
    const int n = l->l.rank();
    for (int k = 0; k < marking_count; ++k) p.marking.push_back(vec_from(marking + k * n, n));
    BVHash h = bv(l->l, p);
    json j;
    j["hash"] = hash_hex(h.value);
    j["vertices"] = h.vertex_count;
    j["depth"] = depth;
    j["variant"] = variant_name(p.variant);
    j["hash_version"] = kBVHashVersion;
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_residue(const unilat_lattice* l, char** out) {
  return guard([&] {
    FiniteQuadraticModule r(l->l);
    json j;
    j["order"] = r.order();
    j["divisors"] = r.divisors();
    json gens = json::array();
    for (const auto& g : r.generators()) gens.push_back(dual_json(g));
    j["generators"] = gens;
    json bil = json::array();
    const int k = static_cast<int>(r.divisors().size());
    for (int a = 0; a < k; ++a) {
      json row = json::array();
      for (int b = 0; b < k; ++b) row.push_back(rat(r.generator_bilinear(a, b)));
      bil.push_back(row);
    }
    j["bilinear"] = bil;
    if (r.has_quadratic()) {
      json q = json::array();
      for (int a = 0; a < k; ++a) {
        auto e = r.zero();
        e[a] = 1;
        q.push_back(rat(r.quadratic(e)));
      }
      j["quadratic"] = q;
    }
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_glue(const unilat_lattice* a, const unilat_lattice* b, unilat_lattice** lat,
                char** out) {
  return guard([&] {
    GlueResult g = glue_companion(a->l, b->l);
    json j = lattice_json(g.lattice);
    j["glue_order"] = g.h_order;
    j["a_images"] = mat_json(g.a_images);
    j["b_images"] = mat_json(g.b_images);
    if (lat) *lat = new unilat_lattice{g.lattice};
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_neighbor(const unilat_lattice* l, int64_t d, const int64_t* x, int attempts,
                    const unilat_options* opt, char** out) {
  return guard([&] {
    json j;
    j["d"] = d;
    json res = json::array();
    if (x) {
      Vec xv = vec_from(x, l->l.rank());
      j["x"] = xv;
      res.push_back(lattice_json(kneser_neighbor(l->l, d, xv)));
    } else {
      NeighborSearchOptions no;
      no.d = d;
      no.attempts = static_cast<std::size_t>(attempts);
      if (opt) no.seed = opt->seed;
      for (const auto& n : neighbor_search(l->l, no)) res.push_back(lattice_json(n));
    }
    j["neighbors"] = res;
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_extend(const unilat_lattice* l, const unilat_options* opt, char** out) {
  return guard([&] {
    SearchOptions so = search_opts(opt);
    ClassRecord r = make_record(l->l, "input", InvariantSpec{{}, 0}, so);
    ExtendResult er = extend_orthogonal_roots(r, so);
    json j;
    j["orbits"] = er.orbits;
    j["admissible"] = er.admissible;
    json cs = json::array();
    for (const auto& c : er.candidates) {
      json cj = lattice_json(c.lattice);
      cj["mod2_class"] = c.mod2_class;
      cj["orbit_size"] = c.orbit_size;
      if (c.check_mass) cj["predicted_aut_order"] = c.predicted_order.get_str();
      cs.push_back(cj);
    }
    j["candidates"] = cs;
    emit(j, out);
    return UNILAT_OK;
  });
}

int unilat_orbitmethod(const unilat_list* sources, int64_t norm, const char* kind,
                       int target_rank, int64_t target_det, int target_even, int two_stage,
                       const unilat_options* opt, unilat_list** lst, char** out) {
  return guard([&] {
    SearchOptions so = search_opts(opt);
    std::vector<ClassRecord> src = rebuild(sources->f, so);
    TypeTag t{static_cast<Int>(norm), parse_kind(kind ? kind : "plain")};
    GenusTarget target{target_rank, static_cast<Int>(target_det), target_even != 0};
    InvariantSpec spec;
    if (target_det == 3 || target_det == 5 || target_det == 7)
      spec = InvariantSpec{{"bvnp1"}, static_cast<int>(target_det)};
    OrbitMethodResult r = orbit_method(src, t, target, spec, two_stage != 0, so);
    sort_canonical(r.classes);
    json j;
    j["orbits"] = r.orbits;
    j["classes"] = r.classes.size();
    j["source_side"] = rat(r.source_side);
    j["target_side"] = rat(r.target_side);
    j["conserved"] = r.conserved();
    std::string genus = "rank" + std::to_string(target_rank) + "-det" + std::to_string(target_det) +
                        (target_even ? "-even" : "-odd");
    if (lst) *lst = new unilat_list{make_list(target_rank, genus, spec.p, std::move(r.classes))};
    emit(j, out);
    return r.conserved() ? UNILAT_OK : UNILAT_AUDIT_MISMATCH;
  });
}

int unilat_exc(const unilat_lattice* l, char** out) {
  return guard([&] {
    ExcReport r = exceptional_report(l->l);
    json j;
    j["exc_count"] = r.exc_count;
    j["orbits"] = r.orbits;
    j["applicable"] = r.applicable;
    j["single_orbit"] = r.ok;
    emit(j, out);
    return r.ok ? UNILAT_OK : UNILAT_AUDIT_MISMATCH;
  });
}

int unilat_triplicate(const unilat_lattice* l, const int64_t* root, const unilat_options* opt,
                      char** out) {
  return guard([&] {
    SearchOptions so = search_opts(opt);
    std::vector<Vec> roots;
    if (root) {
      roots.push_back(vec_from(root, l->l.rank()));
    } else {
      roots = root_orbit_representatives(make_record(l->l, "input", InvariantSpec{{}, 0}, so));
    }
    json j;
    json runs = json::array();
    bool ok = true;
    for (const auto& a : roots) {
      TriplicateResult t = triplicate(l->l, a, so);
      json rj;
      rj["root"] = a;
      json ls = json::array();
      for (const auto& x : t.lattices) ls.push_back(lattice_json(x));
      rj["lattices"] = ls;
      rj["pairwise_neighbors"] = t.pairwise_neighbors;
      rj["source_index"] = t.source_index;
      ok = ok && t.pairwise_neighbors && t.source_index >= 0;
      runs.push_back(rj);
    }
    j["runs"] = runs;
    j["ok"] = ok;
    emit(j, out);
    return ok ? UNILAT_OK : UNILAT_AUDIT_MISMATCH;
  });
}

int unilat_audit(const unilat_list* list, long expected_count, const char* expected_mass,
                 char** out) {
  return guard([&] {
    Rational m;
    if (expected_mass) m = parse_rational(expected_mass);
    AuditReport a = genus_audit(list->f.records, expected_count, expected_mass ? &m : nullptr);
    json j = audit_json(a);
    j["genus"] = list->f.genus;
    emit(j, out);
    return a.ok() ? UNILAT_OK : UNILAT_AUDIT_MISMATCH;
  });
}

int unilat_classify_unimodular(int max_rank, const unilat_options* opt, unilat_list** lists,
                               char** out) {
  return guard([&] {
    UnimodularStats st;
    auto x = classify_unimodular(max_rank, &st, search_opts(opt));
    json j;
    json counts = json::array();
    bool distinct = true;
    for (int n = 1; n <= max_rank; ++n) {
      counts.push_back(x[n].size());
      distinct = distinct && genus_audit(x[n]).distinct_ok;
    }
    j["max_rank"] = max_rank;
    j["counts"] = counts;
    j["candidates"] = st.candidates;
    j["mass_checks"] = st.mass_checks;
    j["mass_mismatches"] = st.mass_mismatches;
    j["unresolved"] = st.unresolved;
    j["distinct_hashes"] = distinct;
    if (lists)
      for (int n = 1; n <= max_rank; ++n)
        lists[n - 1] = new unilat_list{make_list(n, "X" + std::to_string(n), 0, std::move(x[n]))};
    emit(j, out);
    if (st.unresolved) {
      g_last_error = "isometry search budget exhausted on " + std::to_string(st.unresolved) + " candidates";
      return UNILAT_RESOURCE_CAP;
    }
    return st.mass_mismatches == 0 && distinct ? UNILAT_OK : UNILAT_AUDIT_MISMATCH;
  });
}

int unilat_classify_genus(int n, int p, const unilat_options* opt, unilat_list** lst,
                          char** out) {
  return guard([&] {
    GenusCache cache;
    const GenusRun& run = classify_genus(n, p, cache, search_opts(opt));
    std::vector<ClassRecord> recs = run.classes;
    AuditReport a = genus_audit(recs);
    json j;
    j["n"] = n;
    j["p"] = p;
    j["count"] = recs.size();
    j["mass"] = rat(a.mass);
    j["method"] = run.method;
    j["conserved"] = run.conserved;
    j["distinct_hashes"] = a.distinct_ok;
    j["log"] = run.log;
    if (lst)
      *lst = new unilat_list{make_list(n, "G(" + std::to_string(n) + "," + std::to_string(p) + ")",
                                       p, std::move(recs))};
    emit(j, out);
    return run.conserved && a.distinct_ok ? UNILAT_OK : UNILAT_AUDIT_MISMATCH;
  });
}

}  // extern "C"
