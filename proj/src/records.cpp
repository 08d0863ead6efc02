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
#include <set>

#include "unilat/bv.hpp"
#include "unilat/classify.hpp"
#include "unilat/rootsys.hpp"

namespace unilat {

bool is_known_invariant(const std::string& name) {
  return name == "bv3" || name == "bvnp1" || name == "bvnp2" || name == "bvnp3";
}

std::uint64_t compute_invariant(const Lattice& l, const std::string& name, int p) {
  if (name == "bv3") return bv(l).value;
  if (name.rfind("bvnp", 0) == 0 && name.size() == 5 && name[4] >= '1' && name[4] <= '3') {
    if (p == 0) fail(ErrorKind::kInvalidInput, "invariant " + name + " needs p");
    return bv_np(l, p, {name[4] - '0'})[0].value;
  }
  fail(ErrorKind::kInvalidInput, "unknown invariant name '" + name + "'");
}

ClassRecord make_record(const Lattice& l, const std::string& provenance,
                        const InvariantSpec& spec, const SearchOptions& opt) {
  ClassRecord r;
  r.lattice = good_lattice(l);
  r.provenance = provenance;
  ReducedGroup g = reduced_group(r.lattice, opt);
  RootData rd = root_data(r.lattice);
  r.root_system = rd.system.str();
  r.weyl_order = g.weyl_order;
  r.aut_order = g.weyl_order * g.order;
  for (const auto& a : g.simple_roots) r.aut_generators.push_back(reflection_matrix(r.lattice, a));
  for (auto& m : g.generators) r.aut_generators.push_back(std::move(m));
  for (const auto& name : spec.names) r.invariants[name] = compute_invariant(r.lattice, name, spec.p);
  return r;
}

ClassTable::ClassTable(InvariantSpec spec, SearchOptions opt)
    : spec_(std::move(spec)), opt_(opt) {}

ClassTable::Key ClassTable::key_of(const Lattice& l, std::uint64_t* inv) const {
  std::string rs = root_data(l).system.str();
  std::uint64_t h = 0;
  if (!spec_.names.empty()) h = compute_invariant(l, spec_.names.front(), spec_.p);
  if (inv) *inv = h;
  if (key_override) h = key_override(l);
  return {rs, h};
}

bool ClassTable::insert(const Lattice& l, const std::string& provenance, long* index) {
  ++stats_.candidates;
  Lattice g = good_lattice(l);
  Key key = key_of(g, nullptr);
  auto& bucket = buckets_[key];
  for (std::size_t id : bucket) {
    ++stats_.isometry_tests;
    try {
      if (is_isometric(classes_[id].lattice, g, opt_)) {
        ++stats_.duplicates;
        if (index) *index = static_cast<long>(id);
        return false;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kBudget) throw;
      ++stats_.unresolved;
      unresolved_.push_back(g);
      if (index) *index = -1;
      return false;
    }
  }
  ClassRecord r = make_record(g, provenance, spec_, opt_);
  bucket.push_back(classes_.size());
  if (index) *index = static_cast<long>(classes_.size());
  classes_.push_back(std::move(r));
  return true;
}

void ClassTable::add_record(ClassRecord r) {
  Key key = key_of(r.lattice, nullptr);
  buckets_[key].push_back(classes_.size());
  classes_.push_back(std::move(r));
}

void sort_canonical(std::vector<ClassRecord>& v) {
  auto first = [](const ClassRecord& r) {
    return r.invariants.empty() ? std::uint64_t{0} : r.invariants.begin()->second;
  };
  std::stable_sort(v.begin(), v.end(), [&](const ClassRecord& a, const ClassRecord& b) {
    RootSystem ra = RootSystem::parse(a.root_system), rb = RootSystem::parse(b.root_system);
    if (ra.rank() != rb.rank()) return ra.rank() > rb.rank();
    if (a.root_system != b.root_system) return a.root_system < b.root_system;
    return first(a) < first(b);
  });
}

AuditReport genus_audit(const std::vector<ClassRecord>& classes, long expected_count,
                        const Rational* expected_mass) {
  AuditReport rep;
  rep.count = classes.size();
  std::set<std::pair<std::string, std::map<std::string, std::uint64_t>>> seen;
  for (const auto& c : classes) {
    rep.mass += c.mass();
    rep.reduced_mass_by_root_system[c.root_system] += c.reduced_mass();
    if (!seen.insert({c.root_system, c.invariants}).second) rep.distinct_ok = false;
  }
  if (expected_count >= 0) rep.count_ok = static_cast<long>(rep.count) == expected_count;
  if (expected_mass) rep.mass_ok = rep.mass == *expected_mass;
  return rep;
}

}  // namespace unilat
