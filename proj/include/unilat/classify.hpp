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

#ifndef UNILAT_CLASSIFY_HPP_
#define UNILAT_CLASSIFY_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "unilat/isometry.hpp"
#include "unilat/lattice.hpp"

namespace unilat {

// Invariants attached to records: "bv3" (depth 3 of the lattice itself) and
// "bvnp1" .. "bvnp3" (marked depth 3 of the glued companion overlattice; need p).
struct InvariantSpec {
  std::vector<std::string> names{"bv3"};
  int p = 0;
};
std::uint64_t compute_invariant(const Lattice& l, const std::string& name, int p);
bool is_known_invariant(const std::string& name);

struct ClassRecord {
  Lattice lattice;
  std::string root_system;
  BigInt aut_order = 1;
  BigInt weyl_order = 1;
  std::map<std::string, std::uint64_t> invariants;
  std::string provenance;
  std::vector<Mat> aut_generators;  // not serialized

  Rational mass() const { return Rational(1) / Rational(aut_order); }
  Rational reduced_mass() const { return Rational(weyl_order) / Rational(aut_order); }
};

// Record with a good basis, root system, group and invariants.
ClassRecord make_record(const Lattice& l, const std::string& provenance,
                        const InvariantSpec& spec, const SearchOptions& opt = {});

struct DedupStats {
  std::size_t candidates = 0;
  std::size_t duplicates = 0;
  std::size_t isometry_tests = 0;
  std::size_t unresolved = 0;
};

// Classes keyed by (root system, first invariant); merges confirmed by isometry.
class ClassTable {
 public:
  explicit ClassTable(InvariantSpec spec, SearchOptions opt = {});

  // True if l is new. *index receives the class index (or -1 if unresolved).
  bool insert(const Lattice& l, const std::string& provenance, long* index = nullptr);
  void add_record(ClassRecord r);

  const std::vector<ClassRecord>& classes() const { return classes_; }
  std::vector<ClassRecord> take() { return std::move(classes_); }
  const DedupStats& stats() const { return stats_; }
  const std::vector<Lattice>& unresolved() const { return unresolved_; }

  // Replaces the hash part of the key (for collision tests).
  std::function<std::uint64_t(const Lattice&)> key_override;

 private:
  using Key = std::pair<std::string, std::uint64_t>;
  Key key_of(const Lattice& l, std::uint64_t* inv) const;

  InvariantSpec spec_;
  SearchOptions opt_;
  std::vector<ClassRecord> classes_;
  std::map<Key, std::vector<std::size_t>> buckets_;
  std::vector<Lattice> unresolved_;
  DedupStats stats_;
};

// Sort by (root system, first invariant).
void sort_canonical(std::vector<ClassRecord>& v);

// ---- Orthogonal-root recursion on unimodular lattices.

struct ExtendCandidate {
  Lattice lattice;
  std::uint64_t mod2_class = 0;  // e as a bit vector
  std::uint64_t orbit_size = 0;  // n(e)
  bool check_mass = false;       // at least two components of multiplicity one
  BigInt predicted_order = 0;    // |R_a||R_b| |O(L)| / n(e) when check_mass
};
struct ExtendResult {
  std::vector<ExtendCandidate> candidates;
  std::size_t orbits = 0;
  std::size_t admissible = 0;
};
// Rank n+2 candidates U(L,e) with no norm 1 vector and a relevant root pair.
ExtendResult extend_orthogonal_roots(const ClassRecord& l, const SearchOptions& opt = {});

struct UnimodularStats {
  std::size_t candidates = 0;
  std::size_t mass_checks = 0;
  std::size_t mass_mismatches = 0;
  std::size_t unresolved = 0;
};
// X_1 .. X_max_rank; result[n] holds the rank n classes (result[0] empty).
std::vector<std::vector<ClassRecord>> classify_unimodular(
    int max_rank, UnimodularStats* stats = nullptr, const SearchOptions& opt = {},
    const std::function<void(int, const std::vector<ClassRecord>&)>& progress = {});

// ---- Neighbors.

// {v in L : v.x = 0 mod d} + Z x/d after adjusting x by dL if needed.
Lattice kneser_neighbor(const Lattice& l, Int d, const Vec& x);

struct NeighborSearchOptions {
  Int d = 3;
  std::size_t attempts = 100;
  std::uint64_t seed = 1;
  Int coord_range = 4;
  std::string root_system;  // keep only this root system if nonempty
  bool require_no_norm1 = false;
};
std::vector<Lattice> neighbor_search(const Lattice& l, const NeighborSearchOptions& opt);

// ---- Exceptional vectors.

struct ExcReport {
  std::size_t exc_count = 0;
  std::size_t orbits = 0;  // under W(L) and -1
  bool applicable = false;  // rank not 6,7 mod 8, no norm 1 vector, Exc nonempty
  bool ok = true;          // applicable implies a single orbit
};
ExcReport exceptional_report(const Lattice& l);

// ---- Triplication.

struct TriplicateResult {
  std::vector<Lattice> lattices;  // L_w for the three w
  std::vector<Vec> roots;         // alpha in each L_w
  bool pairwise_neighbors = false;
  int source_index = -1;  // which L_w is isometric to the source
};
TriplicateResult triplicate(const Lattice& l, const Vec& root, const SearchOptions& opt = {});
// One root per O(L)-orbit of roots; uses the record's generators.
std::vector<Vec> root_orbit_representatives(const ClassRecord& r);

// ---- Mass audit.

struct AuditReport {
  std::size_t count = 0;
  Rational mass = 0;
  bool count_ok = true;
  bool mass_ok = true;
  bool distinct_ok = true;
  std::map<std::string, Rational> reduced_mass_by_root_system;
  bool ok() const { return count_ok && mass_ok && distinct_ok; }
};
AuditReport genus_audit(const std::vector<ClassRecord>& classes, long expected_count = -1,
                        const Rational* expected_mass = nullptr);

// ---- Orbit method between genera.

enum class VectorKind { kPlain, kChar, kSpecial };
struct TypeTag {
  Int norm = 2;
  VectorKind kind = VectorKind::kPlain;
};
const char* kind_name(VectorKind k);
VectorKind parse_kind(const std::string& s);

struct GenusTarget {
  int rank = 0;
  Int det = 1;
  bool even = true;
};

struct OrbitMethodResult {
  std::vector<ClassRecord> classes;
  Rational source_side = 0;  // sum over sources of #S / |O(L)|
  Rational target_side = 0;  // sum over outputs of e / |O(N)|
  std::size_t orbits = 0;
  bool conserved() const { return source_side == target_side; }
};
// Orthogonal complements of typed vectors. Two-stage mode first splits the
// vectors by their class in L/2L (norm must be 2 mod 4).
OrbitMethodResult orbit_method(const std::vector<ClassRecord>& sources, const TypeTag& t,
                               const GenusTarget& target, const InvariantSpec& spec,
                               bool two_stage = false, const SearchOptions& opt = {});

// Even overlattices of L + A1 glued along the 2-part; mass conservation uses
// root counts.
OrbitMethodResult glue_up(const std::vector<ClassRecord>& sources, const GenusTarget& target,
                          const InvariantSpec& spec, const SearchOptions& opt = {});

// Even lattices of rank n and determinant p (n even) or 2p (n odd).
bool genus_nonempty(int n, int p);

struct GenusRun {
  std::vector<ClassRecord> classes;
  std::string method;
  bool conserved = true;
  std::vector<std::string> log;
};
// Chains of orbit-method steps from unimodular lists; memoized across calls
// through `cache`.
struct GenusCache {
  std::vector<std::vector<ClassRecord>> unimodular;  // by rank
  std::map<std::pair<int, int>, GenusRun> genera;
};
const GenusRun& classify_genus(int n, int p, GenusCache& cache, const SearchOptions& opt = {});

}  // namespace unilat

#endif  // UNILAT_CLASSIFY_HPP_
