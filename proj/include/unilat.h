/* Copyright 2026 The unilat Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef UNILAT_H_
#define UNILAT_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The first four double as CLI exit codes. */
typedef enum {
  UNILAT_OK = 0,
  UNILAT_AUDIT_MISMATCH = 1,
  UNILAT_RESOURCE_CAP = 2,
  UNILAT_INVALID_INPUT = 3,
  UNILAT_INTERNAL = 4
} unilat_status;

typedef struct unilat_lattice unilat_lattice;
typedef struct unilat_list unilat_list;

typedef struct {
  uint64_t node_budget;   /* backtrack nodes per isometry search */
  uint64_t vector_cap;    /* short vectors per enumeration */
  uint64_t vertex_cap;    /* BV graph vertices */
  uint64_t seed;
  int threads;
} unilat_options;

void unilat_options_default(unilat_options* opt);

const char* unilat_version(void);
/* Message for the last failing call on this thread. */
const char* unilat_last_error(void);
/* Frees strings returned through char** out parameters. */
void unilat_string_free(char* s);

/* Lattices. `spec` is a name ("E8", "I1+E8", "2A1+<3>") or a Gram lower triangle. */
int unilat_lattice_parse(const char* spec, unilat_lattice** out);
int unilat_lattice_from_lower(int rank, const int64_t* lower, unilat_lattice** out);
void unilat_lattice_free(unilat_lattice* l);
int unilat_lattice_rank(const unilat_lattice* l);
/* Writes rank*(rank+1)/2 entries. */
void unilat_lattice_lower(const unilat_lattice* l, int64_t* lower);

/* List files. */
int unilat_list_read(const char* path, unilat_list** out);
int unilat_list_parse(const char* text, unilat_list** out);
int unilat_list_write(const unilat_list* list, const char* path);
int unilat_list_serialize(const unilat_list* list, char** out);
void unilat_list_free(unilat_list* list);
size_t unilat_list_size(const unilat_list* list);
int unilat_list_get(const unilat_list* list, size_t index, unilat_lattice** out);
/* Concatenates records; headers must agree in rank and invariants. */
int unilat_list_merge(unilat_list* into, const unilat_list* from);

/* Utilities. */
int unilat_write_file_atomic(const char* path, const char* data, size_t size);
/* 16 hex digits plus terminator. */
void unilat_digest_hex(const char* data, size_t size, char out[17]);

/* Commands. Results are JSON objects. */
int unilat_shortvec(const unilat_lattice* l, int64_t bound, int list_vectors,
                    const unilat_options* opt, char** json);
int unilat_aut(const unilat_lattice* l, const unilat_options* opt, char** json);
int unilat_iso(const unilat_lattice* a, const unilat_lattice* b, const unilat_options* opt,
               char** json);
/* marking: count vectors of length rank, row-major. variant: parity, absolute, signed. */
int unilat_bv(const unilat_lattice* l, int depth, const char* variant, const int64_t* marking,
              int marking_count, const unilat_options* opt, char** json);
int unilat_residue(const unilat_lattice* l, char** json);
/* Glues `a` onto `b` along an anti-isometry of residues. */
int unilat_glue(const unilat_lattice* a, const unilat_lattice* b, unilat_lattice** out,
                char** json);
/* x null: random search with `attempts` trials. */
int unilat_neighbor(const unilat_lattice* l, int64_t d, const int64_t* x, int attempts,
                    const unilat_options* opt, char** json);
int unilat_extend(const unilat_lattice* l, const unilat_options* opt, char** json);
/* kind: plain, char, sp. */
int unilat_orbitmethod(const unilat_list* sources, int64_t norm, const char* kind,
                       int target_rank, int64_t target_det, int target_even, int two_stage,
                       const unilat_options* opt, unilat_list** out, char** json);
int unilat_exc(const unilat_lattice* l, char** json);
/* root null: one root from each orbit of roots. */
int unilat_triplicate(const unilat_lattice* l, const int64_t* root, const unilat_options* opt,
                      char** json);
/* expected_count < 0 and expected_mass null skip those checks. */
int unilat_audit(const unilat_list* list, long expected_count, const char* expected_mass,
                 char** json);
/* out receives max_rank lists, for ranks 1..max_rank. */
int unilat_classify_unimodular(int max_rank, const unilat_options* opt, unilat_list** out,
                               char** json);
int unilat_classify_genus(int n, int p, const unilat_options* opt, unilat_list** out,
                          char** json);

#ifdef __cplusplus
}
#endif

#endif /* UNILAT_H_ */
