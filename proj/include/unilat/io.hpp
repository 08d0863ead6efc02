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

#ifndef UNILAT_IO_HPP_
#define UNILAT_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "unilat/classify.hpp"

namespace unilat {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kListFormatVersion = 1;

// Header plus one record per line:
//   root system, mass, reduced mass, hashes, Gram lower triangle, provenance
// separated by tabs. Rationals are "p/q"; hashes are 16 hex digits.
struct ListFile {
  int rank = 0;
  std::string genus;  // e.g. "X8", "G(7,3)"
  int p = 0;
  std::vector<std::string> invariants{"bv3"};
  std::vector<ClassRecord> records;
};

std::string serialize_list(const ListFile& f);
// Diagnostics carry line numbers.
ListFile parse_list(const std::string& text);
ListFile read_list(const std::string& path);
// Write to a temporary file, then rename.
void write_file_atomic(const std::string& path, const std::string& data);
void write_list(const ListFile& f, const std::string& path);

std::string gram_lower_string(const Mat& g);
Lattice parse_gram_lower(const std::string& s);
Rational parse_rational(const std::string& s);

// Lattice from "E8", "A2+A2", "I1+E8" or a lower-triangle Gram "2 -1 2".
Lattice parse_lattice_arg(const std::string& s);

// 64-bit digest of bytes, as 16 hex digits.
std::string digest_hex(const std::string& bytes);

}  // namespace unilat

#endif  // UNILAT_IO_HPP_
