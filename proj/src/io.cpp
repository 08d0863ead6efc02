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

#include "unilat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unilat/bv.hpp"
#include "unilat/rootsys.hpp"
#include "unilat/vechash.hpp"

namespace unilat {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void bad_line(int line, const std::string& msg) {
  fail(ErrorKind::kInvalidInput, "line " + std::to_string(line) + ": " + msg);
}

Int parse_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    fail(ErrorKind::kInvalidInput, "not an integer: '" + s + "'");
  }
  if (pos != s.size()) fail(ErrorKind::kInvalidInput, "not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::string gram_lower_string(const Mat& g) {
  std::string out;
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j <= i; ++j) {
      if (!out.empty()) out.push_back(' ');
      out += std::to_string(g(i, j));
    }
  return out;
}

Lattice parse_gram_lower(const std::string& s) {
  std::vector<Int> vals;
  for (const auto& w : words(s)) vals.push_back(parse_int(w));
  const double r = (std::sqrt(8.0 * static_cast<double>(vals.size()) + 1) - 1) / 2;
  const int n = static_cast<int>(std::lround(r));
  if (static_cast<std::size_t>(n) * (n + 1) / 2 != vals.size())
    fail(ErrorKind::kInvalidInput, "Gram lower triangle has " + std::to_string(vals.size()) +
                                       " entries, not a triangular number");
  return Lattice::from_lower_triangle(n, vals);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
    fail(ErrorKind::kInvalidInput, "rational must be written p/q: '" + s + "'");
  Rational r;
  BigInt num, den;
  if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0 ||
      den <= 0)
    fail(ErrorKind::kInvalidInput, "bad rational '" + s + "'");
  r = Rational(num, den);
  r.canonicalize();
  return r;
}

std::string serialize_list(const ListFile& f) {
  std::ostringstream out;
  out << "#unilat-list " << kListFormatVersion << "\n";
  out << "rank " << f.rank << "\n";
  out << "genus " << f.genus << "\n";
  out << "p " << f.p << "\n";
  out << "invariants";
  for (const auto& n : f.invariants) out << " " << n;
  out << "\n";
  out << "bv-hash-version " << kBVHashVersion << "\n";
  out << "records " << f.records.size() << "\n";
  for (const auto& r : f.records) {
    out << r.root_system << "\t" << to_string(r.mass()) << "\t" << to_string(r.reduced_mass()) << "\t";
    bool first = true;
    for (const auto& n : f.invariants) {
      auto it = r.invariants.find(n);
      if (it == r.invariants.end()) fail(ErrorKind::kInvalidInput, "record lacks invariant " + n);
      if (!first) out << " ";
      out << hash_hex(it->second);
      first = false;
    }
    out << "\t" << gram_lower_string(r.lattice.gram()) << "\t" << r.provenance << "\n";
  }
  return out.str();
}

ListFile parse_list(const std::string& text) {
  ListFile f;
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::size_t li = 0;
  auto header = [&](const std::string& key) {
    if (li >= lines.size()) bad_line(static_cast<int>(li + 1), "missing header '" + key + "'");
    auto w = words(lines[li]);
    if (w.empty() || w[0] != key) bad_line(static_cast<int>(li + 1), "expected header '" + key + "'");
    ++li;
    return std::vector<std::string>(w.begin() + 1, w.end());
  };
  auto v = header("#unilat-list");
  if (v.size() != 1 || parse_int(v[0]) != kListFormatVersion)
    bad_line(1, "unsupported list format version");
  v = header("rank");
  if (v.size() != 1) bad_line(2, "rank takes one value");
  f.rank = static_cast<int>(parse_int(v[0]));
  v = header("genus");
  if (v.size() != 1) bad_line(3, "genus takes one value");
  f.genus = v[0];
  v = header("p");
  if (v.size() != 1) bad_line(4, "p takes one value");
  f.p = static_cast<int>(parse_int(v[0]));
  v = header("invariants");
  f.invariants = v;
  for (const auto& n : f.invariants)
    if (!is_known_invariant(n)) bad_line(5, "unknown invariant name '" + n + "'");
  v = header("bv-hash-version");
  if (v.size() != 1 || parse_int(v[0]) != kBVHashVersion) bad_line(6, "BV hash version mismatch");
  v = header("records");
  if (v.size() != 1) bad_line(7, "records takes one value");
  const Int count = parse_int(v[0]);
  if (static_cast<Int>(lines.size() - li) != count)
    bad_line(7, "header announces " + std::to_string(count) + " records, file has " +
                    std::to_string(lines.size() - li));
  for (; li < lines.size(); ++li) {
    const int ln = static_cast<int>(li + 1);
    auto cols = split(lines[li], '\t');
    if (cols.size() != 6) bad_line(ln, "expected 6 tab-separated fields");
    ClassRecord r;
    try {
      r.lattice = parse_gram_lower(cols[4]);
      r.root_system = cols[0];
      RootSystem rs = RootSystem::parse(cols[0]);
      if (rs.str() != cols[0]) bad_line(ln, "root system not in canonical form");
      Rational mass = parse_rational(cols[1]);
      if (mass.get_num() != 1) bad_line(ln, "mass must be 1/|O(L)|");
      r.aut_order = mass.get_den();
      r.weyl_order = rs.weyl_order();
      if (parse_rational(cols[2]) != r.reduced_mass()) bad_line(ln, "reduced mass disagrees with mass");
      auto hs = words(cols[3]);
      if (hs.size() != f.invariants.size()) bad_line(ln, "wrong number of hashes");
      for (std::size_t k = 0; k < hs.size(); ++k) r.invariants[f.invariants[k]] = parse_hash_hex(hs[k]);
      r.provenance = cols[5];
    } catch (const Error& e) {
      if (std::string(e.what()).rfind("line ", 0) == 0) throw;
      bad_line(ln, e.what());
    }
    if (r.lattice.rank() != f.rank) bad_line(ln, "Gram rank differs from header rank");
    f.records.push_back(std::move(r));
  }
  return f;
}

ListFile read_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_list(ss.str());
}

void write_file_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::kInvalidInput, "cannot write " + tmp);
    out << data;
    if (!out) fail(ErrorKind::kInvalidInput, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrorKind::kInvalidInput, "cannot rename " + tmp + " to " + path);
}

void write_list(const ListFile& f, const std::string& path) { write_file_atomic(path, serialize_list(f)); }

Lattice parse_lattice_arg(const std::string& s) {
  if (s.find_first_not_of("0123456789- ") == std::string::npos) return parse_gram_lower(s);
  return parse_standard(s);
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) h = mix64(h ^ c);
  return hash_hex(mix64(h ^ bytes.size()));
}

}  // namespace unilat
