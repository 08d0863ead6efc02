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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "unilat.h"

namespace {

using json = nlohmann::ordered_json;

struct LatticeArg {
  std::string spec;
  std::string list;
  std::size_t index = 0;
};

struct Inputs {
  json entries = json::array();
};

struct Run {
  std::string command;
  std::vector<std::string> argv;
  unilat_options opt{};
  std::string manifest;
  Inputs inputs;
  json outputs = json::array();
  std::string error;
};

struct Failure {
  int status;
  std::string message;
};

[[noreturn]] void die(int status, const std::string& msg) { throw Failure{status, msg}; }

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(UNILAT_INVALID_INPUT, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(const std::string& bytes) {
  char h[17];
  unilat_digest_hex(bytes.data(), bytes.size(), h);
  return h;
}

void check(int status, const char* what) {
  if (status != UNILAT_OK && status != UNILAT_AUDIT_MISMATCH)
    die(status, std::string(what) + ": " + unilat_last_error());
}

using LatticePtr = std::unique_ptr<unilat_lattice, decltype(&unilat_lattice_free)>;
using ListPtr = std::unique_ptr<unilat_list, decltype(&unilat_list_free)>;

ListPtr load_list(Run& run, const std::string& path) {
  std::string bytes = read_bytes(path);
  run.inputs.entries.push_back({{"list", path}, {"digest", digest(bytes)}});
  unilat_list* l = nullptr;
  check(unilat_list_parse(bytes.c_str(), &l), path.c_str());
  return ListPtr(l, unilat_list_free);
}

LatticePtr load_lattice(Run& run, const LatticeArg& a, const char* role) {
  unilat_lattice* l = nullptr;
  if (!a.spec.empty() && !a.list.empty())
    die(UNILAT_INVALID_INPUT, std::string(role) + ": give a lattice spec or a list, not both");
  if (!a.list.empty()) {
    ListPtr list = load_list(run, a.list);
    run.inputs.entries.back()["index"] = a.index;
    check(unilat_list_get(list.get(), a.index, &l), role);
  } else {
    if (a.spec.empty()) die(UNILAT_INVALID_INPUT, std::string(role) + ": no lattice given");
    run.inputs.entries.push_back({{"lattice", a.spec}, {"digest", digest(a.spec)}});
    check(unilat_lattice_parse(a.spec.c_str(), &l), role);
  }
  return LatticePtr(l, unilat_lattice_free);
}

std::vector<int64_t> parse_coords(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  std::vector<int64_t> out;
  std::string w;
  while (in >> w) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(w, &pos));
      if (pos != w.size()) throw std::invalid_argument(w);
    } catch (const std::exception&) {
      die(UNILAT_INVALID_INPUT, "bad coordinate '" + w + "'");
    }
  }
  return out;
}

void add_lattice_options(CLI::App* c, LatticeArg& a, const std::string& suffix = "") {
  c->add_option("--lattice" + suffix, a.spec, "Name such as E8 or I1+E8, or a Gram lower triangle");
  c->add_option("--list" + suffix, a.list, "List file");
  c->add_option("--index" + suffix, a.index, "Record index in the list");
}

void write_output(Run& run, const std::string& path, const std::string& bytes) {
  check(unilat_write_file_atomic(path.c_str(), bytes.data(), bytes.size()), path.c_str());
  run.outputs.push_back({{"path", path}, {"digest", digest(bytes)}});
}

void write_list(Run& run, const unilat_list* l, const std::string& path) {
  char* s = nullptr;
  check(unilat_list_serialize(l, &s), "serialize");
  std::string bytes(s);
  unilat_string_free(s);
  write_output(run, path, bytes);
}

int finish(Run& run, int status, char* result) {
  json res = json::object();
  if (result) {
    std::cout << result << "\n";
    res = json::parse(result);
    unilat_string_free(result);
  }
  json m;
  m["tool"] = "unilat";
  m["version"] = unilat_version();
  m["command"] = run.command;
  m["argv"] = run.argv;
  m["seed"] = run.opt.seed;
  m["threads"] = run.opt.threads;
  m["caps"] = {{"node_budget", run.opt.node_budget},
               {"vector_cap", run.opt.vector_cap},
               {"vertex_cap", run.opt.vertex_cap}};
  m["inputs"] = run.inputs.entries;
  m["outputs"] = run.outputs;
  m["status"] = status;
  if (status != UNILAT_OK) m["error"] = run.error;
  m["result"] = res;
  std::string bytes = m.dump(2) + "\n";
  if (unilat_write_file_atomic(run.manifest.c_str(), bytes.data(), bytes.size()) != UNILAT_OK) {
    std::cerr << "unilat: manifest: " << unilat_last_error() << "\n";
    return UNILAT_INVALID_INPUT;
  }
  if (status == UNILAT_AUDIT_MISMATCH) std::cerr << "unilat: audit mismatch\n";
  else if (status != UNILAT_OK) std::cerr << "unilat: " << run.error << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  for (int i = 0; i < argc; ++i) run.argv.push_back(argv[i]);
  unilat_options_default(&run.opt);

  CLI::App app{"Classification tools for integral lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(unilat_version()));
  app.add_option("--seed", run.opt.seed, "Random seed");
  app.add_option("--threads", run.opt.threads, "Worker threads");
  app.add_option("--node-budget", run.opt.node_budget, "Backtrack nodes per isometry search");
  app.add_option("--vector-cap", run.opt.vector_cap, "Short vectors per enumeration");
  app.add_option("--vertex-cap", run.opt.vertex_cap, "Vertices per BV graph");
  app.add_option("--manifest", run.manifest, "Manifest path");

  LatticeArg la, lb;
  int64_t bound = 0;
  bool list_vectors = false;
  int depth = 3;
  std::string variant = "parity";
  std::vector<std::string> marks;
  int64_t d = 3;
  std::string xs, roots;
  int attempts = 100;
  int64_t norm = 2;
  std::string kind = "plain";
  int target_rank = 0;
  int64_t target_det = 1;
  bool target_odd = false, two_stage = false;
  std::string out, out_dir = ".";
  long expected_count = -1;
  std::string expected_mass;
  int max_rank = 0, gn = 0, gp = 0;

  auto* c_short = app.add_subcommand("shortvec", "Enumerate vectors up to a norm bound");
  add_lattice_options(c_short, la);
  c_short->add_option("--bound", bound, "Norm bound (default: largest Gram diagonal)");
  c_short->add_flag("--vectors", list_vectors, "List the vectors");

  auto* c_aut = app.add_subcommand("aut", "Automorphism group order and generators");
  add_lattice_options(c_aut, la);

  auto* c_iso = app.add_subcommand("iso", "Test two lattices for isometry");
  add_lattice_options(c_iso, la);
  add_lattice_options(c_iso, lb, "2");

  auto* c_bv = app.add_subcommand("bv", "BV invariant hash");
  add_lattice_options(c_bv, la);
  c_bv->add_option("--depth", depth, "Graph walk depth")->check(CLI::Range(1, 8));
  c_bv->add_option("--variant", variant, "parity, absolute or signed");
  c_bv->add_option("--mark", marks, "Marking vector, coordinates separated by commas");

  auto* c_res = app.add_subcommand("residue", "Residue group and its forms");
  add_lattice_options(c_res, la);

  auto* c_glue = app.add_subcommand("glue", "Glue two lattices along their residues");
  add_lattice_options(c_glue, la);
  add_lattice_options(c_glue, lb, "2");

  auto* c_nb = app.add_subcommand("neighbor", "Kneser neighbors");
  add_lattice_options(c_nb, la);
  c_nb->add_option("--d", d, "Neighbor index")->check(CLI::PositiveNumber);
  c_nb->add_option("--x", xs, "Line vector; random search when omitted");
  c_nb->add_option("--attempts", attempts, "Random trials");

  auto* c_ext = app.add_subcommand("extend", "Adjoin a pair of orthogonal roots");
  add_lattice_options(c_ext, la);

  auto* c_om = app.add_subcommand("orbitmethod", "Orthogonal complements of typed vector orbits");
  c_om->add_option("--list", la.list, "Source list")->required();
  c_om->add_option("--norm", norm, "Vector norm");
  c_om->add_option("--kind", kind, "plain, char or sp");
  c_om->add_option("--target-rank", target_rank, "Target rank")->required();
  c_om->add_option("--target-det", target_det, "Target determinant");
  c_om->add_flag("--target-odd", target_odd, "Target genus is odd");
  c_om->add_flag("--two-stage", two_stage, "Go through the mod 2 kernel");
  c_om->add_option("--out", out, "Output list file");

  auto* c_exc = app.add_subcommand("exc", "Exceptional vectors and their orbits");
  add_lattice_options(c_exc, la);

  auto* c_tri = app.add_subcommand("triplicate", "Triplication at a root");
  add_lattice_options(c_tri, la);
  c_tri->add_option("--root", roots, "Root; all root orbits when omitted");

  auto* c_audit = app.add_subcommand("audit", "Count, mass and hash audit of a list");
  c_audit->add_option("--list", la.list, "List file")->required();
  c_audit->add_option("--expected-count", expected_count, "Expected class count");
  c_audit->add_option("--expected-mass", expected_mass, "Expected mass p/q");

  auto* c_cu = app.add_subcommand("classify-unimodular", "Unimodular lattices up to a rank");
  c_cu->add_option("--max-rank", max_rank, "Largest rank")->required()->check(CLI::Range(1, 30));
  c_cu->add_option("--out-dir", out_dir, "Directory for X<n>.list files");

  auto* c_cg = app.add_subcommand("classify-genus", "Genus of rank n and prime determinant p");
  c_cg->add_option("n", gn, "Rank")->required()->check(CLI::Range(1, 30));
  c_cg->add_option("p", gp, "Determinant: 1, 3, 5 or 7")->required();
  c_cg->add_option("--out", out, "Output list file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return UNILAT_INVALID_INPUT;
  }

  CLI::App* sub = app.get_subcommands().front();
  run.command = sub->get_name();
  if (run.manifest.empty()) run.manifest = out.empty() ? "unilat-" + run.command + ".manifest.json"
                                                       : out + ".manifest.json";
  char* result = nullptr;
  int st = UNILAT_OK;
  const unilat_options* o = &run.opt;

  try {
    if (sub == c_short) {
      LatticePtr l = load_lattice(run, la, "lattice");
      if (bound == 0) {
        const int n = unilat_lattice_rank(l.get());
        std::vector<int64_t> g(static_cast<std::size_t>(n) * (n + 1) / 2);
        unilat_lattice_lower(l.get(), g.data());
        for (int i = 0; i < n; ++i) bound = std::max(bound, g[static_cast<std::size_t>(i) * (i + 3) / 2]);
      }
      st = unilat_shortvec(l.get(), bound, list_vectors, o, &result);
    } else if (sub == c_aut) {
      LatticePtr l = load_lattice(run, la, "lattice");
      st = unilat_aut(l.get(), o, &result);
    } else if (sub == c_iso) {
      LatticePtr a = load_lattice(run, la, "lattice");
      LatticePtr b = load_lattice(run, lb, "lattice2");
      st = unilat_iso(a.get(), b.get(), o, &result);
    } else if (sub == c_bv) {
      LatticePtr l = load_lattice(run, la, "lattice");
      const int n = unilat_lattice_rank(l.get());
      std::vector<int64_t> m;
      for (const auto& s : marks) {
        auto v = parse_coords(s);
        if (static_cast<int>(v.size()) != n)
          die(UNILAT_INVALID_INPUT, "marking vector '" + s + "' needs " + std::to_string(n) + " coordinates");
        m.insert(m.end(), v.begin(), v.end());
      }
      st = unilat_bv(l.get(), depth, variant.c_str(), m.data(), static_cast<int>(marks.size()), o, &result);
    } else if (sub == c_res) {
      LatticePtr l = load_lattice(run, la, "lattice");
      st = unilat_residue(l.get(), &result);
    } else if (sub == c_glue) {
      LatticePtr a = load_lattice(run, la, "lattice");
      LatticePtr b = load_lattice(run, lb, "lattice2");
      st = unilat_glue(a.get(), b.get(), nullptr, &result);
    } else if (sub == c_nb) {
      LatticePtr l = load_lattice(run, la, "lattice");
      std::vector<int64_t> x;
      if (!xs.empty()) {
        x = parse_coords(xs);
        if (static_cast<int>(x.size()) != unilat_lattice_rank(l.get()))
          die(UNILAT_INVALID_INPUT, "line vector has the wrong length");
      }
      st = unilat_neighbor(l.get(), d, xs.empty() ? nullptr : x.data(), attempts, o, &result);
    } else if (sub == c_ext) {
      LatticePtr l = load_lattice(run, la, "lattice");
      st = unilat_extend(l.get(), o, &result);
    } else if (sub == c_om) {
      ListPtr src = load_list(run, la.list);
      unilat_list* res = nullptr;
      st = unilat_orbitmethod(src.get(), norm, kind.c_str(), target_rank, target_det, !target_odd,
                              two_stage, o, &res, &result);
      ListPtr keep(res, unilat_list_free);
      if (res && !out.empty()) write_list(run, res, out);
    } else if (sub == c_exc) {
      LatticePtr l = load_lattice(run, la, "lattice");
      st = unilat_exc(l.get(), &result);
    } else if (sub == c_tri) {
      LatticePtr l = load_lattice(run, la, "lattice");
      std::vector<int64_t> r;
      if (!roots.empty()) {
        r = parse_coords(roots);
        if (static_cast<int>(r.size()) != unilat_lattice_rank(l.get()))
          die(UNILAT_INVALID_INPUT, "root has the wrong length");
      }
      st = unilat_triplicate(l.get(), roots.empty() ? nullptr : r.data(), o, &result);
    } else if (sub == c_audit) {
      ListPtr l = load_list(run, la.list);
      st = unilat_audit(l.get(), expected_count, expected_mass.empty() ? nullptr : expected_mass.c_str(),
                        &result);
    } else if (sub == c_cu) {
      std::vector<unilat_list*> lists(static_cast<std::size_t>(max_rank), nullptr);
      st = unilat_classify_unimodular(max_rank, o, lists.data(), &result);
      for (int n = 1; n <= max_rank; ++n) {
        ListPtr keep(lists[n - 1], unilat_list_free);
        if (keep) write_list(run, keep.get(), out_dir + "/X" + std::to_string(n) + ".list");
      }
      if (run.manifest == "unilat-" + run.command + ".manifest.json")
        run.manifest = out_dir + "/" + run.manifest;
    } else if (sub == c_cg) {
      unilat_list* res = nullptr;
      st = unilat_classify_genus(gn, gp, o, &res, &result);
      ListPtr keep(res, unilat_list_free);
      if (res && !out.empty()) write_list(run, res, out);
    }

    if (st != UNILAT_OK && st != UNILAT_AUDIT_MISMATCH) run.error = unilat_last_error();
  } catch (const Failure& f) {
    st = f.status;
    run.error = f.message;
  }
  return finish(run, st, result);
}
