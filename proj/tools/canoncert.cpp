// Copyright 2026 The canoncert Authors
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

// canoncert: canonical forms with proofs, proof checking and isomorphism.
//
//   canoncert canon G.dimacs [--prove[=during|post]] [--proof-out FILE]
//                            [--stats] [--json]
//   canoncert check G.dimacs G.proof [--db=flat|trie] [--json]
//   canoncert iso G1.dimacs G2.dimacs [--certify] [--json]
//
// Exit status: 0 success, 1 rejected proof or non-isomorphic graphs,
// 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "canoncert/checker.hpp"
#include "canoncert/core.hpp"
#include "canoncert/dimacs.hpp"
#include "canoncert/emitter.hpp"
#include "canoncert/search.hpp"
#include "json.hpp"

namespace {

using canoncert::Coloring;
using canoncert::Graph;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph load_graph(const std::string& path) {
  try {
    return canoncert::read_dimacs_file(path);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

json edge_list(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return edges;
}

void print_graph(const Graph& g) {
  std::cout << canoncert::to_dimacs(g);
}

void print_labelling(const canoncert::Permutation& p) {
  std::cout << "c labelling";
  for (auto v : p.images()) std::cout << ' ' << v;
  std::cout << '\n';
}

std::optional<canoncert::ProofStrategy> parse_strategy(
    const std::string& text) {
  if (text.empty() || text == "post") return canoncert::ProofStrategy::kPost;
  if (text == "during") return canoncert::ProofStrategy::kDuring;
  return std::nullopt;
}

struct CanonArgs {
  std::string graph;
  std::optional<std::string> prove;
  std::string proof_out;
  bool stats = false;
  bool json = false;
};

int run_canon(const CanonArgs& args) {
  const Graph g = load_graph(args.graph);
  const Coloring pi0 = Coloring::unit(g.n());
  json report = {{"n", g.n()}, {"m", g.edge_count()}};

  auto start = std::chrono::steady_clock::now();
  canoncert::CanonicalResult result = canoncert::canonical_form(g, pi0);
  const double solve_ms = elapsed_ms(start);
  report["times_ms"] = {{"solve", solve_ms}};

  std::optional<std::size_t> proof_bytes;
  if (args.prove || !args.proof_out.empty()) {
    const auto strategy = parse_strategy(args.prove.value_or(""));
    if (!strategy) throw CLI::ValidationError("--prove", "expected during or post");
    start = std::chrono::steady_clock::now();
    canoncert::ProofStream proof =
        *strategy == canoncert::ProofStrategy::kPost
            ? canoncert::emit_post(g, pi0, result)
            : canoncert::emit_during(g, pi0).proof;
    report["times_ms"]["prove"] = elapsed_ms(start);
    const std::string out =
        args.proof_out.empty() ? args.graph + ".proof" : args.proof_out;
    try {
      proof.write_file(out);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    proof_bytes = proof.byte_size();
    report["proof_file"] = out;
  }
  report["proof_bytes"] = proof_bytes ? json(*proof_bytes) : json(nullptr);
  report["canonical_edges"] = edge_list(result.canonical.graph);
  report["labelling"] = result.labelling.images();
  report["verdict"] = "canonical";

  if (args.json) {
    std::cout << report.dump(2) << '\n';
    return kOk;
  }
  print_labelling(result.labelling);
  if (args.stats) {
    const auto& s = result.stats;
    std::cout << "c solve_ms " << solve_ms << '\n';
    if (report["times_ms"].contains("prove")) {
      std::cout << "c prove_ms " << report["times_ms"]["prove"].get<double>()
                << '\n';
    }
    if (proof_bytes) std::cout << "c proof_bytes " << *proof_bytes << '\n';
    std::cout << "c nodes " << s.nodes << " leaves " << s.leaves
              << " automorphisms " << s.automorphisms << '\n';
  }
  print_graph(result.canonical.graph);
  return kOk;
}

struct CheckArgs {
  std::string graph;
  std::string proof;
  std::string db = "flat";
  bool json = false;
};

int run_check(const CheckArgs& args) {
  const Graph g = load_graph(args.graph);
  std::ifstream in(args.proof, std::ios::binary);
  if (!in) throw InputError("cannot open " + args.proof);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  const auto backend = args.db == "trie" ? canoncert::DatabaseBackend::kTrie
                                         : canoncert::DatabaseBackend::kFlat;
  const auto start = std::chrono::steady_clock::now();
  const canoncert::Verdict verdict =
      canoncert::verify_proof_bytes(g, Coloring::unit(g.n()), bytes, backend);
  const double check_ms = elapsed_ms(start);

  if (args.json) {
    json report = {{"n", g.n()},
                   {"m", g.edge_count()},
                   {"proof_bytes", bytes.size()},
                   {"times_ms", {{"check", check_ms}}},
                   {"rules", verdict.rules_checked},
                   {"verdict", verdict.accepted ? "accepted" : "rejected"}};
    report["canonical_edges"] =
        verdict.canonical ? edge_list(verdict.canonical->graph) : json(nullptr);
    if (verdict.failure) {
      report["failure"] = {
          {"rule", verdict.failure->rule_index},
          {"reason", canoncert::failure_name(verdict.failure->reason)},
          {"detail", verdict.failure->detail}};
    }
    std::cout << report.dump(2) << '\n';
  } else if (verdict.accepted) {
    std::cout << "c accepted " << verdict.rules_checked << " rules\n";
    print_graph(verdict.canonical->graph);
  } else {
    std::cout << "rejected: " << canoncert::failure_name(verdict.failure->reason)
              << " at rule " << verdict.failure->rule_index << ": "
              << verdict.failure->detail << '\n';
  }
  return verdict.accepted ? kOk : kNegative;
}

struct IsoArgs {
  std::string first;
  std::string second;
  bool certify = false;
  bool json = false;
};

int run_iso(const IsoArgs& args) {
  const Graph g1 = load_graph(args.first);
  const Graph g2 = load_graph(args.second);
  json report = {{"graphs", json::array()}};

  const auto start = std::chrono::steady_clock::now();
  std::vector<canoncert::CanonicalResult> results;
  std::vector<bool> proofs_ok;
  for (const auto* item : {&args.first, &args.second}) {
    const Graph& g = item == &args.first ? g1 : g2;
    const Coloring pi0 = Coloring::unit(g.n());
    results.push_back(canoncert::canonical_form(g, pi0));
    json entry = {{"n", g.n()},
                  {"m", g.edge_count()},
                  {"canonical_edges", edge_list(results.back().canonical.graph)},
                  {"proof_bytes", nullptr}};
    if (args.certify) {
      const auto proof = canoncert::emit_post(g, pi0, results.back());
      const std::string out = *item + ".proof";
      try {
        proof.write_file(out);
      } catch (const std::exception& e) {
        throw InputError(e.what());
      }
      const auto verdict = canoncert::verify_proof(g, pi0, proof);
      const bool ok = verdict.accepted &&
                      *verdict.canonical == results.back().canonical;
      proofs_ok.push_back(ok);
      entry["proof_bytes"] = proof.byte_size();
      entry["proof_file"] = out;
      entry["proof_verdict"] = ok ? "accepted" : "rejected";
    }
    report["graphs"].push_back(entry);
  }
  report["times_ms"] = {{"total", elapsed_ms(start)}};

  bool isomorphic = g1.n() == g2.n() &&
                    results[0].canonical == results[1].canonical;
  std::optional<canoncert::Permutation> mapping;
  if (isomorphic) {
    // v in g1 goes to labelling1(v) in the canonical graph, which is
    // labelling2^-1 of that in g2.
    mapping = canoncert::compose(results[0].labelling,
                                 canoncert::invert(results[1].labelling));
    if (canoncert::relabel_graph(g1, *mapping) != g2) {
      std::cerr << "internal error: canonical forms agree but the derived "
                   "mapping is not an isomorphism\n";
      return kUsage;
    }
  }
  const bool certified =
      std::all_of(proofs_ok.begin(), proofs_ok.end(), [](bool b) { return b; });

  report["verdict"] = isomorphic ? "isomorphic" : "non-isomorphic";
  if (mapping) report["mapping"] = mapping->images();
  if (args.certify) report["certified"] = certified;

  if (args.json) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << (isomorphic ? "isomorphic" : "non-isomorphic") << '\n';
    if (mapping) {
      std::cout << "c mapping";
      for (auto v : mapping->images()) std::cout << ' ' << v;
      std::cout << '\n';
    }
    if (args.certify) {
      std::cout << "c proofs " << (certified ? "accepted" : "rejected") << '\n';
    }
  }
  if (args.certify && !certified) return kNegative;
  return isomorphic ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified canonical labelling of graphs"};
  app.require_subcommand(1);

  CanonArgs canon;
  auto* canon_cmd = app.add_subcommand("canon", "Canonical form of a graph");
  canon_cmd->add_option("graph", canon.graph, "DIMACS graph")->required();
  canon_cmd->add_option("--prove", canon.prove,
                        "Write a proof (strategy during or post)")
      ->expected(0, 1);
  canon_cmd->add_option("--proof-out", canon.proof_out,
                        "Proof file (default <graph>.proof)");
  canon_cmd->add_flag("--stats", canon.stats, "Print timings and sizes");
  canon_cmd->add_flag("--json", canon.json, "Machine-readable report");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Verify a proof");
  check_cmd->add_option("graph", check.graph, "DIMACS graph")->required();
  check_cmd->add_option("proof", check.proof, "Proof file")->required();
  check_cmd->add_option("--db", check.db, "Fact database backend")
      ->check(CLI::IsMember({"flat", "trie"}));
  check_cmd->add_flag("--json", check.json, "Machine-readable report");

  IsoArgs iso;
  auto* iso_cmd = app.add_subcommand("iso", "Decide isomorphism");
  iso_cmd->add_option("first", iso.first, "DIMACS graph")->required();
  iso_cmd->add_option("second", iso.second, "DIMACS graph")->required();
  iso_cmd->add_flag("--certify", iso.certify,
                    "Write and check proofs of both canonical forms");
  iso_cmd->add_flag("--json", iso.json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*canon_cmd) return run_canon(canon);
    if (*check_cmd) return run_check(check);
    if (*iso_cmd) return run_iso(iso);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
