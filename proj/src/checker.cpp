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

#include "canoncert/checker.hpp"

#include <algorithm>
#include <map>
#include <variant>
#include <vector>

namespace canoncert {
namespace {

// ------------------------------------------------------------- kernels
//
// Deliberately plain: colorings are handled as color vectors and cells are
// rebuilt on demand.

using Colors = std::vector<Color>;

std::vector<std::vector<Vertex>> cells_of(const Colors& colors) {
  Color m = 0;
  for (Color c : colors) m = std::max(m, c);
  std::vector<std::vector<Vertex>> cells(m);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    cells[colors[i] - 1].push_back(static_cast<Vertex>(i + 1));
  }
  return cells;
}

Colors colors_of(std::size_t n, const std::vector<std::vector<Vertex>>& cells) {
  Colors colors(n, 0);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    for (Vertex v : cells[k]) colors[v - 1] = static_cast<Color>(k + 1);
  }
  return colors;
}

Colors check_individualize(const Colors& colors, Vertex v) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& cell : cells_of(colors)) {
    if (cell.size() > 1 && std::find(cell.begin(), cell.end(), v) != cell.end()) {
      out.push_back({v});
      std::vector<Vertex> rest;
      for (Vertex u : cell) {
        if (u != v) rest.push_back(u);
      }
      out.push_back(rest);
    } else {
      out.push_back(cell);
    }
  }
  return colors_of(colors.size(), out);
}

// Splits every cell by the number of neighbours in cell i (1-based).
Colors check_split(const Graph& g, const Colors& colors, std::size_t i) {
  const auto cells = cells_of(colors);
  const auto& splitter = cells[i - 1];
  std::vector<std::vector<Vertex>> out;
  for (const auto& cell : cells) {
    std::map<std::size_t, std::vector<Vertex>> by_count;
    for (Vertex v : cell) {
      std::size_t count = 0;
      for (Vertex u : splitter) count += g.adjacent(v, u) ? 1 : 0;
      by_count[count].push_back(v);
    }
    std::vector<std::vector<Vertex>> frags;
    for (auto& [count, members] : by_count) frags.push_back(members);
    std::size_t largest = 0;
    for (std::size_t k = 0; k < frags.size(); ++k) {
      if (frags[k].size() > frags[largest].size()) largest = k;
    }
    for (std::size_t k = 0; k < frags.size(); ++k) {
      if (k != largest) out.push_back(frags[k]);
    }
    out.push_back(frags[largest]);
  }
  return colors_of(colors.size(), out);
}

std::size_t cell_count(const Colors& colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
}

bool discrete(const Colors& colors) {
  return cell_count(colors) == colors.size();
}

std::uint64_t check_hash(const Graph& g, const Colors& colors) {
  const std::size_t m = cell_count(colors);
  std::vector<std::uint64_t> words;
  words.push_back(m);
  std::vector<std::uint64_t> sizes(m, 0);
  for (Color c : colors) ++sizes[c - 1];
  words.insert(words.end(), sizes.begin(), sizes.end());
  std::vector<std::vector<std::uint64_t>> between(
      m, std::vector<std::uint64_t>(m, 0));
  for (Vertex u = 1; u <= g.n(); ++u) {
    for (Vertex v = u + 1; v <= g.n(); ++v) {
      if (!g.adjacent(u, v)) continue;
      const Color a = std::min(colors[u - 1], colors[v - 1]);
      const Color b = std::max(colors[u - 1], colors[v - 1]);
      ++between[a - 1][b - 1];
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) words.push_back(between[i][j]);
  }
  std::uint64_t h = 14695981039346656037ull;
  for (std::uint64_t w : words) {
    for (int byte = 7; byte >= 0; --byte) {
      h ^= (w >> (8 * byte)) & 0xFF;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Adjacency bit (r, c) of g relabelled by the discrete coloring.
bool leaf_bit(const Graph& g, const std::vector<Vertex>& preimage, Vertex r,
              Vertex c) {
  return r != c && g.adjacent(preimage[r - 1], preimage[c - 1]);
}

std::vector<Vertex> preimage_of(const Colors& discrete_colors) {
  std::vector<Vertex> pre(discrete_colors.size());
  for (std::size_t v = 0; v < discrete_colors.size(); ++v) {
    pre[discrete_colors[v] - 1] = static_cast<Vertex>(v + 1);
  }
  return pre;
}

// True if g relabelled by a is greater than g relabelled by b.
bool leaf_graph_greater(const Graph& g, const Colors& a, const Colors& b) {
  const auto pa = preimage_of(a);
  const auto pb = preimage_of(b);
  for (Vertex r = 1; r <= g.n(); ++r) {
    for (Vertex c = 1; c <= g.n(); ++c) {
      const bool x = leaf_bit(g, pa, r, c);
      const bool y = leaf_bit(g, pb, r, c);
      if (x != y) return x;
    }
  }
  return false;
}

bool preserves(const Graph& g, const Coloring& pi0, const Permutation& sigma) {
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (pi0(sigma(v)) != pi0(v)) return false;
  }
  for (Vertex u = 1; u <= g.n(); ++u) {
    for (Vertex v = u + 1; v <= g.n(); ++v) {
      if (g.adjacent(u, v) != g.adjacent(sigma(u), sigma(v))) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------- rules

[[noreturn]] void fail(FailureReason reason, const std::string& detail) {
  throw RuleError(reason, detail);
}

void need(const FactDatabase& db, const Fact& fact) {
  if (!db.contains(fact_key(fact))) {
    fail(FailureReason::kMissingPremise, describe(fact));
  }
}

void ensure(bool condition, const char* what) {
  if (!condition) fail(FailureReason::kSideConditionFailed, what);
}

VertexSequence child_of(const VertexSequence& nu, Vertex v) {
  if (nu.contains(v)) {
    fail(FailureReason::kMalformedParameter,
         "vertex " + std::to_string(v) + " already in the sequence");
  }
  return nu.extended(v);
}

Coloring as_coloring(Colors colors) { return Coloring(std::move(colors)); }

class RuleChecker {
 public:
  RuleChecker(const FactDatabase& db, const Graph& g, const Coloring& pi0)
      : db_(db), g_(g), pi0_(pi0) {}

  Fact operator()(const ColoringAxiom&) const {
    return RFiner{{}, pi0_};
  }

  Fact operator()(const Individualize& r) const {
    need(db_, REqual{r.node, r.coloring});
    const VertexSequence child = child_of(r.node, r.vertex);
    return RFiner{child,
                  as_coloring(check_individualize(r.coloring.colors(), r.vertex))};
  }

  Fact operator()(const SplitColoring& r) const {
    need(db_, RFiner{r.node, r.coloring});
    const Colors& colors = r.coloring.colors();
    for (std::size_t i = 1; i <= cell_count(colors); ++i) {
      Colors next = check_split(g_, colors, i);
      if (next != colors) return RFiner{r.node, as_coloring(std::move(next))};
    }
    fail(FailureReason::kSideConditionFailed, "no cell splits the coloring");
  }

  Fact operator()(const Equitable& r) const {
    need(db_, RFiner{r.node, r.coloring});
    const Colors& colors = r.coloring.colors();
    for (std::size_t i = 1; i <= cell_count(colors); ++i) {
      ensure(check_split(g_, colors, i) == colors, "coloring is not equitable");
    }
    return REqual{r.node, r.coloring};
  }

  Fact operator()(const TargetCell& r) const {
    need(db_, REqual{r.node, r.coloring});
    for (const auto& cell : cells_of(r.coloring.colors())) {
      if (cell.size() > 1) return TargetIs{r.node, VertexSet(cell)};
    }
    fail(FailureReason::kSideConditionFailed, "coloring is discrete");
  }

  Fact operator()(const InvariantAxiom& r) const {
    return PhiEqual{r.node, r.node};
  }

  Fact operator()(const InvariantsEqual& r) const {
    check_pair(r.first, r.first_coloring, r.second, r.second_coloring);
    ensure(check_hash(g_, r.first_coloring.colors()) ==
               check_hash(g_, r.second_coloring.colors()),
           "hashes differ");
    return PhiEqual{r.first, r.second};
  }

  Fact operator()(const InvariantsEqualSym& r) const {
    need(db_, PhiEqual{r.first, r.second});
    return PhiEqual{r.second, r.first};
  }

  Fact operator()(const OrbitsAxiom& r) const {
    return OrbitSubset{r.node, VertexSet{r.vertex}};
  }

  Fact operator()(const MergeOrbits& r) const {
    need(db_, OrbitSubset{r.node, r.first_orbit});
    need(db_, OrbitSubset{r.node, r.second_orbit});
    ensure(preserves(g_, pi0_, r.sigma), "not an automorphism");
    for (Vertex v : r.node.items()) {
      ensure(r.sigma(v) == v, "permutation moves the node");
    }
    ensure(r.first_orbit.contains(r.first_witness), "witness not in orbit");
    ensure(r.second_orbit.contains(r.second_witness), "witness not in orbit");
    ensure(r.sigma(r.first_witness) == r.second_witness,
           "permutation does not map the witnesses");
    std::vector<Vertex> joined = r.first_orbit.items();
    joined.insert(joined.end(), r.second_orbit.begin(), r.second_orbit.end());
    return OrbitSubset{r.node, VertexSet(std::move(joined))};
  }

  Fact operator()(const PruneInvariant& r) const {
    check_pair(r.first, r.first_coloring, r.second, r.second_coloring);
    ensure(check_hash(g_, r.first_coloring.colors()) >
               check_hash(g_, r.second_coloring.colors()),
           "hash of the pruned node is not smaller");
    return Pruned{r.second};
  }

  Fact operator()(const PruneLeaf& r) const {
    need(db_, REqual{r.first, r.first_coloring});
    need(db_, REqual{r.second, r.second_coloring});
    need(db_, PhiEqual{r.first, r.second});
    const Colors& a = r.first_coloring.colors();
    const Colors& b = r.second_coloring.colors();
    ensure(discrete(b), "pruned node is not a leaf");
    ensure(!discrete(a) || leaf_graph_greater(g_, a, b),
           "leaf graph is not smaller");
    return Pruned{r.second};
  }

  Fact operator()(const PruneAutomorphism& r) const {
    ensure(r.smaller < r.pruned, "sequences not in lexicographic order");
    ensure(r.smaller.size() == r.pruned.size(), "sequence lengths differ");
    ensure(preserves(g_, pi0_, r.sigma), "not an automorphism");
    for (std::size_t i = 0; i < r.smaller.size(); ++i) {
      ensure(r.sigma(r.smaller[i]) == r.pruned[i],
             "permutation does not map the sequences");
    }
    return Pruned{r.pruned};
  }

  Fact operator()(const PruneParent& r) const {
    need(db_, TargetIs{r.node, r.cell});
    for (Vertex w : r.cell) need(db_, Pruned{child_of(r.node, w)});
    return Pruned{r.node};
  }

  Fact operator()(const PruneOrbits& r) const {
    need(db_, OrbitSubset{r.node, r.orbit});
    ensure(r.orbit.contains(r.larger), "pruned vertex not in orbit");
    ensure(r.orbit.contains(r.smaller), "smaller vertex not in orbit");
    ensure(r.smaller < r.larger, "vertices not in order");
    return Pruned{child_of(r.node, r.larger)};
  }

  Fact operator()(const PathAxiom&) const { return OnPath{{}}; }

  Fact operator()(const ExtendPath& r) const {
    need(db_, OnPath{r.node});
    need(db_, TargetIs{r.node, r.cell});
    ensure(r.cell.contains(r.vertex), "vertex not in the target cell");
    for (Vertex w : r.cell) {
      if (w != r.vertex) need(db_, Pruned{child_of(r.node, w)});
    }
    return OnPath{child_of(r.node, r.vertex)};
  }

  Fact operator()(const CanonicalLeaf& r) const {
    need(db_, OnPath{r.node});
    need(db_, REqual{r.node, r.coloring});
    const Colors& colors = r.coloring.colors();
    ensure(discrete(colors), "coloring is not discrete");
    std::vector<Edge> edges;
    for (Vertex u = 1; u <= g_.n(); ++u) {
      for (Vertex v = u + 1; v <= g_.n(); ++v) {
        if (g_.adjacent(u, v)) edges.emplace_back(colors[u - 1], colors[v - 1]);
      }
    }
    Colors relabelled(g_.n());
    for (Vertex v = 1; v <= g_.n(); ++v) relabelled[colors[v - 1] - 1] = pi0_(v);
    return Canonical{ColoredGraph(Graph::from_edges(g_.n(), edges),
                                  as_coloring(std::move(relabelled)))};
  }

 private:
  // Premises shared by InvariantsEqual and PruneInvariant.
  void check_pair(const VertexSequence& first, const Coloring& first_coloring,
                  const VertexSequence& second,
                  const Coloring& second_coloring) const {
    if (first.size() != second.size() || first.empty()) {
      fail(FailureReason::kMalformedParameter, "sequence lengths differ");
    }
    need(db_, PhiEqual{first.parent(), second.parent()});
    need(db_, REqual{first, first_coloring});
    need(db_, REqual{second, second_coloring});
  }

  const FactDatabase& db_;
  const Graph& g_;
  const Coloring& pi0_;
};

}  // namespace

std::string_view failure_name(FailureReason reason) {
  switch (reason) {
    case FailureReason::kDecodeError:
      return "DecodeError";
    case FailureReason::kMissingPremise:
      return "MissingPremise";
    case FailureReason::kSideConditionFailed:
      return "SideConditionFailed";
    case FailureReason::kMalformedParameter:
      return "MalformedParameter";
    case FailureReason::kNEndMismatch:
      return "NEndMismatch";
    case FailureReason::kNoCanonicalFact:
      return "NoCanonicalFact";
  }
  return "Unknown";
}

Fact apply_rule(FactDatabase& db, const Graph& g, const Coloring& pi0,
                const Rule& rule) {
  if (g.n() != pi0.n()) {
    throw std::invalid_argument("apply_rule: coloring size mismatch");
  }
  Fact conclusion = std::visit(RuleChecker(db, g, pi0), rule);
  db.insert(fact_key(conclusion));
  return conclusion;
}

Verdict verify_proof(const Graph& g, const Coloring& pi0,
                     const ProofStream& stream, DatabaseBackend backend) {
  if (g.n() != pi0.n()) {
    throw std::invalid_argument("verify_proof: coloring size mismatch");
  }
  Verdict verdict;
  auto reject = [&](FailureReason reason, std::string detail) {
    verdict.accepted = false;
    verdict.canonical.reset();
    verdict.failure = Failure{verdict.rules_checked, reason, std::move(detail)};
    return verdict;
  };
  if (stream.n() != g.n()) {
    return reject(FailureReason::kNEndMismatch,
                  "proof is for n = " + std::to_string(stream.n()) +
                      ", graph has n = " + std::to_string(g.n()));
  }
  auto db = FactDatabase::create(backend);
  const auto& ints = stream.ints();
  std::size_t pos = 1;
  while (pos < ints.size()) {
    Rule rule;
    try {
      rule = decode_rule(ints, pos, g.n());
    } catch (const ProofFormatError& e) {
      return reject(FailureReason::kDecodeError, e.what());
    }
    try {
      Fact fact = apply_rule(*db, g, pi0, rule);
      if (auto* c = std::get_if<Canonical>(&fact)) {
        if (verdict.canonical && !(*verdict.canonical == c->form)) {
          return reject(FailureReason::kSideConditionFailed,
                        "second, different canonical form");
        }
        verdict.canonical = c->form;
      }
    } catch (const RuleError& e) {
      return reject(e.reason(), std::string(rule_name(rule)) + ": " + e.what());
    }
    ++verdict.rules_checked;
  }
  if (!verdict.canonical) {
    return reject(FailureReason::kNoCanonicalFact,
                  "no rule derived a canonical form");
  }
  verdict.accepted = true;
  return verdict;
}

Verdict verify_proof_bytes(const Graph& g, const Coloring& pi0,
                           std::span<const std::uint8_t> bytes,
                           DatabaseBackend backend) {
  ProofStream stream;
  try {
    stream = ProofStream::from_bytes(bytes);
  } catch (const ProofFormatError& e) {
    Verdict verdict;
    verdict.failure = Failure{0, FailureReason::kDecodeError, e.what()};
    return verdict;
  }
  return verify_proof(g, pi0, stream, backend);
}

}  // namespace canoncert
