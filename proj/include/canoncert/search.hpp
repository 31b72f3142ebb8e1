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

// Canonical labelling by depth-first traversal of the search tree.
//
// Node nu carries the coloring refine(g, pi0, nu); its children are [nu, w]
// for w in the first non-singleton cell, in increasing order. The canonical
// leaf maximizes the node invariant, then the leaf graph g^pi, and is the
// lexicographically smallest such sequence.

#ifndef CANONCERT_SEARCH_HPP_
#define CANONCERT_SEARCH_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "canoncert/core.hpp"
#include "canoncert/invariant.hpp"
#include "canoncert/refine.hpp"

namespace canoncert {

// Disjoint vertex classes, each contained in one orbit of the automorphism
// group at a search node.
class OrbitPartition {
 public:
  OrbitPartition() = default;
  explicit OrbitPartition(std::size_t n);

  std::size_t n() const { return root_.size(); }
  // Smallest member of v's class.
  Vertex min_of(Vertex v) const { return root_[v - 1]; }
  bool same(Vertex a, Vertex b) const { return min_of(a) == min_of(b); }
  VertexSet orbit_of(Vertex v) const;
  // Returns false if a and b were already together.
  bool merge(Vertex a, Vertex b);

 private:
  std::vector<Vertex> root_;
  std::vector<std::vector<Vertex>> members_;  // indexed by root - 1
};

OrbitPartition orbit_merge(OrbitPartition op, Vertex w1, Vertex w2);

// If both discrete colorings give the same leaf graph, the automorphism
// compose(pi1, pi2^-1) that maps the first leaf onto the second.
std::optional<Permutation> discover_automorphism(const Coloring& pi1,
                                                 const Coloring& pi2,
                                                 const Graph& g);

// Callbacks describing what the search did, in order. Every node that is
// entered is reported through node_refined; every node left behind that is
// not an ancestor of the final leaf is reported as pruned exactly when its
// pruning becomes justified.
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  // `parent` is null for the root. log.steps.front() is pi0 for the root and
  // individualize(*parent, nu.back()) otherwise.
  virtual void node_refined(const VertexSequence& nu, const Coloring* parent,
                            const RefinementLog& log) {}
  virtual void target_selected(const VertexSequence& nu, const Coloring& pi,
                               const VertexSet& cell) {}
  // Two classes of nu's orbit partition were joined because sigma fixes nu
  // pointwise and maps w1 in `first` to w2 in `second`.
  virtual void orbits_merged(const VertexSequence& nu, const VertexSet& first,
                             const VertexSet& second,
                             const Permutation& sigma, Vertex w1, Vertex w2) {}
  // Child [nu, larger] skipped; smaller < larger share the class `orbit`.
  virtual void orbit_pruned(const VertexSequence& nu, const VertexSet& orbit,
                            Vertex smaller, Vertex larger) {}
  // Same depth, parents with equal invariants, hash(winner) > hash(loser).
  virtual void invariant_pruned(const VertexSequence& winner,
                                const VertexSequence& loser) {}
  // Equal invariants; loser is a leaf and winner is either not a leaf or a
  // leaf with a greater graph.
  virtual void leaf_pruned(const VertexSequence& winner,
                           const VertexSequence& loser) {}
  virtual void automorphism_found(const Permutation& sigma) {}
  // sigma maps `smaller` (lexicographically smaller) onto `pruned`.
  virtual void automorphism_pruned(const VertexSequence& smaller,
                                   const VertexSequence& pruned,
                                   const Permutation& sigma) {}
  // Every child [nu, w], w in `cell`, has been pruned.
  virtual void parent_pruned(const VertexSequence& nu, const VertexSet& cell) {}
  virtual void finished(const VertexSequence& leaf, const Coloring& pi) {}
};

enum class PruningMode {
  kAll,            // invariants, leaf graphs, automorphisms and orbits
  kInvariantOnly,  // invariants and leaf graphs; equal leaves pruned singly
  kNone,           // visit every node
};

struct SearchOptions {
  PruningMode pruning = PruningMode::kAll;
};

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t orbit_prunes = 0;
  std::size_t invariant_prunes = 0;
  std::size_t leaf_prunes = 0;
  std::size_t automorphism_prunes = 0;
  std::size_t parent_prunes = 0;
  std::size_t automorphisms = 0;
};

struct CanonicalResult {
  ColoredGraph canonical;
  // pi* read as a permutation: vertex v of the input becomes vertex
  // labelling(v) of the canonical graph.
  Permutation labelling;
  VertexSequence leaf;
  Coloring leaf_coloring;
  NodeInvariant invariant;
  // Automorphisms of (g, pi0) found along the way, in discovery order.
  std::vector<Permutation> generators;
  SearchStats stats;
};

// Throws std::invalid_argument if pi0 and g differ in size.
CanonicalResult canonical_form(const Graph& g, const Coloring& pi0,
                               const SearchOptions& options = {},
                               SearchObserver* observer = nullptr);
inline CanonicalResult canonical_form(const Graph& g) {
  return canonical_form(g, Coloring::unit(g.n()));
}

// Observer that records a readable event log.
class SearchTrace : public SearchObserver {
 public:
  const std::vector<std::string>& events() const { return events_; }

  void node_refined(const VertexSequence& nu, const Coloring* parent,
                    const RefinementLog& log) override;
  void target_selected(const VertexSequence& nu, const Coloring& pi,
                       const VertexSet& cell) override;
  void orbits_merged(const VertexSequence& nu, const VertexSet& first,
                     const VertexSet& second, const Permutation& sigma,
                     Vertex w1, Vertex w2) override;
  void orbit_pruned(const VertexSequence& nu, const VertexSet& orbit,
                    Vertex smaller, Vertex larger) override;
  void invariant_pruned(const VertexSequence& winner,
                        const VertexSequence& loser) override;
  void leaf_pruned(const VertexSequence& winner,
                   const VertexSequence& loser) override;
  void automorphism_found(const Permutation& sigma) override;
  void automorphism_pruned(const VertexSequence& smaller,
                           const VertexSequence& pruned,
                           const Permutation& sigma) override;
  void parent_pruned(const VertexSequence& nu, const VertexSet& cell) override;
  void finished(const VertexSequence& leaf, const Coloring& pi) override;

 private:
  std::vector<std::string> events_;
};

std::string to_string(const VertexSequence& nu);

}  // namespace canoncert

#endif  // CANONCERT_SEARCH_HPP_
