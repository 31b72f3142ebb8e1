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

// Reference implementations for tests. Nothing here calls into the solver or
// the checker; graphs and colorings are only read through their accessors.

#ifndef CANONCERT_TESTS_SUPPORT_ORACLE_HPP_
#define CANONCERT_TESTS_SUPPORT_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "canoncert/core.hpp"

namespace canoncert::oracle {

// Largest upper-triangle bit string over all n! relabellings; equal keys
// exactly for isomorphic graphs. n <= 11.
std::uint64_t isomorphism_key(const Graph& g);

// Some sigma with relabel(a, sigma) == b, by trying all n! bijections.
std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a,
                                                    const Graph& b);

// Plain reading of the definitions: split fragments by neighbour count,
// ascending, first largest fragment last.
std::vector<Color> split_colors(const Graph& g, const std::vector<Color>& pi,
                                Color i);
// Repeatedly applies the split by the smallest cell that changes anything.
std::vector<Color> equitable_colors(const Graph& g, std::vector<Color> pi);
bool is_equitable(const Graph& g, const std::vector<Color>& pi);
std::vector<Color> individualize_colors(const std::vector<Color>& pi,
                                        Vertex v);
std::uint64_t quotient_hash(const Graph& g, const std::vector<Color>& pi);

// Canonical form by visiting every leaf of the search tree: largest
// invariant, then largest leaf graph, then the lexicographically smallest
// leaf. Exponential; for small n only.
struct TreeCanonical {
  ColoredGraph form;
  std::vector<Vertex> leaf;
  std::size_t leaves = 0;
};
TreeCanonical tree_canonical_form(const Graph& g, const Coloring& pi0);

// Generators.
Graph random_graph(std::size_t n, double p, std::mt19937_64& rng);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph path_graph(std::size_t n);
// A centre with legs of the given lengths; distinct lengths (at least three
// legs) give a tree with no automorphism besides the identity.
Graph spider(const std::vector<std::size_t>& legs);
Graph petersen_graph();
Permutation random_permutation(std::size_t n, std::mt19937_64& rng);
// Random coloring with at most `colors` colors.
Coloring random_coloring(std::size_t n, std::size_t colors,
                         std::mt19937_64& rng);

struct Instance {
  std::string name;
  Graph graph;
};
// Deterministic 200-instance corpus: G(n, p) with n in 4..32 and
// p in {0.1, 0.3, 0.5}, cycles, cliques, complete bipartite graphs and
// rigid trees.
std::vector<Instance> standard_corpus();

}  // namespace canoncert::oracle

#endif  // CANONCERT_TESTS_SUPPORT_ORACLE_HPP_
