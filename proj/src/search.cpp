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

#include "canoncert/search.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace canoncert {

// ------------------------------------------------------- OrbitPartition

OrbitPartition::OrbitPartition(std::size_t n) : root_(n), members_(n) {
  for (std::size_t i = 0; i < n; ++i) {
    root_[i] = static_cast<Vertex>(i + 1);
    members_[i] = {static_cast<Vertex>(i + 1)};
  }
}

VertexSet OrbitPartition::orbit_of(Vertex v) const {
  return VertexSet(members_[min_of(v) - 1]);
}

bool OrbitPartition::merge(Vertex a, Vertex b) {
  Vertex ra = min_of(a);
  Vertex rb = min_of(b);
  if (ra == rb) return false;
  if (ra > rb) std::swap(ra, rb);
  auto& keep = members_[ra - 1];
  auto& gone = members_[rb - 1];
  for (Vertex v : gone) root_[v - 1] = ra;
  keep.insert(keep.end(), gone.begin(), gone.end());
  gone.clear();
  gone.shrink_to_fit();
  return true;
}

OrbitPartition orbit_merge(OrbitPartition op, Vertex w1, Vertex w2) {
  op.merge(w1, w2);
  return op;
}

std::optional<Permutation> discover_automorphism(const Coloring& pi1,
                                                 const Coloring& pi2,
                                                 const Graph& g) {
  const Permutation p1 = pi1.as_permutation();
  const Permutation p2 = pi2.as_permutation();
  if (relabel_graph(g, p1) != relabel_graph(g, p2)) return std::nullopt;
  return compose(p1, invert(p2));
}

// ---------------------------------------------------------------- search

namespace {

constexpr int kNoUnwind = -1;

struct PathNode {
  VertexSequence seq;
  Coloring coloring;
  NodeInvariant invariant;
  VertexSet cell;
  OrbitPartition orbits;
};

struct BestLeaf {
  VertexSequence leaf;
  Coloring coloring;
  NodeInvariant invariant;
  Graph graph;
  // Target cell of each proper prefix of the leaf, by depth.
  std::vector<VertexSet> cells;
};

bool fixes_pointwise(const Permutation& sigma, const VertexSequence& nu) {
  return std::all_of(nu.items().begin(), nu.items().end(),
                     [&](Vertex v) { return sigma(v) == v; });
}

class Search {
 public:
  Search(const Graph& g, const Coloring& pi0, const SearchOptions& options,
         SearchObserver* observer)
      : g_(g), pi0_(pi0), options_(options), observer_(observer) {}

  CanonicalResult run() {
    RefinementLog log;
    const Coloring root = refine_root(g_, pi0_, &log);
    ++stats_.nodes;
    if (observer_) observer_->node_refined({}, nullptr, log);

    if (options_.pruning == PruningMode::kNone) {
      enumerate({}, root, {});
    } else if (root.is_discrete()) {
      ++stats_.leaves;
      take_leaf({}, root, {}, 0);
    } else {
      path_.push_back(make_node({}, root, {}));
      explore(0);
    }
    assert(best_);
    if (observer_) observer_->finished(best_->leaf, best_->coloring);

    CanonicalResult result;
    result.labelling = best_->coloring.as_permutation();
    result.canonical = ColoredGraph(best_->graph,
                                    act_coloring(pi0_, result.labelling));
    result.leaf = best_->leaf;
    result.leaf_coloring = best_->coloring;
    result.invariant = best_->invariant;
    result.generators = std::move(generators_);
    result.stats = stats_;
    return result;
  }

 private:
  PathNode make_node(VertexSequence seq, Coloring coloring,
                     NodeInvariant inv) {
    PathNode node;
    node.seq = std::move(seq);
    node.coloring = std::move(coloring);
    node.invariant = std::move(inv);
    node.cell = *target_cell(node.coloring);
    node.orbits = OrbitPartition(g_.n());
    return node;
  }

  // Records the leaf as best. `depth` path nodes precede it.
  void take_leaf(const VertexSequence& seq, const Coloring& pi,
                 const NodeInvariant& inv, std::size_t depth) {
    BestLeaf b;
    b.leaf = seq;
    b.coloring = pi;
    b.invariant = inv;
    b.graph = relabel_graph(g_, pi.as_permutation());
    for (std::size_t k = 0; k < depth; ++k) b.cells.push_back(path_[k].cell);
    best_ = std::move(b);
  }

  // Prunes the best path nodes at depths from-1 down to stop+1, after the
  // node at depth `from` has been pruned, and forgets the best leaf.
  void abandon_best(std::size_t from, std::size_t stop) {
    for (std::size_t j = from; j-- > stop + 1;) {
      ++stats_.parent_prunes;
      if (observer_) {
        observer_->parent_pruned(best_->leaf.prefix(j), best_->cells[j]);
      }
    }
    best_.reset();
  }

  void merge_orbits(std::size_t depth, const Permutation& sigma) {
    PathNode& node = path_[depth];
    for (Vertex v = 1; v <= g_.n(); ++v) {
      const Vertex w = sigma(v);
      if (node.orbits.same(v, w)) continue;
      if (observer_) {
        observer_->orbits_merged(node.seq, node.orbits.orbit_of(v),
                                 node.orbits.orbit_of(w), sigma, v, w);
      }
      node.orbits.merge(v, w);
    }
  }

  // Explores path_[d]; returns the depth to resume at, or kNoUnwind.
  int explore(std::size_t d) {
    {
      const PathNode& node = path_[d];
      if (observer_) {
        observer_->target_selected(node.seq, node.coloring, node.cell);
      }
    }
    if (options_.pruning == PruningMode::kAll) {
      for (const auto& sigma : generators_) {
        if (fixes_pointwise(sigma, path_[d].seq)) merge_orbits(d, sigma);
      }
    }

    const std::vector<Vertex> cell = path_[d].cell.items();
    for (Vertex w : cell) {
      if (options_.pruning == PruningMode::kAll) {
        const OrbitPartition& orbits = path_[d].orbits;
        if (orbits.min_of(w) < w) {
          ++stats_.orbit_prunes;
          if (observer_) {
            observer_->orbit_pruned(path_[d].seq, orbits.orbit_of(w),
                                    orbits.min_of(w), w);
          }
          continue;
        }
      }

      RefinementLog log;
      Coloring pi = refine_child(g_, path_[d].coloring, w, &log);
      VertexSequence seq = path_[d].seq.extended(w);
      ++stats_.nodes;
      if (observer_) observer_->node_refined(seq, &path_[d].coloring, log);
      NodeInvariant inv = path_[d].invariant.extended(hash_colored(g_, pi));
      const bool leaf = pi.is_discrete();
      if (leaf) ++stats_.leaves;
      const std::size_t dc = d + 1;

      if (best_) {
        const std::size_t l = best_->leaf.size();
        assert(dc <= l);
        const std::uint64_t h = inv[d];
        const std::uint64_t h_best = best_->invariant[d];
        if (h < h_best) {
          ++stats_.invariant_prunes;
          if (observer_) {
            observer_->invariant_pruned(best_->leaf.prefix(dc), seq);
          }
          continue;
        }
        if (h > h_best) {
          ++stats_.invariant_prunes;
          if (observer_) {
            observer_->invariant_pruned(seq, best_->leaf.prefix(dc));
          }
          abandon_best(dc, seq.common_prefix_length(best_->leaf));
        } else if (leaf && dc < l) {
          ++stats_.leaf_prunes;
          if (observer_) observer_->leaf_pruned(best_->leaf.prefix(dc), seq);
          continue;
        } else if (leaf) {
          const Graph leaf_graph = relabel_graph(g_, pi.as_permutation());
          const auto order = graph_compare(leaf_graph, best_->graph);
          if (order < 0) {
            ++stats_.leaf_prunes;
            if (observer_) observer_->leaf_pruned(best_->leaf, seq);
            continue;
          }
          if (order > 0) {
            ++stats_.leaf_prunes;
            if (observer_) observer_->leaf_pruned(seq, best_->leaf);
            abandon_best(l, seq.common_prefix_length(best_->leaf));
          } else {
            const int unwind = found_automorphism(seq, pi, d);
            if (unwind == static_cast<int>(d)) continue;
            return unwind;
          }
        } else if (dc == l) {
          ++stats_.leaf_prunes;
          if (observer_) observer_->leaf_pruned(seq, best_->leaf);
          abandon_best(l, seq.common_prefix_length(best_->leaf));
        }
      }

      if (leaf) {
        if (!best_) take_leaf(seq, pi, inv, dc);
        continue;
      }
      path_.push_back(make_node(std::move(seq), std::move(pi), std::move(inv)));
      const int unwind = explore(dc);
      path_.pop_back();
      if (unwind != kNoUnwind && unwind < static_cast<int>(d)) return unwind;
    }

    if (!path_[d].seq.is_prefix_of(best_->leaf)) {
      ++stats_.parent_prunes;
      if (observer_) observer_->parent_pruned(path_[d].seq, path_[d].cell);
    }
    return kNoUnwind;
  }

  // The leaf `seq` (child of path_[d]) has the same graph as the best leaf.
  // Returns the depth whose loop continues.
  int found_automorphism(const VertexSequence& seq, const Coloring& pi,
                         std::size_t d) {
    const Permutation sigma = compose(best_->coloring.as_permutation(),
                                      invert(pi.as_permutation()));
    ++stats_.automorphisms;
    ++stats_.automorphism_prunes;
    if (observer_) observer_->automorphism_found(sigma);
    generators_.push_back(sigma);

    if (options_.pruning != PruningMode::kAll) {
      if (observer_) observer_->automorphism_pruned(best_->leaf, seq, sigma);
      return static_cast<int>(d);
    }
    const std::size_t c = seq.common_prefix_length(best_->leaf);
    for (std::size_t k = 0; k <= c; ++k) merge_orbits(k, sigma);
    if (observer_) {
      observer_->automorphism_pruned(best_->leaf.prefix(c + 1),
                                     seq.prefix(c + 1), sigma);
    }
    return static_cast<int>(c);
  }

  // Exhaustive traversal without pruning.
  void enumerate(const VertexSequence& seq, const Coloring& pi,
                 const NodeInvariant& inv) {
    const auto cell = target_cell(pi);
    if (!cell) {
      ++stats_.leaves;
      if (!best_) {
        take_leaf(seq, pi, inv, 0);
        return;
      }
      if (inv < best_->invariant) return;
      const Graph leaf_graph = relabel_graph(g_, pi.as_permutation());
      if (inv > best_->invariant || graph_compare(leaf_graph, best_->graph) > 0) {
        take_leaf(seq, pi, inv, 0);
      }
      return;
    }
    if (observer_) observer_->target_selected(seq, pi, *cell);
    for (Vertex w : *cell) {
      RefinementLog log;
      const Coloring child = refine_child(g_, pi, w, &log);
      const VertexSequence child_seq = seq.extended(w);
      ++stats_.nodes;
      if (observer_) observer_->node_refined(child_seq, &pi, log);
      enumerate(child_seq, child, inv.extended(hash_colored(g_, child)));
    }
  }

  const Graph& g_;
  const Coloring& pi0_;
  SearchOptions options_;
  SearchObserver* observer_;

  std::vector<PathNode> path_;
  std::optional<BestLeaf> best_;
  std::vector<Permutation> generators_;
  SearchStats stats_;
};

}  // namespace

CanonicalResult canonical_form(const Graph& g, const Coloring& pi0,
                               const SearchOptions& options,
                               SearchObserver* observer) {
  if (g.n() != pi0.n()) {
    throw std::invalid_argument("canonical_form: coloring size mismatch");
  }
  return Search(g, pi0, options, observer).run();
}

// ----------------------------------------------------------- SearchTrace

std::string to_string(const VertexSequence& nu) {
  std::string s = "[";
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(nu[i]);
  }
  return s + "]";
}

namespace {

std::string set_string(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (Vertex v : s) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(v);
  }
  return out + "}";
}

}  // namespace

void SearchTrace::node_refined(const VertexSequence& nu, const Coloring*,
                               const RefinementLog& log) {
  events_.push_back("refine " + to_string(nu) + " steps=" +
                    std::to_string(log.steps.size() - 1));
}

void SearchTrace::target_selected(const VertexSequence& nu, const Coloring&,
                                  const VertexSet& cell) {
  events_.push_back("target " + to_string(nu) + " " + set_string(cell));
}

void SearchTrace::orbits_merged(const VertexSequence& nu,
                                const VertexSet& first,
                                const VertexSet& second, const Permutation&,
                                Vertex, Vertex) {
  events_.push_back("merge " + to_string(nu) + " " + set_string(first) + " " +
                    set_string(second));
}

void SearchTrace::orbit_pruned(const VertexSequence& nu, const VertexSet&,
                               Vertex smaller, Vertex larger) {
  events_.push_back("prune-orbit " + to_string(nu.extended(larger)) + " by " +
                    std::to_string(smaller));
}

void SearchTrace::invariant_pruned(const VertexSequence& winner,
                                   const VertexSequence& loser) {
  events_.push_back("prune-invariant " + to_string(loser) + " by " +
                    to_string(winner));
}

void SearchTrace::leaf_pruned(const VertexSequence& winner,
                              const VertexSequence& loser) {
  events_.push_back("prune-leaf " + to_string(loser) + " by " +
                    to_string(winner));
}

void SearchTrace::automorphism_found(const Permutation&) {
  events_.push_back("automorphism");
}

void SearchTrace::automorphism_pruned(const VertexSequence& smaller,
                                      const VertexSequence& pruned,
                                      const Permutation&) {
  events_.push_back("prune-automorphism " + to_string(pruned) + " by " +
                    to_string(smaller));
}

void SearchTrace::parent_pruned(const VertexSequence& nu, const VertexSet&) {
  events_.push_back("prune-parent " + to_string(nu));
}

void SearchTrace::finished(const VertexSequence& leaf, const Coloring&) {
  events_.push_back("canonical " + to_string(leaf));
}

}  // namespace canoncert
