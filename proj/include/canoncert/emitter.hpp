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

// Proof generation for canonical forms.
//
// emit_during records the search as it happens. emit_post replays the tree
// after the search, knowing the canonical leaf and the automorphisms found,
// and prunes as high as it can.

#ifndef CANONCERT_EMITTER_HPP_
#define CANONCERT_EMITTER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <unordered_set>
#include <vector>

#include "canoncert/core.hpp"
#include "canoncert/proof.hpp"
#include "canoncert/refine.hpp"
#include "canoncert/search.hpp"

namespace canoncert {

// Appends rules to a proof while tracking which facts they derive. A rule
// whose conclusion is already known is dropped. Emitting a rule whose
// premises are missing throws std::logic_error.
class ProofBuilder {
 public:
  ProofBuilder(const Graph& g, const Coloring& pi0);

  bool has(const Fact& fact) const;
  const ProofStream& stream() const { return stream_; }
  std::size_t rule_count() const { return rule_count_; }

  // Rules for the refinement of nu recorded in `log`; `parent` is the
  // coloring of nu's parent, null for the root.
  void refinement(const VertexSequence& nu, const Coloring* parent,
                  const RefinementLog& log);
  void target(const VertexSequence& nu);
  // Derives PhiEqual(a, b) for two nodes of equal depth whose invariants are
  // equal. Every node on both paths must have a known coloring.
  void phi_equal(const VertexSequence& a, const VertexSequence& b);
  // Derives OrbitSubset(nu, {v}).
  void singleton_orbit(const VertexSequence& nu, Vertex v);
  void merge_orbits(const VertexSequence& nu, const VertexSet& first,
                    const VertexSet& second, const Permutation& sigma,
                    Vertex w1, Vertex w2);
  void prune_orbits(const VertexSequence& nu, const VertexSet& orbit,
                    Vertex smaller, Vertex larger);
  void prune_invariant(const VertexSequence& winner,
                       const VertexSequence& loser);
  void prune_leaf(const VertexSequence& winner, const VertexSequence& loser);
  void prune_automorphism(const VertexSequence& smaller,
                          const VertexSequence& pruned,
                          const Permutation& sigma);
  void prune_parent(const VertexSequence& nu);
  // PathAxiom, ExtendPath along the leaf, CanonicalLeaf.
  void conclude(const VertexSequence& leaf);

  // Coloring of a refined node; throws std::logic_error if unknown.
  const Coloring& coloring_of(const VertexSequence& nu) const;
  const VertexSet& target_of(const VertexSequence& nu) const;

  // Everything emitted after a checkpoint can be withdrawn.
  struct Checkpoint {
    std::size_t ints;
    std::size_t rules;
    std::size_t undo;
  };
  Checkpoint checkpoint() const;
  void rollback(const Checkpoint& cp);

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };

  void require(const Fact& fact) const;
  // Returns false if the conclusion was already known.
  bool emit(const Rule& rule, const Fact& conclusion);

  const Graph& g_;
  Coloring pi0_;
  ProofStream stream_;
  std::size_t rule_count_ = 0;
  std::unordered_set<std::vector<std::uint32_t>, KeyHash> facts_;
  std::map<VertexSequence, Coloring> colorings_;
  std::map<VertexSequence, VertexSet> targets_;

  struct Undo {
    enum class Kind { kFact, kColoring, kTarget } kind;
    std::vector<std::uint32_t> fact;
    VertexSequence node;
  };
  std::vector<Undo> undo_;
};

struct ProvedResult {
  CanonicalResult result;
  ProofStream proof;
};

// Searches and records the proof along the way. Throws
// std::invalid_argument for PruningMode::kNone, which prunes nothing and so
// cannot justify the path to the canonical leaf.
ProvedResult emit_during(const Graph& g, const Coloring& pi0,
                         const SearchOptions& options = {});

// Proof for a finished search on (g, pi0). Works with a result from any
// pruning mode; automorphisms missing from result.generators are
// rediscovered as needed.
ProofStream emit_post(const Graph& g, const Coloring& pi0,
                      const CanonicalResult& result);

enum class ProofStrategy { kDuring, kPost };

// Convenience: search and prove with the given strategy.
ProvedResult prove(const Graph& g, const Coloring& pi0,
                   ProofStrategy strategy);

}  // namespace canoncert

#endif  // CANONCERT_EMITTER_HPP_
