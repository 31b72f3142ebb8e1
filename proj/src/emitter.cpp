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

#include "canoncert/emitter.hpp"

#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>

#include "canoncert/invariant.hpp"

namespace canoncert {

// --------------------------------------------------------- ProofBuilder

std::size_t ProofBuilder::KeyHash::operator()(
    const std::vector<std::uint32_t>& key) const {
  std::uint64_t h = kFnvOffsetBasis;
  for (std::uint32_t v : key) {
    h ^= v;
    h *= kFnvPrime;
  }
  return static_cast<std::size_t>(h);
}

ProofBuilder::ProofBuilder(const Graph& g, const Coloring& pi0)
    : g_(g), pi0_(pi0), stream_(g.n()) {}

bool ProofBuilder::has(const Fact& fact) const {
  return facts_.contains(fact_key(fact));
}

void ProofBuilder::require(const Fact& fact) const {
  if (!has(fact)) {
    throw std::logic_error("proof emission needs missing fact " +
                           describe(fact));
  }
}

bool ProofBuilder::emit(const Rule& rule, const Fact& conclusion) {
  auto key = fact_key(conclusion);
  if (facts_.contains(key)) return false;
  stream_.append(rule);
  ++rule_count_;
  facts_.insert(key);
  undo_.push_back({Undo::Kind::kFact, std::move(key), {}});
  return true;
}

const Coloring& ProofBuilder::coloring_of(const VertexSequence& nu) const {
  const auto it = colorings_.find(nu);
  if (it == colorings_.end()) {
    throw std::logic_error("no coloring known for node " + to_string(nu));
  }
  return it->second;
}

const VertexSet& ProofBuilder::target_of(const VertexSequence& nu) const {
  const auto it = targets_.find(nu);
  if (it == targets_.end()) {
    throw std::logic_error("no target cell known for node " + to_string(nu));
  }
  return it->second;
}

void ProofBuilder::refinement(const VertexSequence& nu, const Coloring* parent,
                              const RefinementLog& log) {
  const Coloring& result = log.steps.back();
  if (has(REqual{nu, result})) return;
  if (parent == nullptr) {
    emit(ColoringAxiom{}, RFiner{nu, log.steps.front()});
  } else {
    const VertexSequence up = nu.parent();
    require(REqual{up, *parent});
    emit(Individualize{up, nu.back(), *parent}, RFiner{nu, log.steps.front()});
  }
  for (std::size_t k = 1; k < log.steps.size(); ++k) {
    emit(SplitColoring{nu, log.steps[k - 1]}, RFiner{nu, log.steps[k]});
  }
  emit(Equitable{nu, result}, REqual{nu, result});
  if (colorings_.emplace(nu, result).second) {
    undo_.push_back({Undo::Kind::kColoring, {}, nu});
  }
}

void ProofBuilder::target(const VertexSequence& nu) {
  const Coloring& pi = coloring_of(nu);
  const auto cell = target_cell(pi);
  if (!cell) throw std::logic_error("target of a leaf " + to_string(nu));
  emit(TargetCell{nu, pi}, TargetIs{nu, *cell});
  if (targets_.emplace(nu, *cell).second) {
    undo_.push_back({Undo::Kind::kTarget, {}, nu});
  }
}

void ProofBuilder::phi_equal(const VertexSequence& a, const VertexSequence& b) {
  if (a.size() != b.size()) {
    throw std::logic_error("invariant equality across depths");
  }
  if (a == b) {
    emit(InvariantAxiom{a}, PhiEqual{a, a});
    return;
  }
  if (has(PhiEqual{a, b})) return;
  if (has(PhiEqual{b, a})) {
    emit(InvariantsEqualSym{b, a}, PhiEqual{a, b});
    return;
  }
  phi_equal(a.parent(), b.parent());
  emit(InvariantsEqual{a, coloring_of(a), b, coloring_of(b)}, PhiEqual{a, b});
}

void ProofBuilder::singleton_orbit(const VertexSequence& nu, Vertex v) {
  emit(OrbitsAxiom{v, nu}, OrbitSubset{nu, VertexSet{v}});
}

void ProofBuilder::merge_orbits(const VertexSequence& nu,
                                const VertexSet& first,
                                const VertexSet& second,
                                const Permutation& sigma, Vertex w1,
                                Vertex w2) {
  for (const VertexSet* orbit : {&first, &second}) {
    if (orbit->size() == 1) {
      singleton_orbit(nu, orbit->min());
    } else {
      require(OrbitSubset{nu, *orbit});
    }
  }
  std::vector<Vertex> joined = first.items();
  joined.insert(joined.end(), second.begin(), second.end());
  emit(MergeOrbits{first, second, nu, sigma, w1, w2},
       OrbitSubset{nu, VertexSet(std::move(joined))});
}

void ProofBuilder::prune_orbits(const VertexSequence& nu,
                                const VertexSet& orbit, Vertex smaller,
                                Vertex larger) {
  require(OrbitSubset{nu, orbit});
  emit(PruneOrbits{orbit, nu, smaller, larger}, Pruned{nu.extended(larger)});
}

void ProofBuilder::prune_invariant(const VertexSequence& winner,
                                   const VertexSequence& loser) {
  phi_equal(winner.parent(), loser.parent());
  emit(PruneInvariant{winner, coloring_of(winner), loser, coloring_of(loser)},
       Pruned{loser});
}

void ProofBuilder::prune_leaf(const VertexSequence& winner,
                              const VertexSequence& loser) {
  phi_equal(winner, loser);
  emit(PruneLeaf{winner, coloring_of(winner), loser, coloring_of(loser)},
       Pruned{loser});
}

void ProofBuilder::prune_automorphism(const VertexSequence& smaller,
                                      const VertexSequence& pruned,
                                      const Permutation& sigma) {
  emit(PruneAutomorphism{smaller, pruned, sigma}, Pruned{pruned});
}

void ProofBuilder::prune_parent(const VertexSequence& nu) {
  const VertexSet& cell = target_of(nu);
  for (Vertex w : cell) require(Pruned{nu.extended(w)});
  emit(PruneParent{nu, cell}, Pruned{nu});
}

void ProofBuilder::conclude(const VertexSequence& leaf) {
  emit(PathAxiom{}, OnPath{{}});
  for (std::size_t j = 0; j < leaf.size(); ++j) {
    const VertexSequence node = leaf.prefix(j);
    const VertexSet& cell = target_of(node);
    for (Vertex w : cell) {
      if (w != leaf[j]) require(Pruned{node.extended(w)});
    }
    emit(ExtendPath{node, cell, leaf[j]}, OnPath{leaf.prefix(j + 1)});
  }
  const Coloring& pi = coloring_of(leaf);
  const Permutation labelling = pi.as_permutation();
  emit(CanonicalLeaf{leaf, pi},
       Canonical{ColoredGraph(relabel_graph(g_, labelling),
                              act_coloring(pi0_, labelling))});
}

ProofBuilder::Checkpoint ProofBuilder::checkpoint() const {
  return {stream_.ints().size(), rule_count_, undo_.size()};
}

void ProofBuilder::rollback(const Checkpoint& cp) {
  while (undo_.size() > cp.undo) {
    const Undo& u = undo_.back();
    switch (u.kind) {
      case Undo::Kind::kFact:
        facts_.erase(u.fact);
        break;
      case Undo::Kind::kColoring:
        colorings_.erase(u.node);
        break;
      case Undo::Kind::kTarget:
        targets_.erase(u.node);
        break;
    }
    undo_.pop_back();
  }
  stream_.truncate(cp.ints);
  rule_count_ = cp.rules;
}

// ---------------------------------------------------------------- during

namespace {

class DuringEmitter : public SearchObserver {
 public:
  explicit DuringEmitter(ProofBuilder& builder) : b_(builder) {}

  void node_refined(const VertexSequence& nu, const Coloring* parent,
                    const RefinementLog& log) override {
    b_.refinement(nu, parent, log);
  }
  void target_selected(const VertexSequence& nu, const Coloring&,
                       const VertexSet&) override {
    b_.target(nu);
  }
  void orbits_merged(const VertexSequence& nu, const VertexSet& first,
                     const VertexSet& second, const Permutation& sigma,
                     Vertex w1, Vertex w2) override {
    b_.merge_orbits(nu, first, second, sigma, w1, w2);
  }
  void orbit_pruned(const VertexSequence& nu, const VertexSet& orbit,
                    Vertex smaller, Vertex larger) override {
    b_.prune_orbits(nu, orbit, smaller, larger);
  }
  void invariant_pruned(const VertexSequence& winner,
                        const VertexSequence& loser) override {
    b_.prune_invariant(winner, loser);
  }
  void leaf_pruned(const VertexSequence& winner,
                   const VertexSequence& loser) override {
    b_.prune_leaf(winner, loser);
  }
  void automorphism_pruned(const VertexSequence& smaller,
                           const VertexSequence& pruned,
                           const Permutation& sigma) override {
    b_.prune_automorphism(smaller, pruned, sigma);
  }
  void parent_pruned(const VertexSequence& nu, const VertexSet&) override {
    b_.prune_parent(nu);
  }
  void finished(const VertexSequence& leaf, const Coloring&) override {
    b_.conclude(leaf);
  }

 private:
  ProofBuilder& b_;
};

// ------------------------------------------------------------------ post

struct Symmetry {
  Permutation forward;
  Permutation backward;
};

class PostEmitter {
 public:
  PostEmitter(const Graph& g, const Coloring& pi0,
              const CanonicalResult& result)
      : g_(g), pi0_(pi0), result_(result), b_(g, pi0) {
    for (const auto& sigma : result.generators) add_symmetry(sigma);
    best_graph_ = relabel_graph(g, result.leaf_coloring.as_permutation());
  }

  ProofStream run() {
    const VertexSequence& leaf = result_.leaf;
    const std::size_t l = leaf.size();

    std::vector<Coloring> path;
    RefinementLog log;
    path.push_back(refine_root(g_, pi0_, &log));
    b_.refinement({}, nullptr, log);
    for (std::size_t j = 0; j < l; ++j) {
      const VertexSequence node = leaf.prefix(j);
      b_.target(node);
      path.push_back(refine_child(g_, path[j], leaf[j], &log));
      b_.refinement(leaf.prefix(j + 1), &path[j], log);
    }
    if (path.back() != result_.leaf_coloring) {
      throw std::logic_error("search result does not match its leaf");
    }

    for (std::size_t d = 0; d < l; ++d) {
      const VertexSequence node = leaf.prefix(d);
      const std::vector<Vertex> cell = b_.target_of(node).items();
      for (Vertex w : cell) {
        if (w == leaf[d]) continue;
        prune_sibling(node, path[d], w, d);
      }
    }
    b_.conclude(leaf);
    return b_.stream();
  }

 private:
  void add_symmetry(const Permutation& sigma) {
    symmetries_.push_back({sigma, sigma.inverse()});
  }

  // Child [nu, w] of a node on the canonical path.
  void prune_sibling(const VertexSequence& nu, const Coloring& pi, Vertex w,
                     std::size_t d) {
    const VertexSequence child = nu.extended(w);
    if (try_automorphism(nu, w)) return;
    const auto cp = b_.checkpoint();
    const auto sigma = examine(nu, pi, w, d);
    if (!sigma) return;
    // A leaf under `child` matches the canonical leaf, so sigma maps the
    // canonical path's child at this depth onto `child`.
    b_.rollback(cp);
    add_symmetry(*sigma);
    b_.prune_automorphism(result_.leaf.prefix(d + 1), child, *sigma);
  }

  // Prunes [nu, w] if a known automorphism maps a lexicographically smaller
  // node onto it.
  bool try_automorphism(const VertexSequence& nu, Vertex w) {
    const VertexSequence child = nu.extended(w);
    for (const auto& s : symmetries_) {
      const VertexSequence image = child.image(s.forward);
      if (image < child) {
        b_.prune_automorphism(image, child, s.backward);
        return true;
      }
    }
    // Compose automorphisms fixing nu to reach the smallest vertex of w's
    // orbit; reached[x] maps w to x.
    std::vector<const Symmetry*> fixing;
    for (const auto& s : symmetries_) {
      bool fixes = true;
      for (Vertex v : nu.items()) fixes = fixes && s.forward(v) == v;
      if (fixes) fixing.push_back(&s);
    }
    if (fixing.empty()) return false;
    std::map<Vertex, Permutation> reached;
    reached.emplace(w, Permutation::identity(g_.n()));
    std::deque<Vertex> queue{w};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (const Symmetry* s : fixing) {
        for (const Permutation* p : {&s->forward, &s->backward}) {
          const Vertex y = (*p)(x);
          if (reached.contains(y)) continue;
          reached.emplace(y, compose(reached.at(x), *p));
          queue.push_back(y);
        }
      }
    }
    const auto& [m, to_m] = *reached.begin();
    if (m >= w) return false;
    b_.prune_automorphism(nu.extended(m), child, to_m.inverse());
    return true;
  }

  // Refines [nu, w] and prunes it, descending while its invariant matches
  // the canonical path. Returns an automorphism that maps the canonical
  // leaf onto a leaf below [nu, w], if one turns up; the caller then
  // withdraws everything emitted for this subtree.
  std::optional<Permutation> examine(const VertexSequence& nu,
                                     const Coloring& pi, Vertex w,
                                     std::size_t d) {
    const VertexSequence& leaf = result_.leaf;
    const std::size_t l = leaf.size();
    const VertexSequence child = nu.extended(w);
    RefinementLog log;
    const Coloring child_pi = refine_child(g_, pi, w, &log);
    b_.refinement(child, &pi, log);

    const std::uint64_t h = hash_colored(g_, child_pi);
    if (h < result_.invariant[d]) {
      b_.prune_invariant(leaf.prefix(d + 1), child);
      return std::nullopt;
    }
    if (h > result_.invariant[d]) {
      throw std::logic_error("node " + to_string(child) +
                             " beats the canonical invariant");
    }
    if (child_pi.is_discrete()) {
      if (d + 1 < l) {
        b_.prune_leaf(leaf.prefix(d + 1), child);
        return std::nullopt;
      }
      const Graph leaf_graph = relabel_graph(g_, child_pi.as_permutation());
      const auto order = graph_compare(leaf_graph, best_graph_);
      if (order < 0) {
        b_.prune_leaf(leaf, child);
        return std::nullopt;
      }
      if (order > 0) {
        throw std::logic_error("leaf " + to_string(child) +
                               " beats the canonical graph");
      }
      return compose(result_.leaf_coloring.as_permutation(),
                     invert(child_pi.as_permutation()));
    }
    if (d + 1 >= l) {
      throw std::logic_error("node " + to_string(child) +
                             " outlives the canonical leaf");
    }
    b_.target(child);
    const std::vector<Vertex> cell = b_.target_of(child).items();
    for (Vertex x : cell) {
      if (try_automorphism(child, x)) continue;
      if (auto sigma = examine(child, child_pi, x, d + 1)) return sigma;
    }
    b_.prune_parent(child);
    return std::nullopt;
  }

  const Graph& g_;
  const Coloring& pi0_;
  const CanonicalResult& result_;
  ProofBuilder b_;
  Graph best_graph_;
  std::vector<Symmetry> symmetries_;
};

}  // namespace

ProvedResult emit_during(const Graph& g, const Coloring& pi0,
                         const SearchOptions& options) {
  if (options.pruning == PruningMode::kNone) {
    throw std::invalid_argument("proofs need a pruning search");
  }
  ProofBuilder builder(g, pi0);
  DuringEmitter observer(builder);
  ProvedResult out;
  out.result = canonical_form(g, pi0, options, &observer);
  out.proof = builder.stream();
  return out;
}

ProofStream emit_post(const Graph& g, const Coloring& pi0,
                      const CanonicalResult& result) {
  return PostEmitter(g, pi0, result).run();
}

ProvedResult prove(const Graph& g, const Coloring& pi0,
                   ProofStrategy strategy) {
  if (strategy == ProofStrategy::kDuring) return emit_during(g, pi0);
  ProvedResult out;
  out.result = canonical_form(g, pi0);
  out.proof = emit_post(g, pi0, out.result);
  return out;
}

}  // namespace canoncert
