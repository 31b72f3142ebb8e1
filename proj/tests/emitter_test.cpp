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

#include <gtest/gtest.h>

#include <random>

#include "canoncert/checker.hpp"
#include "canoncert/emitter.hpp"
#include "canoncert/search.hpp"
#include "support/oracle.hpp"

namespace canoncert {
namespace {

const Graph kK3 = Graph::from_edges(3, {{1, 2}, {1, 3}, {2, 3}});
const Graph kC4 = Graph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});

void expect_accepted(const Graph& g, const Coloring& pi0,
                     const ProofStream& proof, const ColoredGraph& expected) {
  for (auto backend : {DatabaseBackend::kFlat, DatabaseBackend::kTrie}) {
    const Verdict v = verify_proof(g, pi0, proof, backend);
    ASSERT_TRUE(v.accepted) << backend_name(backend) << ": "
                            << failure_name(v.failure->reason) << " at "
                            << v.failure->rule_index << ": "
                            << v.failure->detail;
    ASSERT_EQ(*v.canonical, expected);
  }
}

TEST(EmitterTest, TriangleBothStrategies) {
  const Coloring unit = Coloring::unit(3);
  for (auto strategy : {ProofStrategy::kDuring, ProofStrategy::kPost}) {
    const ProvedResult proved = prove(kK3, unit, strategy);
    EXPECT_EQ(proved.result.canonical.graph, kK3);
    expect_accepted(kK3, unit, proved.proof, proved.result.canonical);
  }
}

TEST(EmitterTest, FourCycleBothStrategies) {
  const Coloring unit = Coloring::unit(4);
  const ProvedResult during = emit_during(kC4, unit);
  const ProofStream post = emit_post(kC4, unit, during.result);
  const std::vector<Edge> expected = {{1, 3}, {1, 4}, {2, 3}, {2, 4}};
  EXPECT_EQ(during.result.canonical.graph.edges(), expected);
  expect_accepted(kC4, unit, during.proof, during.result.canonical);
  expect_accepted(kC4, unit, post, during.result.canonical);
  EXPECT_LE(post.byte_size(), during.proof.byte_size());
}

TEST(EmitterTest, RigidTree) {
  const Graph tree = oracle::spider({1, 2, 3});
  ASSERT_EQ(tree.n(), 7u);
  const Coloring unit = Coloring::unit(7);
  const ProvedResult during = emit_during(tree, unit);
  EXPECT_TRUE(during.result.generators.empty());
  expect_accepted(tree, unit, during.proof, during.result.canonical);
  expect_accepted(tree, unit, emit_post(tree, unit, during.result),
                  during.result.canonical);
}

TEST(EmitterTest, DuringRejectsUnprunedSearch) {
  EXPECT_THROW(emit_during(kC4, Coloring::unit(4), {PruningMode::kNone}),
               std::invalid_argument);
}

TEST(EmitterTest, PostWorksFromAnyPruningMode) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Graph g = trial % 3 == 0 ? oracle::cycle_graph(n)
                                   : oracle::random_graph(n, 0.4, rng);
    const Coloring unit = Coloring::unit(n);
    for (auto mode : {PruningMode::kAll, PruningMode::kInvariantOnly,
                      PruningMode::kNone}) {
      const CanonicalResult r = canonical_form(g, unit, {mode});
      expect_accepted(g, unit, emit_post(g, unit, r), r.canonical);
    }
  }
}

TEST(EmitterTest, ColoredInputsAndInvariantOnlySearch) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 14;
    const Graph g = oracle::random_graph(n, 0.3, rng);
    const Coloring pi0 = oracle::random_coloring(n, 3, rng);
    const PruningMode mode =
        trial % 2 ? PruningMode::kAll : PruningMode::kInvariantOnly;
    const ProvedResult during = emit_during(g, pi0, {mode});
    const ProofStream post = emit_post(g, pi0, during.result);
    expect_accepted(g, pi0, during.proof, during.result.canonical);
    expect_accepted(g, pi0, post, during.result.canonical);
    if (mode == PruningMode::kAll) {
      EXPECT_LE(post.byte_size(), during.proof.byte_size());
    }
  }
}

// No rule re-derives a fact that is already known.
TEST(EmitterTest, EveryRuleDerivesANewFact) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 10;
    const Graph g = trial % 4 == 0 ? oracle::complete_bipartite(2, n - 2)
                                   : oracle::random_graph(n, 0.3, rng);
    const Coloring unit = Coloring::unit(n);
    const ProvedResult during = emit_during(g, unit);
    const ProofStream post = emit_post(g, unit, during.result);
    for (const ProofStream* stream : {&during.proof, &post}) {
      auto db = FactDatabase::create(DatabaseBackend::kFlat);
      for (const Rule& rule : stream->rules()) {
        const std::size_t before = db->size();
        apply_rule(*db, g, unit, rule);
        ASSERT_EQ(db->size(), before + 1) << rule_name(rule);
      }
    }
  }
}

// Dropping any single rule from a post-search proof breaks it: every fact
// it derives is used on the way to the canonical form.
TEST(EmitterTest, PostProofHasNoUnusedRules) {
  std::mt19937_64 rng(54);
  std::vector<Graph> graphs = {kC4, kK3, oracle::petersen_graph(),
                               oracle::complete_bipartite(2, 3),
                               oracle::spider({1, 2, 3})};
  for (int k = 0; k < 15; ++k) {
    graphs.push_back(oracle::random_graph(4 + k % 6, 0.4, rng));
  }
  for (const Graph& g : graphs) {
    const Coloring unit = Coloring::unit(g.n());
    const ProofStream post = emit_post(g, unit, canonical_form(g));
    const auto rules = post.rules();
    for (std::size_t skip = 0; skip < rules.size(); ++skip) {
      ProofStream reduced(g.n());
      for (std::size_t k = 0; k < rules.size(); ++k) {
        if (k != skip) reduced.append(rules[k]);
      }
      EXPECT_FALSE(verify_proof(g, unit, reduced).accepted)
          << "rule " << skip << " (" << rule_name(rules[skip])
          << ") is not needed";
    }
  }
}

}  // namespace
}  // namespace canoncert
