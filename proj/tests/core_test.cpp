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
#include <stdexcept>

#include "canoncert/core.hpp"
#include "support/oracle.hpp"

namespace canoncert {
namespace {

const Graph kP3 = Graph::from_edges(3, {{1, 2}, {2, 3}});
const Graph kK3 = Graph::from_edges(3, {{1, 2}, {1, 3}, {2, 3}});
const Graph kC4 = Graph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});

Permutation swap(std::size_t n, Vertex a, Vertex b) {
  std::vector<Vertex> images(n);
  for (Vertex v = 1; v <= n; ++v) images[v - 1] = v;
  std::swap(images[a - 1], images[b - 1]);
  return Permutation(images);
}

TEST(GraphTest, FromEdgesMergesDuplicatesAndReversals) {
  const Graph g = Graph::from_edges(3, {{1, 2}, {2, 1}, {1, 2}, {3, 2}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{1, 2}, {2, 3}}));
  EXPECT_TRUE(g.adjacent(2, 1));
  EXPECT_FALSE(g.adjacent(1, 3));
  EXPECT_EQ(g.degree(2), 2u);
}

TEST(GraphTest, RejectsSelfLoopsAndOutOfRange) {
  EXPECT_THROW(Graph::from_edges(3, {{2, 2}}), std::invalid_argument);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(Graph::from_edges(3, {{1, 4}}), std::invalid_argument);
}

TEST(GraphTest, WideGraphsSpanSeveralWords) {
  std::mt19937_64 rng(7);
  const Graph g = oracle::random_graph(150, 0.2, rng);
  EXPECT_EQ(g.words_per_row(), 3u);
  std::size_t degree_sum = 0;
  for (Vertex v = 1; v <= 150; ++v) degree_sum += g.degree(v);
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
  for (const auto& [u, v] : g.edges()) EXPECT_TRUE(g.adjacent(v, u));
}

TEST(GraphTest, CountNeighborsAgainstMask) {
  const std::vector<Vertex> cell = {2, 4};
  const auto mask = kC4.mask_of(cell);
  EXPECT_EQ(kC4.count_neighbors(1, mask), 2u);
  EXPECT_EQ(kC4.count_neighbors(3, mask), 2u);
  EXPECT_EQ(kC4.count_neighbors(2, mask), 0u);
}

TEST(PermutationTest, ValidatesBijection) {
  EXPECT_THROW(Permutation({1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Permutation({0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Permutation({1, 2, 4}), std::invalid_argument);
  EXPECT_TRUE(Permutation::identity(4).is_identity());
}

TEST(ColoringTest, ValidatesSurjectivity) {
  EXPECT_THROW(Coloring({1, 3, 3}), std::invalid_argument);
  EXPECT_THROW(Coloring({0, 1}), std::invalid_argument);
  const Coloring pi({2, 1, 2});
  EXPECT_EQ(pi.cell_count(), 2u);
  EXPECT_EQ(pi.cell(2), (std::vector<Vertex>{1, 3}));
  EXPECT_FALSE(pi.is_discrete());
  EXPECT_THROW(pi.as_permutation(), std::logic_error);
}

TEST(ColoringTest, FromCellsFollowsCellOrder) {
  const Coloring pi = Coloring::from_cells(4, {{1}, {3}, {2, 4}});
  EXPECT_EQ(pi.colors(), (std::vector<Color>{1, 3, 2, 3}));
  EXPECT_EQ(pi.cells(),
            (std::vector<std::vector<Vertex>>{{1}, {3}, {2, 4}}));
  EXPECT_THROW(Coloring::from_cells(4, {{1}, {2, 4}}), std::invalid_argument);
}

TEST(VertexSequenceTest, RejectsDuplicates) {
  EXPECT_THROW(VertexSequence({1, 2, 1}), std::invalid_argument);
  const VertexSequence nu{3, 1};
  EXPECT_THROW(nu.extended(3), std::invalid_argument);
  EXPECT_EQ(nu.extended(2), (VertexSequence{3, 1, 2}));
  EXPECT_TRUE(nu.is_prefix_of(VertexSequence{3, 1, 2}));
  EXPECT_EQ(nu.common_prefix_length(VertexSequence{3, 2}), 1u);
  EXPECT_LT(VertexSequence({1, 2}), VertexSequence({1, 4}));
  EXPECT_LT(VertexSequence({1}), VertexSequence({1, 2}));
}

TEST(VertexSetTest, SortsAndDeduplicates) {
  const VertexSet s{4, 2, 4, 1};
  EXPECT_EQ(s.items(), (std::vector<Vertex>{1, 2, 4}));
  EXPECT_EQ(s.min(), 1u);
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(3));
}

TEST(RelabelTest, IdentityLeavesGraphUnchanged) {
  EXPECT_EQ(relabel_graph(kC4, Permutation::identity(4)), kC4);
}

TEST(RelabelTest, SwapOnPath) {
  const Graph g = relabel_graph(kP3, swap(3, 1, 2));
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{1, 2}, {1, 3}}));
}

TEST(RelabelTest, InverseUndoes) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::random_graph(20, 0.3, rng);
    const Permutation s = oracle::random_permutation(20, rng);
    EXPECT_EQ(relabel_graph(relabel_graph(g, s), invert(s)), g);
  }
}

TEST(RelabelTest, SizeMismatchThrows) {
  EXPECT_THROW(relabel_graph(kC4, Permutation::identity(3)),
               std::invalid_argument);
  EXPECT_THROW(act_coloring(Coloring::unit(4), Permutation::identity(3)),
               std::invalid_argument);
}

TEST(ActColoringTest, IdentityAndSwap) {
  const Coloring pi = Coloring::from_cells(3, {{1}, {2, 3}});
  EXPECT_EQ(act_coloring(pi, Permutation::identity(3)), pi);
  const Coloring acted = act_coloring(pi, swap(3, 1, 3));
  EXPECT_EQ(acted, Coloring::from_cells(3, {{3}, {1, 2}}));
}

TEST(ActColoringTest, DiscreteColoringComposesWithInverse) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Permutation pi = oracle::random_permutation(9, rng);
    const Permutation sigma = oracle::random_permutation(9, rng);
    const Coloring as_coloring(pi.images());
    EXPECT_EQ(act_coloring(as_coloring, sigma).as_permutation(),
              compose(invert(sigma), pi));
  }
}

TEST(ComposeTest, LeftToRight) {
  const Permutation s = compose(swap(3, 1, 2), swap(3, 2, 3));
  EXPECT_EQ(s.images(), (std::vector<Vertex>{3, 1, 2}));
  EXPECT_EQ(compose(s, Permutation::identity(3)), s);
  EXPECT_TRUE(compose(s, invert(s)).is_identity());
}

TEST(GraphCompareTest, RowMajorBitOrder) {
  EXPECT_EQ(graph_compare(kC4, kC4), std::strong_ordering::equal);
  EXPECT_EQ(graph_compare(kK3, kP3), std::strong_ordering::greater);
  EXPECT_EQ(graph_compare(Graph(3), kP3), std::strong_ordering::less);
}

TEST(GraphCompareTest, MatchesFlatMatrixComparison) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 80;
    const Graph a = oracle::random_graph(n, 0.5, rng);
    const Graph b = trial % 5 == 0 ? a : oracle::random_graph(n, 0.5, rng);
    std::vector<char> ma, mb;
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = 1; v <= n; ++v) {
        ma.push_back(a.adjacent(u, v));
        mb.push_back(b.adjacent(u, v));
      }
    }
    EXPECT_EQ(graph_compare(a, b), ma <=> mb);
  }
}

TEST(IsFinerTest, Examples) {
  const Coloring pi = Coloring::from_cells(3, {{2}, {1, 3}});
  EXPECT_TRUE(is_finer(pi, pi));
  EXPECT_TRUE(is_finer(pi, Coloring::unit(3)));
  EXPECT_FALSE(is_finer(Coloring::from_cells(3, {{1}, {2, 3}}), pi));
  EXPECT_FALSE(is_finer(Coloring::unit(3), pi));
}

TEST(IsAutomorphismTest, Examples) {
  const ColoredGraph c4(kC4, Coloring::unit(4));
  EXPECT_TRUE(is_automorphism(c4, Permutation::identity(4)));
  EXPECT_TRUE(is_automorphism(c4, swap(4, 2, 4)));
  EXPECT_FALSE(is_automorphism(ColoredGraph(kP3, Coloring::unit(3)),
                               swap(3, 1, 2)));
  // Color-preservation matters.
  EXPECT_FALSE(is_automorphism(kC4, Coloring::from_cells(4, {{2}, {1, 3, 4}}),
                               swap(4, 2, 4)));
}

}  // namespace
}  // namespace canoncert
