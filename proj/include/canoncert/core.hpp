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

// Graphs, colorings, permutations and the actions of permutations on them.
//
// Vertices and colors are 1-based throughout the library. Only the proof
// wire format shifts them to 0-based.

#ifndef CANONCERT_CORE_HPP_
#define CANONCERT_CORE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace canoncert {

using Vertex = std::uint32_t;
using Color = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class Permutation;

// Undirected simple graph on vertices 1..n with a dense adjacency matrix.
//
// Row v is a bit string over columns 1..n. Column c lives in word (c-1)/64 at
// bit 63-(c-1)%64, so comparing rows word by word as unsigned integers is the
// same as comparing the bit strings lexicographically.
class Graph {
 public:
  Graph() = default;
  // Empty graph on n vertices.
  explicit Graph(std::size_t n);

  // Duplicate and reversed edges are merged. Throws std::invalid_argument on
  // self-loops or endpoints outside 1..n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  static Graph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::size_t n() const { return n_; }
  std::size_t words_per_row() const { return words_; }
  bool adjacent(Vertex u, Vertex v) const;
  std::size_t degree(Vertex v) const;
  std::size_t edge_count() const;
  // Edges (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  std::span<const std::uint64_t> row(Vertex v) const {
    return {bits_.data() + (v - 1) * words_, words_};
  }
  // Bit mask over the same column layout as the rows.
  std::vector<std::uint64_t> mask_of(std::span<const Vertex> vertices) const;
  // Number of neighbours of v inside the set described by `mask`.
  std::size_t count_neighbors(Vertex v,
                              std::span<const std::uint64_t> mask) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph relabel_graph(const Graph& g, const Permutation& sigma);
  void set_edge(Vertex u, Vertex v);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// A bijection on 1..n stored as the image sequence of 1..n.
class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless `images` is a bijection on 1..n.
  explicit Permutation(std::vector<Vertex> images);
  static Permutation identity(std::size_t n);

  std::size_t n() const { return images_.size(); }
  Vertex operator()(Vertex v) const { return images_[v - 1]; }
  const std::vector<Vertex>& images() const { return images_; }
  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> images_;
};

// Surjective map from 1..n onto colors 1..m. Cell k is the preimage of k.
class Coloring {
 public:
  Coloring() = default;
  // Throws std::invalid_argument unless `colors` is surjective onto 1..m.
  explicit Coloring(std::vector<Color> colors);
  static Coloring unit(std::size_t n);
  // Cells listed in color order; must partition 1..n.
  static Coloring from_cells(std::size_t n,
                             const std::vector<std::vector<Vertex>>& cells);

  std::size_t n() const { return colors_.size(); }
  std::size_t cell_count() const { return cell_count_; }
  Color operator()(Vertex v) const { return colors_[v - 1]; }
  const std::vector<Color>& colors() const { return colors_; }
  bool is_discrete() const { return cell_count_ == colors_.size(); }

  // Members of cell k in increasing order.
  std::vector<Vertex> cell(Color k) const;
  std::vector<std::vector<Vertex>> cells() const;
  std::size_t cell_size(Color k) const;

  // The discrete coloring read as the permutation v -> color(v).
  // Throws std::logic_error when the coloring is not discrete.
  Permutation as_permutation() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<Color> colors_;
  std::size_t cell_count_ = 0;
};

// Ordered list of distinct vertices; labels a search tree node.
class VertexSequence {
 public:
  VertexSequence() = default;
  // Throws std::invalid_argument on duplicates or vertex 0.
  explicit VertexSequence(std::vector<Vertex> items);
  VertexSequence(std::initializer_list<Vertex> items)
      : VertexSequence(std::vector<Vertex>(items)) {}

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  Vertex operator[](std::size_t i) const { return items_[i]; }
  Vertex back() const { return items_.back(); }
  const std::vector<Vertex>& items() const { return items_; }
  bool contains(Vertex v) const;

  VertexSequence prefix(std::size_t length) const;
  VertexSequence parent() const { return prefix(items_.size() - 1); }
  // Throws std::invalid_argument if v is already present.
  VertexSequence extended(Vertex v) const;
  // Elementwise image under sigma.
  VertexSequence image(const Permutation& sigma) const;
  bool is_prefix_of(const VertexSequence& other) const;
  std::size_t common_prefix_length(const VertexSequence& other) const;

  // Lexicographic.
  friend auto operator<=>(const VertexSequence&,
                          const VertexSequence&) = default;

 private:
  std::vector<Vertex> items_;
};

// A set of vertices kept in strictly increasing order.
class VertexSet {
 public:
  VertexSet() = default;
  // Sorts and deduplicates.
  explicit VertexSet(std::vector<Vertex> items);
  VertexSet(std::initializer_list<Vertex> items)
      : VertexSet(std::vector<Vertex>(items)) {}

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(Vertex v) const;
  Vertex min() const { return items_.front(); }
  const std::vector<Vertex>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> items_;
};

struct ColoredGraph {
  Graph graph;
  Coloring coloring;

  ColoredGraph() = default;
  // Throws std::invalid_argument if the vertex counts differ.
  ColoredGraph(Graph g, Coloring pi);

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;
};

// G^sigma: (u, v) is an edge of g iff (sigma(u), sigma(v)) is an edge of the
// result.
Graph relabel_graph(const Graph& g, const Permutation& sigma);
// pi^sigma: the result colors sigma(v) with pi(v).
Coloring act_coloring(const Coloring& pi, const Permutation& sigma);
ColoredGraph act(const ColoredGraph& cg, const Permutation& sigma);

// Left-to-right composition: v -> s2(s1(v)).
Permutation compose(const Permutation& s1, const Permutation& s2);
inline Permutation invert(const Permutation& s) { return s.inverse(); }

// Row-major adjacency bit strings compared lexicographically.
std::strong_ordering graph_compare(const Graph& g1, const Graph& g2);

// p1 is finer than or equal to p2: p2(u) < p2(v) implies p1(u) < p1(v).
bool is_finer(const Coloring& p1, const Coloring& p2);

bool is_automorphism(const ColoredGraph& cg, const Permutation& sigma);
bool is_automorphism(const Graph& g, const Coloring& pi,
                     const Permutation& sigma);

}  // namespace canoncert

#endif  // CANONCERT_CORE_HPP_
