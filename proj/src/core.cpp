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

#include "canoncert/core.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace canoncert {
namespace {

constexpr std::size_t kWordBits = 64;

std::uint64_t column_bit(Vertex c) {
  return std::uint64_t{1} << (kWordBits - 1 - (c - 1) % kWordBits);
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------- Graph

Graph::Graph(std::size_t n)
    : n_(n),
      words_((n + kWordBits - 1) / kWordBits),
      bits_(n * words_, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u < 1 || v < 1 || u > n || v > n) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " +
                                  std::to_string(v) +
                                  ") has an endpoint outside 1.." +
                                  std::to_string(n));
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    g.set_edge(u, v);
  }
  return g;
}

void Graph::set_edge(Vertex u, Vertex v) {
  bits_[(u - 1) * words_ + (v - 1) / kWordBits] |= column_bit(v);
  bits_[(v - 1) * words_ + (u - 1) / kWordBits] |= column_bit(u);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  return (bits_[(u - 1) * words_ + (v - 1) / kWordBits] & column_bit(v)) != 0;
}

std::size_t Graph::degree(Vertex v) const {
  std::size_t d = 0;
  for (std::uint64_t w : row(v)) d += std::popcount(w);
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += std::popcount(w);
  return total / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = u + 1; v <= n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::uint64_t> Graph::mask_of(
    std::span<const Vertex> vertices) const {
  std::vector<std::uint64_t> mask(words_, 0);
  for (Vertex v : vertices) mask[(v - 1) / kWordBits] |= column_bit(v);
  return mask;
}

std::size_t Graph::count_neighbors(Vertex v,
                                   std::span<const std::uint64_t> mask) const {
  const auto r = row(v);
  std::size_t count = 0;
  for (std::size_t i = 0; i < words_; ++i) count += std::popcount(r[i] & mask[i]);
  return count;
}

// ---------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<Vertex> images)
    : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (Vertex v : images_) {
    if (v < 1 || v > images_.size() || seen[v]) {
      throw std::invalid_argument("permutation images are not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Vertex>(i + 1);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[images_[i] - 1] = static_cast<Vertex>(i + 1);
  }
  Permutation out;
  out.images_ = std::move(inv);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i + 1) return false;
  }
  return true;
}

// ------------------------------------------------------------- Coloring

Coloring::Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {
  std::vector<bool> used(colors_.size() + 1, false);
  Color max_color = 0;
  for (Color c : colors_) {
    if (c < 1 || c > colors_.size()) {
      throw std::invalid_argument("color " + std::to_string(c) +
                                  " outside 1..n");
    }
    used[c] = true;
    max_color = std::max(max_color, c);
  }
  for (Color c = 1; c <= max_color; ++c) {
    if (!used[c]) {
      throw std::invalid_argument("coloring is not surjective: color " +
                                  std::to_string(c) + " unused");
    }
  }
  cell_count_ = max_color;
}

Coloring Coloring::unit(std::size_t n) {
  return Coloring(std::vector<Color>(n, 1));
}

Coloring Coloring::from_cells(std::size_t n,
                              const std::vector<std::vector<Vertex>>& cells) {
  std::vector<Color> colors(n, 0);
  Color k = 0;
  for (const auto& cell : cells) {
    ++k;
    if (cell.empty()) throw std::invalid_argument("empty cell");
    for (Vertex v : cell) {
      if (v < 1 || v > n || colors[v - 1] != 0) {
        throw std::invalid_argument("cells do not partition 1..n");
      }
      colors[v - 1] = k;
    }
  }
  if (std::find(colors.begin(), colors.end(), Color{0}) != colors.end()) {
    throw std::invalid_argument("cells do not cover 1..n");
  }
  return Coloring(std::move(colors));
}

std::vector<Vertex> Coloring::cell(Color k) const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (colors_[i] == k) out.push_back(static_cast<Vertex>(i + 1));
  }
  return out;
}

std::vector<std::vector<Vertex>> Coloring::cells() const {
  std::vector<std::vector<Vertex>> out(cell_count_);
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    out[colors_[i] - 1].push_back(static_cast<Vertex>(i + 1));
  }
  return out;
}

std::size_t Coloring::cell_size(Color k) const {
  return static_cast<std::size_t>(
      std::count(colors_.begin(), colors_.end(), k));
}

Permutation Coloring::as_permutation() const {
  if (!is_discrete()) {
    throw std::logic_error("only a discrete coloring is a permutation");
  }
  return Permutation(colors_);
}

// ------------------------------------------------------- VertexSequence

VertexSequence::VertexSequence(std::vector<Vertex> items)
    : items_(std::move(items)) {
  std::vector<Vertex> sorted = items_;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() == 0) {
    throw std::invalid_argument("vertex 0 in sequence");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate vertex in sequence");
  }
}

bool VertexSequence::contains(Vertex v) const {
  return std::find(items_.begin(), items_.end(), v) != items_.end();
}

VertexSequence VertexSequence::prefix(std::size_t length) const {
  VertexSequence out;
  out.items_.assign(items_.begin(),
                    items_.begin() + static_cast<std::ptrdiff_t>(
                                         std::min(length, items_.size())));
  return out;
}

VertexSequence VertexSequence::extended(Vertex v) const {
  if (v == 0 || contains(v)) {
    throw std::invalid_argument("cannot extend sequence with vertex " +
                                std::to_string(v));
  }
  VertexSequence out = *this;
  out.items_.push_back(v);
  return out;
}

VertexSequence VertexSequence::image(const Permutation& sigma) const {
  VertexSequence out;
  out.items_.reserve(items_.size());
  for (Vertex v : items_) out.items_.push_back(sigma(v));
  return out;
}

bool VertexSequence::is_prefix_of(const VertexSequence& other) const {
  return items_.size() <= other.items_.size() &&
         std::equal(items_.begin(), items_.end(), other.items_.begin());
}

std::size_t VertexSequence::common_prefix_length(
    const VertexSequence& other) const {
  const std::size_t limit = std::min(items_.size(), other.items_.size());
  std::size_t i = 0;
  while (i < limit && items_[i] == other.items_[i]) ++i;
  return i;
}

// ------------------------------------------------------------ VertexSet

VertexSet::VertexSet(std::vector<Vertex> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(items_.begin(), items_.end(), v);
}

// --------------------------------------------------------- ColoredGraph

ColoredGraph::ColoredGraph(Graph g, Coloring pi)
    : graph(std::move(g)), coloring(std::move(pi)) {
  require_same_size(graph.n(), coloring.n(), "ColoredGraph");
}

// ------------------------------------------------------------ actions

Graph relabel_graph(const Graph& g, const Permutation& sigma) {
  require_same_size(g.n(), sigma.n(), "relabel_graph");
  Graph out(g.n());
  for (Vertex u = 1; u <= g.n(); ++u) {
    for (Vertex v = u + 1; v <= g.n(); ++v) {
      if (g.adjacent(u, v)) out.set_edge(sigma(u), sigma(v));
    }
  }
  return out;
}

Coloring act_coloring(const Coloring& pi, const Permutation& sigma) {
  require_same_size(pi.n(), sigma.n(), "act_coloring");
  std::vector<Color> colors(pi.n());
  for (Vertex v = 1; v <= pi.n(); ++v) colors[sigma(v) - 1] = pi(v);
  return Coloring(std::move(colors));
}

ColoredGraph act(const ColoredGraph& cg, const Permutation& sigma) {
  return ColoredGraph(relabel_graph(cg.graph, sigma),
                      act_coloring(cg.coloring, sigma));
}

Permutation compose(const Permutation& s1, const Permutation& s2) {
  require_same_size(s1.n(), s2.n(), "compose");
  std::vector<Vertex> images(s1.n());
  for (Vertex v = 1; v <= s1.n(); ++v) images[v - 1] = s2(s1(v));
  return Permutation(std::move(images));
}

std::strong_ordering graph_compare(const Graph& g1, const Graph& g2) {
  require_same_size(g1.n(), g2.n(), "graph_compare");
  for (Vertex v = 1; v <= g1.n(); ++v) {
    const auto r1 = g1.row(v);
    const auto r2 = g2.row(v);
    for (std::size_t i = 0; i < r1.size(); ++i) {
      if (r1[i] != r2[i]) return r1[i] <=> r2[i];
    }
  }
  return std::strong_ordering::equal;
}

bool is_finer(const Coloring& p1, const Coloring& p2) {
  require_same_size(p1.n(), p2.n(), "is_finer");
  // Every p1-color in p2's cell k must be below every p1-color in cell k+1.
  const std::size_t m = p2.cell_count();
  std::vector<Color> lo(m + 1, static_cast<Color>(p1.n() + 1));
  std::vector<Color> hi(m + 1, 0);
  for (Vertex v = 1; v <= p1.n(); ++v) {
    const Color k = p2(v);
    lo[k] = std::min(lo[k], p1(v));
    hi[k] = std::max(hi[k], p1(v));
  }
  for (Color k = 1; k < m; ++k) {
    if (hi[k] >= lo[k + 1]) return false;
  }
  return true;
}

bool is_automorphism(const Graph& g, const Coloring& pi,
                     const Permutation& sigma) {
  if (g.n() != sigma.n() || pi.n() != sigma.n()) return false;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (pi(sigma(v)) != pi(v)) return false;
  }
  return relabel_graph(g, sigma) == g;
}

bool is_automorphism(const ColoredGraph& cg, const Permutation& sigma) {
  return is_automorphism(cg.graph, cg.coloring, sigma);
}

}  // namespace canoncert
