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

#include "canoncert/invariant.hpp"

#include <algorithm>
#include <stdexcept>

namespace canoncert {
namespace {

std::size_t triangle_index(std::size_t m, Color i, Color j) {
  // Offset of row i in the upper triangle, then the column within it.
  const std::size_t r = i - 1;
  return r * m - r * (r - 1) / 2 + (j - i);
}

}  // namespace

std::uint64_t QuotientGraph::edges_between(Color i, Color j) const {
  if (i > j) std::swap(i, j);
  return edge_counts[triangle_index(cell_count, i, j)];
}

QuotientGraph quotient_graph(const Graph& g, const Coloring& pi) {
  if (g.n() != pi.n()) {
    throw std::invalid_argument("quotient_graph: size mismatch");
  }
  QuotientGraph q;
  const std::size_t m = pi.cell_count();
  q.cell_count = m;
  q.cell_sizes.assign(m, 0);
  for (Color c : pi.colors()) ++q.cell_sizes[c - 1];
  q.edge_counts.assign(m * (m + 1) / 2, 0);
  for (const auto& [u, v] : g.edges()) {
    Color a = pi(u);
    Color b = pi(v);
    if (a > b) std::swap(a, b);
    ++q.edge_counts[triangle_index(m, a, b)];
  }
  return q;
}

std::uint64_t fnv1a_words(std::span<const std::uint64_t> words) {
  std::uint64_t h = kFnvOffsetBasis;
  for (std::uint64_t w : words) {
    for (int shift = 56; shift >= 0; shift -= 8) {
      h ^= (w >> shift) & 0xFF;
      h *= kFnvPrime;
    }
  }
  return h;
}

std::uint64_t hash_quotient(const QuotientGraph& q) {
  std::vector<std::uint64_t> words;
  words.reserve(1 + q.cell_sizes.size() + q.edge_counts.size());
  words.push_back(q.cell_count);
  words.insert(words.end(), q.cell_sizes.begin(), q.cell_sizes.end());
  words.insert(words.end(), q.edge_counts.begin(), q.edge_counts.end());
  return fnv1a_words(words);
}

std::uint64_t hash_colored(const Graph& g, const Coloring& pi) {
  return hash_quotient(quotient_graph(g, pi));
}

NodeInvariant NodeInvariant::extended(std::uint64_t h) const {
  NodeInvariant out = *this;
  out.hashes_.push_back(h);
  return out;
}

NodeInvariant NodeInvariant::prefix(std::size_t length) const {
  return NodeInvariant(std::vector<std::uint64_t>(
      hashes_.begin(),
      hashes_.begin() +
          static_cast<std::ptrdiff_t>(std::min(length, hashes_.size()))));
}

}  // namespace canoncert
