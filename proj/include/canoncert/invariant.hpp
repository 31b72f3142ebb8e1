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

// Label-invariant hashing of colored graphs and node invariants.
//
// The hash digests the quotient graph as a stream of 64-bit words
//   m, |cell_1|, ..., |cell_m|, e(1,1), e(1,2), ..., e(1,m), e(2,2), ..., e(m,m)
// with 64-bit FNV-1a, each word absorbed as 8 big-endian bytes. e(i,j) is the
// number of edges between cells i and j; e(i,i) counts internal edges once.

#ifndef CANONCERT_INVARIANT_HPP_
#define CANONCERT_INVARIANT_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "canoncert/core.hpp"

namespace canoncert {

struct QuotientGraph {
  std::size_t cell_count = 0;
  std::vector<std::uint64_t> cell_sizes;
  // Upper triangle in row-major order: (1,1), (1,2), ..., (m,m).
  std::vector<std::uint64_t> edge_counts;

  std::uint64_t edges_between(Color i, Color j) const;

  friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;
};

QuotientGraph quotient_graph(const Graph& g, const Coloring& pi);

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a_words(std::span<const std::uint64_t> words);
std::uint64_t hash_quotient(const QuotientGraph& q);
std::uint64_t hash_colored(const Graph& g, const Coloring& pi);

// Hashes of the colorings along a path from the root, excluding the root.
// Ordered lexicographically; a proper prefix is smaller.
class NodeInvariant {
 public:
  NodeInvariant() = default;
  explicit NodeInvariant(std::vector<std::uint64_t> hashes)
      : hashes_(std::move(hashes)) {}

  std::size_t size() const { return hashes_.size(); }
  bool empty() const { return hashes_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return hashes_[i]; }
  const std::vector<std::uint64_t>& hashes() const { return hashes_; }

  NodeInvariant extended(std::uint64_t h) const;
  NodeInvariant prefix(std::size_t length) const;

  friend auto operator<=>(const NodeInvariant&,
                          const NodeInvariant&) = default;

 private:
  std::vector<std::uint64_t> hashes_;
};

inline NodeInvariant invariant_extend(const NodeInvariant& inv,
                                      std::uint64_t h) {
  return inv.extended(h);
}
inline std::strong_ordering invariant_compare(const NodeInvariant& a,
                                              const NodeInvariant& b) {
  return a <=> b;
}

}  // namespace canoncert

#endif  // CANONCERT_INVARIANT_HPP_
