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

// Individualization, cell splitting and equitable refinement.
//
// Splitting a cell X by a cell W groups the vertices of X by their number of
// neighbours in W. The fragments replace X in place, ordered by ascending
// count, except that the first fragment of maximum size is moved to the end.

#ifndef CANONCERT_REFINE_HPP_
#define CANONCERT_REFINE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "canoncert/core.hpp"

namespace canoncert {

// Worklist of cells still to be used as splitters.
class SplittingQueue {
 public:
  SplittingQueue() = default;
  explicit SplittingQueue(std::vector<VertexSet> cells)
      : cells_(std::move(cells)) {}
  static SplittingQueue all_cells(const Coloring& pi);
  static SplittingQueue single(Vertex v) {
    return SplittingQueue(std::vector<VertexSet>{VertexSet{v}});
  }

  const std::vector<VertexSet>& cells() const { return cells_; }
  // Images of the member cells under sigma.
  SplittingQueue image(const Permutation& sigma) const;

 private:
  std::vector<VertexSet> cells_;
};

// Colorings visited by one make_equitable run: the input, then the coloring
// after every iteration that changed it. back() is the result.
struct RefinementLog {
  std::vector<Coloring> steps;
};

// Replaces the cell W containing v by {v}, W \ {v} in place.
Coloring individualize(const Coloring& pi, Vertex v);

// Splits every cell by the i-th cell (1-based). Throws std::out_of_range if i
// is not a cell index.
Coloring split(const Graph& g, const Coloring& pi, Color i);

// Every split leaves pi unchanged.
bool is_equitable(const Graph& g, const Coloring& pi);

// Equitable refinement driven by the worklist `alpha`, whose members must be
// cells of pi (std::invalid_argument otherwise).
Coloring make_equitable(const Graph& g, const Coloring& pi,
                        const SplittingQueue& alpha,
                        RefinementLog* log = nullptr);

// Coloring of the root: pi0 refined with all of its cells as splitters.
Coloring refine_root(const Graph& g, const Coloring& pi0,
                     RefinementLog* log = nullptr);
// Coloring of the child [nu, v] given the coloring of nu.
Coloring refine_child(const Graph& g, const Coloring& parent, Vertex v,
                      RefinementLog* log = nullptr);
// Coloring of the node nu.
Coloring refine(const Graph& g, const Coloring& pi0, const VertexSequence& nu);

// First non-singleton cell, or nothing when pi is discrete.
std::optional<VertexSet> target_cell(const Coloring& pi);

}  // namespace canoncert

#endif  // CANONCERT_REFINE_HPP_
