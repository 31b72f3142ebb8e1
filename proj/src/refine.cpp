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

#include "canoncert/refine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace canoncert {
namespace {

using Cell = std::vector<Vertex>;

struct Fragment {
  std::size_t count;
  Cell members;
};

// Fragments of `cell` by neighbour count in `mask`, in output order.
std::vector<Cell> split_cell(const Graph& g, const Cell& cell,
                             std::span<const std::uint64_t> mask) {
  if (cell.size() == 1) return {cell};
  std::vector<Fragment> frags;
  for (Vertex v : cell) {
    const std::size_t c = g.count_neighbors(v, mask);
    auto it = std::find_if(frags.begin(), frags.end(),
                           [c](const Fragment& f) { return f.count == c; });
    if (it == frags.end()) {
      frags.push_back({c, {v}});
    } else {
      it->members.push_back(v);
    }
  }
  if (frags.size() == 1) return {cell};
  std::sort(frags.begin(), frags.end(),
            [](const Fragment& a, const Fragment& b) { return a.count < b.count; });
  std::size_t j = 0;
  for (std::size_t k = 1; k < frags.size(); ++k) {
    if (frags[k].members.size() > frags[j].members.size()) j = k;
  }
  std::vector<Cell> out;
  out.reserve(frags.size());
  for (std::size_t k = 0; k < frags.size(); ++k) {
    if (k != j) out.push_back(std::move(frags[k].members));
  }
  out.push_back(std::move(frags[j].members));
  return out;
}

Coloring from_cell_list(std::size_t n, const std::vector<Cell>& cells) {
  std::vector<Color> colors(n);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    for (Vertex v : cells[k]) colors[v - 1] = static_cast<Color>(k + 1);
  }
  return Coloring(std::move(colors));
}

}  // namespace

SplittingQueue SplittingQueue::all_cells(const Coloring& pi) {
  std::vector<VertexSet> cells;
  for (auto& cell : pi.cells()) cells.emplace_back(std::move(cell));
  return SplittingQueue(std::move(cells));
}

SplittingQueue SplittingQueue::image(const Permutation& sigma) const {
  std::vector<VertexSet> out;
  for (const auto& cell : cells_) {
    std::vector<Vertex> mapped;
    for (Vertex v : cell) mapped.push_back(sigma(v));
    out.emplace_back(std::move(mapped));
  }
  return SplittingQueue(std::move(out));
}

Coloring individualize(const Coloring& pi, Vertex v) {
  if (v < 1 || v > pi.n()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }
  const Color w = pi(v);
  if (pi.cell_size(w) == 1) return pi;
  // Cell w becomes {v} (color w) followed by the rest (color w + 1).
  std::vector<Color> colors = pi.colors();
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] > w || (colors[i] == w && i + 1 != v)) ++colors[i];
  }
  return Coloring(std::move(colors));
}

Coloring split(const Graph& g, const Coloring& pi, Color i) {
  if (g.n() != pi.n()) throw std::invalid_argument("split: size mismatch");
  if (i < 1 || i > pi.cell_count()) {
    throw std::out_of_range("cell index " + std::to_string(i) +
                            " out of range");
  }
  const auto cells = pi.cells();
  const auto mask = g.mask_of(cells[i - 1]);
  std::vector<Cell> out;
  for (const auto& cell : cells) {
    for (auto& frag : split_cell(g, cell, mask)) out.push_back(std::move(frag));
  }
  return from_cell_list(pi.n(), out);
}

bool is_equitable(const Graph& g, const Coloring& pi) {
  for (Color i = 1; i <= pi.cell_count(); ++i) {
    if (split(g, pi, i).cell_count() != pi.cell_count()) return false;
  }
  return true;
}

Coloring make_equitable(const Graph& g, const Coloring& pi,
                        const SplittingQueue& alpha, RefinementLog* log) {
  if (g.n() != pi.n()) {
    throw std::invalid_argument("make_equitable: size mismatch");
  }
  const std::size_t n = pi.n();
  std::vector<Cell> cells = pi.cells();
  std::vector<bool> queued(cells.size(), false);
  for (const auto& member : alpha.cells()) {
    const auto it = std::find(cells.begin(), cells.end(), member.items());
    if (it == cells.end()) {
      throw std::invalid_argument("splitting queue member is not a cell");
    }
    queued[static_cast<std::size_t>(it - cells.begin())] = true;
  }
  if (log) log->steps.assign(1, pi);

  while (cells.size() < n) {
    const auto first =
        std::find(queued.begin(), queued.end(), true) - queued.begin();
    if (static_cast<std::size_t>(first) == queued.size()) break;
    queued[static_cast<std::size_t>(first)] = false;
    const auto mask = g.mask_of(cells[static_cast<std::size_t>(first)]);

    std::vector<Cell> next_cells;
    std::vector<bool> next_queued;
    next_cells.reserve(cells.size());
    bool changed = false;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      auto frags = split_cell(g, cells[k], mask);
      if (frags.size() == 1) {
        next_cells.push_back(std::move(cells[k]));
        next_queued.push_back(queued[k]);
        continue;
      }
      changed = true;
      // The largest fragment is last; it alone inherits X's queue status.
      for (std::size_t f = 0; f + 1 < frags.size(); ++f) {
        next_cells.push_back(std::move(frags[f]));
        next_queued.push_back(true);
      }
      next_cells.push_back(std::move(frags.back()));
      next_queued.push_back(queued[k]);
    }
    cells = std::move(next_cells);
    queued = std::move(next_queued);
    if (changed && log) log->steps.push_back(from_cell_list(n, cells));
  }
  if (log) return log->steps.back();
  return from_cell_list(n, cells);
}

Coloring refine_root(const Graph& g, const Coloring& pi0, RefinementLog* log) {
  return make_equitable(g, pi0, SplittingQueue::all_cells(pi0), log);
}

Coloring refine_child(const Graph& g, const Coloring& parent, Vertex v,
                      RefinementLog* log) {
  return make_equitable(g, individualize(parent, v), SplittingQueue::single(v),
                        log);
}

Coloring refine(const Graph& g, const Coloring& pi0, const VertexSequence& nu) {
  Coloring pi = refine_root(g, pi0);
  for (Vertex v : nu.items()) pi = refine_child(g, pi, v);
  return pi;
}

std::optional<VertexSet> target_cell(const Coloring& pi) {
  std::vector<std::size_t> sizes(pi.cell_count() + 1, 0);
  for (Color c : pi.colors()) ++sizes[c];
  for (Color k = 1; k <= pi.cell_count(); ++k) {
    if (sizes[k] > 1) return VertexSet(pi.cell(k));
  }
  return std::nullopt;
}

}  // namespace canoncert
