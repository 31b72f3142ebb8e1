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

#include "support/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace canoncert::oracle {
namespace {

std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{1});
  return v;
}

Color color_count(const std::vector<Color>& pi) {
  return pi.empty() ? 0 : *std::max_element(pi.begin(), pi.end());
}

std::vector<Vertex> members(const std::vector<Color>& pi, Color c) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < pi.size(); ++v) {
    if (pi[v] == c) out.push_back(static_cast<Vertex>(v + 1));
  }
  return out;
}

std::size_t neighbours_in(const Graph& g, Vertex v,
                          const std::vector<Vertex>& cell) {
  std::size_t count = 0;
  for (Vertex w : cell) count += g.adjacent(v, w) ? 1 : 0;
  return count;
}

// Adjacency matrix of g relabelled by v -> label[v-1], row-major.
std::vector<char> relabelled_matrix(const Graph& g,
                                    const std::vector<Color>& label) {
  const std::size_t n = g.n();
  std::vector<char> m(n * n, 0);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = 1; v <= n; ++v) {
      if (g.adjacent(u, v)) m[(label[u - 1] - 1) * n + (label[v - 1] - 1)] = 1;
    }
  }
  return m;
}

void put_word(std::uint64_t word, std::uint64_t& hash) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    hash ^= (word >> shift) & 0xFF;
    hash *= 1099511628211ull;
  }
}

struct TreeSearch {
  explicit TreeSearch(const Graph& graph) : g(graph) {}

  const Graph& g;
  bool have_best = false;
  std::vector<std::uint64_t> best_phi;
  std::vector<char> best_matrix;
  std::vector<Vertex> best_leaf;
  std::vector<Color> best_colors;
  std::size_t leaves = 0;

  void visit(std::vector<Vertex>& nu, const std::vector<Color>& pi,
             std::vector<std::uint64_t>& phi) {
    phi.push_back(quotient_hash(g, pi));
    const Color m = color_count(pi);
    if (m == pi.size()) {
      ++leaves;
      std::vector<char> matrix = relabelled_matrix(g, pi);
      const bool better = !have_best || phi > best_phi ||
                          (phi == best_phi && matrix > best_matrix);
      if (better) {
        have_best = true;
        best_phi = phi;
        best_matrix = std::move(matrix);
        best_leaf = nu;
        best_colors = pi;
      }
    } else {
      std::vector<Vertex> target;
      for (Color c = 1; c <= m && target.empty(); ++c) {
        auto cell = members(pi, c);
        if (cell.size() > 1) target = std::move(cell);
      }
      for (Vertex w : target) {
        nu.push_back(w);
        visit(nu, equitable_colors(g, individualize_colors(pi, w)), phi);
        nu.pop_back();
      }
    }
    phi.pop_back();
  }
};

}  // namespace

std::uint64_t isomorphism_key(const Graph& g) {
  const std::size_t n = g.n();
  if (n > 11) throw std::invalid_argument("isomorphism_key: n too large");
  std::vector<Vertex> p = iota_vertices(n);
  std::uint64_t best = 0;
  do {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        key = (key << 1) | (g.adjacent(p[i], p[j]) ? 1 : 0);
      }
    }
    best = std::max(best, key);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a,
                                                    const Graph& b) {
  if (a.n() != b.n() || a.edge_count() != b.edge_count()) return std::nullopt;
  const std::size_t n = a.n();
  std::vector<Vertex> sigma = iota_vertices(n);
  do {
    bool ok = true;
    for (Vertex u = 1; u <= n && ok; ++u) {
      for (Vertex v = u + 1; v <= n && ok; ++v) {
        ok = a.adjacent(u, v) == b.adjacent(sigma[u - 1], sigma[v - 1]);
      }
    }
    if (ok) return sigma;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

std::vector<Color> split_colors(const Graph& g, const std::vector<Color>& pi,
                                Color i) {
  const Color m = color_count(pi);
  const std::vector<Vertex> splitter = members(pi, i);
  std::vector<Color> out(pi.size(), 0);
  Color next = 1;
  for (Color c = 1; c <= m; ++c) {
    std::map<std::size_t, std::vector<Vertex>> by_count;
    for (Vertex v : members(pi, c)) {
      by_count[neighbours_in(g, v, splitter)].push_back(v);
    }
    std::vector<std::vector<Vertex>> fragments;
    for (auto& [count, fragment] : by_count) fragments.push_back(fragment);
    std::size_t largest = 0;
    for (std::size_t k = 1; k < fragments.size(); ++k) {
      if (fragments[k].size() > fragments[largest].size()) largest = k;
    }
    std::rotate(fragments.begin() + static_cast<std::ptrdiff_t>(largest),
                fragments.begin() + static_cast<std::ptrdiff_t>(largest) + 1,
                fragments.end());
    for (const auto& fragment : fragments) {
      for (Vertex v : fragment) out[v - 1] = next;
      ++next;
    }
  }
  return out;
}

std::vector<Color> equitable_colors(const Graph& g, std::vector<Color> pi) {
  for (;;) {
    bool changed = false;
    const Color m = color_count(pi);
    for (Color i = 1; i <= m && !changed; ++i) {
      auto next = split_colors(g, pi, i);
      if (next != pi) {
        pi = std::move(next);
        changed = true;
      }
    }
    if (!changed) return pi;
  }
}

bool is_equitable(const Graph& g, const std::vector<Color>& pi) {
  const Color m = color_count(pi);
  for (Color c = 1; c <= m; ++c) {
    const auto cell = members(pi, c);
    for (Color d = 1; d <= m; ++d) {
      const auto other = members(pi, d);
      for (Vertex v : cell) {
        if (neighbours_in(g, v, other) != neighbours_in(g, cell[0], other)) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<Color> individualize_colors(const std::vector<Color>& pi,
                                        Vertex v) {
  const Color c = pi[v - 1];
  if (std::count(pi.begin(), pi.end(), c) == 1) return pi;
  std::vector<Color> out(pi);
  for (std::size_t x = 0; x < pi.size(); ++x) {
    if (pi[x] > c || (pi[x] == c && x + 1 != v)) out[x] = pi[x] + 1;
  }
  return out;
}

std::uint64_t quotient_hash(const Graph& g, const std::vector<Color>& pi) {
  const Color m = color_count(pi);
  std::vector<std::vector<Vertex>> cells;
  for (Color c = 1; c <= m; ++c) cells.push_back(members(pi, c));
  std::uint64_t hash = 14695981039346656037ull;
  put_word(m, hash);
  for (const auto& cell : cells) put_word(cell.size(), hash);
  for (Color i = 0; i < m; ++i) {
    for (Color j = i; j < m; ++j) {
      std::uint64_t edges = 0;
      for (Vertex u : cells[i]) {
        for (Vertex v : cells[j]) {
          if ((i != j || u < v) && g.adjacent(u, v)) ++edges;
        }
      }
      put_word(edges, hash);
    }
  }
  return hash;
}

TreeCanonical tree_canonical_form(const Graph& g, const Coloring& pi0) {
  TreeSearch search(g);
  std::vector<Vertex> nu;
  std::vector<std::uint64_t> phi;
  search.visit(nu, equitable_colors(g, pi0.colors()), phi);

  const std::size_t n = g.n();
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (search.best_matrix[(u - 1) * n + (v - 1)]) edges.emplace_back(u, v);
    }
  }
  std::vector<Color> colors(n);
  for (Vertex v = 1; v <= n; ++v) {
    colors[search.best_colors[v - 1] - 1] = pi0(v);
  }
  return {ColoredGraph(Graph::from_edges(n, edges), Coloring(colors)),
          search.best_leaf, search.leaves};
}

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= n && n >= 3; ++v) {
    edges.emplace_back(v, v % n + 1);
  }
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= a; ++u) {
    for (Vertex v = 1; v <= b; ++v) {
      edges.emplace_back(u, static_cast<Vertex>(a + v));
    }
  }
  return Graph::from_edges(a + b, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph spider(const std::vector<std::size_t>& legs) {
  std::vector<Edge> edges;
  Vertex next = 2;
  for (std::size_t length : legs) {
    Vertex previous = 1;
    for (std::size_t k = 0; k < length; ++k) {
      edges.emplace_back(previous, next);
      previous = next++;
    }
  }
  return Graph::from_edges(next - 1, edges);
}

Graph petersen_graph() {
  return Graph::from_edges(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},
                                {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10},
                                {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}});
}

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> images = iota_vertices(n);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

Coloring random_coloring(std::size_t n, std::size_t colors,
                         std::mt19937_64& rng) {
  const std::size_t k = std::uniform_int_distribution<std::size_t>(
      1, std::max<std::size_t>(1, std::min(colors, n)))(rng);
  std::vector<Color> c(n);
  std::uniform_int_distribution<Color> pick(1, static_cast<Color>(k));
  for (std::size_t v = 0; v < n; ++v) {
    c[v] = v < k ? static_cast<Color>(v + 1) : pick(rng);
  }
  std::shuffle(c.begin(), c.end(), rng);
  return Coloring(c);
}

std::vector<Instance> standard_corpus() {
  std::vector<Instance> corpus;
  for (std::size_t n = 3; n <= 14; ++n) {
    corpus.push_back({"C" + std::to_string(n), cycle_graph(n)});
  }
  for (std::size_t n = 1; n <= 10; ++n) {
    corpus.push_back({"K" + std::to_string(n), complete_graph(n)});
  }
  for (std::size_t a = 1; a <= 5; ++a) {
    for (std::size_t b = a; b <= 5; ++b) {
      corpus.push_back({"K" + std::to_string(a) + "," + std::to_string(b),
                        complete_bipartite(a, b)});
    }
  }
  const std::vector<std::vector<std::size_t>> legs = {
      {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4},
      {1, 2, 5}, {1, 2, 3, 4}, {2, 4, 6}, {1, 3, 5, 7}};
  for (const auto& l : legs) {
    std::string name = "spider";
    for (auto x : l) name += "-" + std::to_string(x);
    corpus.push_back({name, spider(l)});
  }
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::size_t> size(4, 32);
  const double densities[] = {0.1, 0.3, 0.5};
  for (std::size_t k = 0; corpus.size() < 200; ++k) {
    const std::size_t n = size(rng);
    const double p = densities[k % 3];
    corpus.push_back({"gnp-" + std::to_string(n) + "-" + std::to_string(p).substr(0, 3) +
                          "-" + std::to_string(k),
                      random_graph(n, p, rng)});
  }
  return corpus;
}

}  // namespace canoncert::oracle
