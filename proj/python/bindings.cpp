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

// Python bindings. Graphs cross the boundary as (n, edge list) with 1-based
// vertices, colorings as lists of colors and proofs as bytes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "canoncert/checker.hpp"
#include "canoncert/core.hpp"
#include "canoncert/dimacs.hpp"
#include "canoncert/emitter.hpp"
#include "canoncert/search.hpp"

namespace py = pybind11;
using namespace canoncert;

namespace {

Coloring coloring_or_unit(std::size_t n,
                          const std::optional<std::vector<Color>>& colors) {
  return colors ? Coloring(*colors) : Coloring::unit(n);
}

ProofStrategy strategy_from(const std::string& name) {
  if (name == "post") return ProofStrategy::kPost;
  if (name == "during") return ProofStrategy::kDuring;
  throw py::value_error("strategy must be 'during' or 'post'");
}

DatabaseBackend backend_from(const std::string& name) {
  if (name == "flat") return DatabaseBackend::kFlat;
  if (name == "trie") return DatabaseBackend::kTrie;
  throw py::value_error("backend must be 'flat' or 'trie'");
}

py::dict result_dict(const CanonicalResult& r) {
  py::dict d;
  d["canonical_edges"] = r.canonical.graph.edges();
  d["canonical_coloring"] = r.canonical.coloring.colors();
  d["labelling"] = r.labelling.images();
  std::vector<std::vector<Vertex>> generators;
  for (const auto& s : r.generators) generators.push_back(s.images());
  d["generators"] = generators;
  d["nodes"] = r.stats.nodes;
  d["leaves"] = r.stats.leaves;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified canonical labelling of graphs";

  py::register_exception<DimacsError>(m, "DimacsError", PyExc_ValueError);

  m.def(
      "parse_dimacs",
      [](const std::string& text) {
        const Graph g = parse_dimacs_string(text);
        return py::make_tuple(g.n(), g.edges());
      },
      py::arg("text"), "Parse DIMACS text into (n, edges).");

  m.def(
      "to_dimacs",
      [](std::size_t n, const std::vector<Edge>& edges) {
        return to_dimacs(Graph::from_edges(n, edges));
      },
      py::arg("n"), py::arg("edges"));

  m.def(
      "canonical_form",
      [](std::size_t n, const std::vector<Edge>& edges,
         const std::optional<std::vector<Color>>& coloring) {
        const Graph g = Graph::from_edges(n, edges);
        py::gil_scoped_release release;
        CanonicalResult r = canonical_form(g, coloring_or_unit(n, coloring));
        py::gil_scoped_acquire acquire;
        return result_dict(r);
      },
      py::arg("n"), py::arg("edges"), py::arg("coloring") = py::none(),
      "Canonical form of the colored graph; dict with canonical_edges, "
      "labelling and generators.");

  m.def(
      "prove",
      [](std::size_t n, const std::vector<Edge>& edges,
         const std::optional<std::vector<Color>>& coloring,
         const std::string& strategy) {
        const Graph g = Graph::from_edges(n, edges);
        const ProofStrategy s = strategy_from(strategy);
        ProvedResult proved = [&] {
          py::gil_scoped_release release;
          return prove(g, coloring_or_unit(n, coloring), s);
        }();
        py::dict d = result_dict(proved.result);
        const auto bytes = proved.proof.to_bytes();
        d["proof"] = py::bytes(reinterpret_cast<const char*>(bytes.data()),
                               bytes.size());
        return d;
      },
      py::arg("n"), py::arg("edges"), py::arg("coloring") = py::none(),
      py::arg("strategy") = "post",
      "Canonical form together with a proof (bytes).");

  m.def(
      "verify",
      [](std::size_t n, const std::vector<Edge>& edges, const py::bytes& proof,
         const std::optional<std::vector<Color>>& coloring,
         const std::string& backend) {
        const Graph g = Graph::from_edges(n, edges);
        const std::string raw = proof;
        const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
        const DatabaseBackend b = backend_from(backend);
        Verdict v = [&] {
          py::gil_scoped_release release;
          return verify_proof_bytes(g, coloring_or_unit(n, coloring), bytes,
                                    b);
        }();
        py::dict d;
        d["accepted"] = v.accepted;
        d["rules_checked"] = v.rules_checked;
        if (v.canonical) {
          d["canonical_edges"] = v.canonical->graph.edges();
          d["canonical_coloring"] = v.canonical->coloring.colors();
        }
        if (v.failure) {
          d["reason"] = std::string(failure_name(v.failure->reason));
          d["rule_index"] = v.failure->rule_index;
          d["detail"] = v.failure->detail;
        }
        return d;
      },
      py::arg("n"), py::arg("edges"), py::arg("proof"),
      py::arg("coloring") = py::none(), py::arg("backend") = "flat",
      "Check a proof; dict with accepted and either the canonical form or "
      "the failure.");

  m.def(
      "isomorphism",
      [](std::size_t n1, const std::vector<Edge>& e1, std::size_t n2,
         const std::vector<Edge>& e2) -> std::optional<std::vector<Vertex>> {
        if (n1 != n2) return std::nullopt;
        const Graph g1 = Graph::from_edges(n1, e1);
        const Graph g2 = Graph::from_edges(n2, e2);
        const auto r1 = canonical_form(g1);
        const auto r2 = canonical_form(g2);
        if (!(r1.canonical == r2.canonical)) return std::nullopt;
        return compose(r1.labelling, invert(r2.labelling)).images();
      },
      py::arg("n1"), py::arg("edges1"), py::arg("n2"), py::arg("edges2"),
      "A mapping v -> mapping[v-1] from the first graph onto the second, or "
      "None if they are not isomorphic.");
}
