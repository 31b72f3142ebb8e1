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

#include "canoncert/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

namespace canoncert {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view token, std::size_t line,
                        const char* what) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DimacsError(line, std::string("invalid ") + what + " '" +
                                std::string(token) + "'");
  }
  return value;
}

}  // namespace

DimacsError::DimacsError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ": " +
                                         message),
      line_(line) {}

Graph parse_dimacs(std::istream& in) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const auto tokens = tokenize(text);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (n) throw DimacsError(line_no, "duplicate problem line");
      if (tokens.size() != 4 || (tokens[1] != "edge" && tokens[1] != "col")) {
        throw DimacsError(line_no, "expected 'p edge <n> <m>'");
      }
      n = parse_count(tokens[2], line_no, "vertex count");
      parse_count(tokens[3], line_no, "edge count");
      if (*n >= (std::size_t{1} << 31)) {
        throw DimacsError(line_no, "vertex count too large");
      }
      continue;
    }
    if (tokens[0] == "e") {
      if (!n) throw DimacsError(line_no, "edge before problem line");
      if (tokens.size() != 3) throw DimacsError(line_no, "expected 'e <u> <v>'");
      const std::size_t u = parse_count(tokens[1], line_no, "vertex");
      const std::size_t v = parse_count(tokens[2], line_no, "vertex");
      if (u < 1 || u > *n || v < 1 || v > *n) {
        throw DimacsError(line_no, "vertex out of range 1.." +
                                       std::to_string(*n));
      }
      if (u == v) throw DimacsError(line_no, "self-loop");
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      continue;
    }
    throw DimacsError(line_no, "unknown line type '" + std::string(tokens[0]) +
                                   "'");
  }
  if (!n) throw DimacsError(0, "missing problem line");
  return Graph::from_edges(*n, edges);
}

Graph parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

Graph read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  const auto edges = g.edges();
  out << "p edge " << g.n() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace canoncert
