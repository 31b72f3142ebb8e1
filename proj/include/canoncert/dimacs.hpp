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

// DIMACS undirected graph files:
//
//   c comment
//   p edge <n> <m>
//   e <u> <v>
//
// Vertices are 1-based. Duplicate and reversed edges are merged; the edge
// count on the problem line is advisory and not enforced.

#ifndef CANONCERT_DIMACS_HPP_
#define CANONCERT_DIMACS_HPP_

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "canoncert/core.hpp"

namespace canoncert {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& message);
  // 0 when the error is not tied to a line (e.g. missing problem line).
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Graph parse_dimacs(std::istream& in);
Graph parse_dimacs_string(const std::string& text);
// Throws std::runtime_error if the file cannot be opened.
Graph read_dimacs_file(const std::string& path);

std::string to_dimacs(const Graph& g);

}  // namespace canoncert

#endif  // CANONCERT_DIMACS_HPP_
