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

// Facts, proof rules and the binary proof format.
//
// A proof is a sequence of integers below 2^31: the vertex count n followed by
// the encoded rules. On the wire every integer takes six bytes laid out like
// an RFC 2279 six-byte UTF-8 sequence. Vertices and colors are 0-based on the
// wire, sets are sorted ascending, and colorings and permutations are written
// as n values without a length prefix.

#ifndef CANONCERT_PROOF_HPP_
#define CANONCERT_PROOF_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "canoncert/core.hpp"

namespace canoncert {

// ------------------------------------------------------------------ facts

// The coloring of `node` equals `coloring`.
struct REqual {
  VertexSequence node;
  Coloring coloring;
  friend bool operator==(const REqual&, const REqual&) = default;
};
// The coloring of `node` is finer than or equal to `coloring`.
struct RFiner {
  VertexSequence node;
  Coloring coloring;
  friend bool operator==(const RFiner&, const RFiner&) = default;
};
struct TargetIs {
  VertexSequence node;
  VertexSet cell;
  friend bool operator==(const TargetIs&, const TargetIs&) = default;
};
// `orbit` lies inside one orbit of the automorphism group of the node's
// colored graph.
struct OrbitSubset {
  VertexSequence node;
  VertexSet orbit;
  friend bool operator==(const OrbitSubset&, const OrbitSubset&) = default;
};
struct PhiEqual {
  VertexSequence first;
  VertexSequence second;
  friend bool operator==(const PhiEqual&, const PhiEqual&) = default;
};
// `node` is not an ancestor of the canonical leaf.
struct Pruned {
  VertexSequence node;
  friend bool operator==(const Pruned&, const Pruned&) = default;
};
// `node` is an ancestor of the canonical leaf (or the leaf itself).
struct OnPath {
  VertexSequence node;
  friend bool operator==(const OnPath&, const OnPath&) = default;
};
struct Canonical {
  ColoredGraph form;
  friend bool operator==(const Canonical&, const Canonical&) = default;
};

using Fact = std::variant<REqual, RFiner, TargetIs, OrbitSubset, PhiEqual,
                          Pruned, OnPath, Canonical>;

// Injective serialization used as the fact database key. The first value is
// the variant index, the rest follows the rule encoding conventions.
std::vector<std::uint32_t> fact_key(const Fact& fact);
std::string describe(const Fact& fact);

// ------------------------------------------------------------------ rules

struct ColoringAxiom {
  friend bool operator==(const ColoringAxiom&, const ColoringAxiom&) = default;
};
struct Individualize {
  VertexSequence node;
  Vertex vertex = 0;
  Coloring coloring;
  friend bool operator==(const Individualize&, const Individualize&) = default;
};
struct SplitColoring {
  VertexSequence node;
  Coloring coloring;
  friend bool operator==(const SplitColoring&, const SplitColoring&) = default;
};
struct Equitable {
  VertexSequence node;
  Coloring coloring;
  friend bool operator==(const Equitable&, const Equitable&) = default;
};
struct TargetCell {
  VertexSequence node;
  Coloring coloring;
  friend bool operator==(const TargetCell&, const TargetCell&) = default;
};
struct InvariantAxiom {
  VertexSequence node;
  friend bool operator==(const InvariantAxiom&,
                         const InvariantAxiom&) = default;
};
// `first` and `second` are the child nodes; both are non-empty and share
// their length.
struct InvariantsEqual {
  VertexSequence first;
  Coloring first_coloring;
  VertexSequence second;
  Coloring second_coloring;
  friend bool operator==(const InvariantsEqual&,
                         const InvariantsEqual&) = default;
};
struct InvariantsEqualSym {
  VertexSequence first;
  VertexSequence second;
  friend bool operator==(const InvariantsEqualSym&,
                         const InvariantsEqualSym&) = default;
};
struct OrbitsAxiom {
  Vertex vertex = 0;
  VertexSequence node;
  friend bool operator==(const OrbitsAxiom&, const OrbitsAxiom&) = default;
};
struct MergeOrbits {
  VertexSet first_orbit;
  VertexSet second_orbit;
  VertexSequence node;
  Permutation sigma;
  Vertex first_witness = 0;
  Vertex second_witness = 0;
  friend bool operator==(const MergeOrbits&, const MergeOrbits&) = default;
};
// Prunes `second` because its hash is smaller than that of `first`.
struct PruneInvariant {
  VertexSequence first;
  Coloring first_coloring;
  VertexSequence second;
  Coloring second_coloring;
  friend bool operator==(const PruneInvariant&,
                         const PruneInvariant&) = default;
};
// Prunes the leaf `second` against `first`.
struct PruneLeaf {
  VertexSequence first;
  Coloring first_coloring;
  VertexSequence second;
  Coloring second_coloring;
  friend bool operator==(const PruneLeaf&, const PruneLeaf&) = default;
};
// Prunes `pruned`, the image of the lexicographically smaller `smaller`.
struct PruneAutomorphism {
  VertexSequence smaller;
  VertexSequence pruned;
  Permutation sigma;
  friend bool operator==(const PruneAutomorphism&,
                         const PruneAutomorphism&) = default;
};
struct PruneParent {
  VertexSequence node;
  VertexSet cell;
  friend bool operator==(const PruneParent&, const PruneParent&) = default;
};
// Prunes the child [node, larger] of `node`.
struct PruneOrbits {
  VertexSet orbit;
  VertexSequence node;
  Vertex smaller = 0;
  Vertex larger = 0;
  friend bool operator==(const PruneOrbits&, const PruneOrbits&) = default;
};
struct PathAxiom {
  friend bool operator==(const PathAxiom&, const PathAxiom&) = default;
};
struct ExtendPath {
  VertexSequence node;
  VertexSet cell;
  Vertex vertex = 0;
  friend bool operator==(const ExtendPath&, const ExtendPath&) = default;
};
struct CanonicalLeaf {
  VertexSequence node;
  Coloring coloring;
  friend bool operator==(const CanonicalLeaf&, const CanonicalLeaf&) = default;
};

// Alternative index equals the rule code on the wire.
using Rule = std::variant<ColoringAxiom, Individualize, SplitColoring,
                          Equitable, TargetCell, InvariantAxiom,
                          InvariantsEqual, InvariantsEqualSym, OrbitsAxiom,
                          MergeOrbits, PruneInvariant, PruneLeaf,
                          PruneAutomorphism, PruneParent, PruneOrbits,
                          PathAxiom, ExtendPath, CanonicalLeaf>;

inline constexpr std::uint32_t kRuleCodeCount = std::variant_size_v<Rule>;

std::string_view rule_name(std::uint32_t code);
inline std::string_view rule_name(const Rule& rule) {
  return rule_name(static_cast<std::uint32_t>(rule.index()));
}

// ------------------------------------------------------------------ codec

inline constexpr std::uint32_t kMaxWireValue = 0x7FFFFFFFu;
inline constexpr std::size_t kBytesPerInt = 6;

class ProofFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::out_of_range when value exceeds kMaxWireValue.
std::array<std::uint8_t, kBytesPerInt> encode_int(std::uint32_t value);
// Throws ProofFormatError on a bad lead or continuation byte.
std::uint32_t decode_int(std::span<const std::uint8_t, kBytesPerInt> bytes);

// Appends the encoding of `rule`. Throws std::invalid_argument if the rule
// does not fit a graph on n vertices.
void encode_rule(const Rule& rule, std::size_t n,
                 std::vector<std::uint32_t>& out);
std::vector<std::uint32_t> encode_rule(const Rule& rule, std::size_t n);

// Decodes one rule starting at `pos` and advances `pos` past it. Throws
// ProofFormatError on unknown codes, truncation, out-of-range values, unsorted
// sets, repeated vertices, non-surjective colorings or non-bijective
// permutations.
Rule decode_rule(std::span<const std::uint32_t> ints, std::size_t& pos,
                 std::size_t n);

// The integer form of a proof: n followed by the encoded rules.
class ProofStream {
 public:
  ProofStream() = default;
  explicit ProofStream(std::size_t n);
  // Takes a raw integer sequence. Throws ProofFormatError if it is empty or a
  // value exceeds kMaxWireValue.
  static ProofStream from_ints(std::vector<std::uint32_t> ints);
  // Throws ProofFormatError if the length is not a multiple of six or an
  // integer is malformed.
  static ProofStream from_bytes(std::span<const std::uint8_t> bytes);
  static ProofStream read(std::istream& in);
  static ProofStream read_file(const std::string& path);

  // The leading integer.
  std::size_t n() const { return ints_.front(); }
  const std::vector<std::uint32_t>& ints() const { return ints_; }
  std::size_t byte_size() const { return ints_.size() * kBytesPerInt; }

  void append(const Rule& rule);
  // Drops everything after the first `int_count` integers (at least n stays).
  void truncate(std::size_t int_count);
  // Decodes every rule; throws ProofFormatError.
  std::vector<Rule> rules() const;

  std::vector<std::uint8_t> to_bytes() const;
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::uint32_t> ints_;
};

}  // namespace canoncert

#endif  // CANONCERT_PROOF_HPP_
