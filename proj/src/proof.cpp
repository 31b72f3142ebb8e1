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

#include "canoncert/proof.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace canoncert {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Writer {
 public:
  Writer(std::size_t n, std::vector<std::uint32_t>& out) : n_(n), out_(out) {}

  void value(std::size_t v) {
    if (v > kMaxWireValue) {
      throw std::invalid_argument("value does not fit the wire format");
    }
    out_.push_back(static_cast<std::uint32_t>(v));
  }
  void vertex(Vertex v) {
    if (v < 1 || v > n_) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " outside 1.." + std::to_string(n_));
    }
    out_.push_back(v - 1);
  }
  void sequence(const VertexSequence& seq) {
    value(seq.size());
    for (Vertex v : seq.items()) vertex(v);
  }
  void set(const VertexSet& s) {
    value(s.size());
    for (Vertex v : s) vertex(v);
  }
  void coloring(const Coloring& pi) {
    check_size(pi.n());
    for (Color c : pi.colors()) out_.push_back(c - 1);
  }
  void permutation(const Permutation& sigma) {
    check_size(sigma.n());
    for (Vertex v : sigma.images()) out_.push_back(v - 1);
  }

 private:
  void check_size(std::size_t size) const {
    if (size != n_) {
      throw std::invalid_argument("object of size " + std::to_string(size) +
                                  " in a proof for n = " + std::to_string(n_));
    }
  }

  std::size_t n_;
  std::vector<std::uint32_t>& out_;
};

class Reader {
 public:
  Reader(std::span<const std::uint32_t> ints, std::size_t& pos, std::size_t n)
      : ints_(ints), pos_(pos), n_(n) {}

  std::uint32_t value() {
    if (pos_ >= ints_.size()) throw ProofFormatError("truncated rule");
    return ints_[pos_++];
  }
  Vertex vertex() {
    const std::uint32_t v = value();
    if (v >= n_) {
      throw ProofFormatError("vertex " + std::to_string(v) +
                             " out of range for n = " + std::to_string(n_));
    }
    return v + 1;
  }
  std::size_t length() {
    const std::uint32_t len = value();
    if (len > n_) {
      throw ProofFormatError("length " + std::to_string(len) +
                             " exceeds n = " + std::to_string(n_));
    }
    return len;
  }
  VertexSequence sequence() { return sequence_of_length(length()); }
  // Sequences of children, written with length |parent| + 1.
  VertexSequence child_sequence() {
    const std::size_t len = length();
    if (len == 0) throw ProofFormatError("child sequence must be non-empty");
    return sequence_of_length(len);
  }
  VertexSet set() {
    const std::size_t len = length();
    std::vector<Vertex> items;
    items.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      const Vertex v = vertex();
      if (!items.empty() && v <= items.back()) {
        throw ProofFormatError("set not strictly increasing");
      }
      items.push_back(v);
    }
    return VertexSet(std::move(items));
  }
  Coloring coloring() {
    std::vector<Color> colors(n_);
    for (auto& c : colors) {
      const std::uint32_t raw = value();
      if (raw >= n_) throw ProofFormatError("color out of range");
      c = raw + 1;
    }
    try {
      return Coloring(std::move(colors));
    } catch (const std::invalid_argument& e) {
      throw ProofFormatError(e.what());
    }
  }
  Permutation permutation() {
    std::vector<Vertex> images(n_);
    for (auto& v : images) v = vertex();
    try {
      return Permutation(std::move(images));
    } catch (const std::invalid_argument& e) {
      throw ProofFormatError(e.what());
    }
  }

 private:
  VertexSequence sequence_of_length(std::size_t len) {
    std::vector<Vertex> items(len);
    for (auto& v : items) v = vertex();
    try {
      return VertexSequence(std::move(items));
    } catch (const std::invalid_argument& e) {
      throw ProofFormatError(e.what());
    }
  }

  std::span<const std::uint32_t> ints_;
  std::size_t& pos_;
  std::size_t n_;
};

template <class R>
R read_pair_with_colorings(Reader& in, bool children) {
  R r;
  r.first = children ? in.child_sequence() : in.sequence();
  r.first_coloring = in.coloring();
  r.second = children ? in.child_sequence() : in.sequence();
  r.second_coloring = in.coloring();
  return r;
}

std::string sequence_text(const VertexSequence& seq) {
  std::string s = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(seq[i]);
  }
  return s + "]";
}

std::string set_text(const VertexSet& set) {
  std::string s = "{";
  bool first = true;
  for (Vertex v : set) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(v);
  }
  return s + "}";
}

std::string coloring_text(const Coloring& pi) {
  std::string s = "[";
  const auto cells = pi.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) s += ',';
    s += set_text(VertexSet(cells[k]));
  }
  return s + "]";
}

}  // namespace

// ------------------------------------------------------------------ facts

std::vector<std::uint32_t> fact_key(const Fact& fact) {
  std::vector<std::uint32_t> key;
  key.push_back(static_cast<std::uint32_t>(fact.index()));
  auto put_seq = [&](const VertexSequence& seq) {
    key.push_back(static_cast<std::uint32_t>(seq.size()));
    for (Vertex v : seq.items()) key.push_back(v - 1);
  };
  auto put_set = [&](const VertexSet& set) {
    key.push_back(static_cast<std::uint32_t>(set.size()));
    for (Vertex v : set) key.push_back(v - 1);
  };
  auto put_coloring = [&](const Coloring& pi) {
    for (Color c : pi.colors()) key.push_back(c - 1);
  };
  std::visit(Overloaded{
                 [&](const REqual& f) {
                   put_seq(f.node);
                   put_coloring(f.coloring);
                 },
                 [&](const RFiner& f) {
                   put_seq(f.node);
                   put_coloring(f.coloring);
                 },
                 [&](const TargetIs& f) {
                   put_seq(f.node);
                   put_set(f.cell);
                 },
                 [&](const OrbitSubset& f) {
                   put_seq(f.node);
                   put_set(f.orbit);
                 },
                 [&](const PhiEqual& f) {
                   put_seq(f.first);
                   put_seq(f.second);
                 },
                 [&](const Pruned& f) { put_seq(f.node); },
                 [&](const OnPath& f) { put_seq(f.node); },
                 [&](const Canonical& f) {
                   const auto edges = f.form.graph.edges();
                   key.push_back(static_cast<std::uint32_t>(edges.size()));
                   for (const auto& [u, v] : edges) {
                     key.push_back(u - 1);
                     key.push_back(v - 1);
                   }
                   put_coloring(f.form.coloring);
                 },
             },
             fact);
  return key;
}

std::string describe(const Fact& fact) {
  return std::visit(
      Overloaded{
          [](const REqual& f) {
            return "R(" + sequence_text(f.node) + ") = " +
                   coloring_text(f.coloring);
          },
          [](const RFiner& f) {
            return "R(" + sequence_text(f.node) + ") <= " +
                   coloring_text(f.coloring);
          },
          [](const TargetIs& f) {
            return "T(" + sequence_text(f.node) + ") = " + set_text(f.cell);
          },
          [](const OrbitSubset& f) {
            return set_text(f.orbit) + " in orbits(" + sequence_text(f.node) +
                   ")";
          },
          [](const PhiEqual& f) {
            return "phi(" + sequence_text(f.first) + ") = phi(" +
                   sequence_text(f.second) + ")";
          },
          [](const Pruned& f) {
            return "pruned(" + sequence_text(f.node) + ")";
          },
          [](const OnPath& f) {
            return "on_path(" + sequence_text(f.node) + ")";
          },
          [](const Canonical& f) {
            return "canonical(n=" + std::to_string(f.form.graph.n()) +
                   ", m=" + std::to_string(f.form.graph.edge_count()) + ")";
          },
      },
      fact);
}

// ------------------------------------------------------------------ rules

std::string_view rule_name(std::uint32_t code) {
  static constexpr std::string_view kNames[] = {
      "ColoringAxiom",     "Individualize",   "SplitColoring",
      "Equitable",         "TargetCell",      "InvariantAxiom",
      "InvariantsEqual",   "InvariantsEqualSym", "OrbitsAxiom",
      "MergeOrbits",       "PruneInvariant",  "PruneLeaf",
      "PruneAutomorphism", "PruneParent",     "PruneOrbits",
      "PathAxiom",         "ExtendPath",      "CanonicalLeaf",
  };
  return code < kRuleCodeCount ? kNames[code] : std::string_view("Unknown");
}

// ------------------------------------------------------------------ codec

std::array<std::uint8_t, kBytesPerInt> encode_int(std::uint32_t value) {
  if (value > kMaxWireValue) {
    throw std::out_of_range("value " + std::to_string(value) +
                            " exceeds 2^31-1");
  }
  return {
      static_cast<std::uint8_t>(0xFC | (value >> 30)),
      static_cast<std::uint8_t>(0x80 | ((value >> 24) & 0x3F)),
      static_cast<std::uint8_t>(0x80 | ((value >> 18) & 0x3F)),
      static_cast<std::uint8_t>(0x80 | ((value >> 12) & 0x3F)),
      static_cast<std::uint8_t>(0x80 | ((value >> 6) & 0x3F)),
      static_cast<std::uint8_t>(0x80 | (value & 0x3F)),
  };
}

std::uint32_t decode_int(std::span<const std::uint8_t, kBytesPerInt> bytes) {
  if ((bytes[0] & 0xFE) != 0xFC) {
    throw ProofFormatError("bad lead byte " + std::to_string(bytes[0]));
  }
  std::uint32_t value = bytes[0] & 0x01;
  for (std::size_t i = 1; i < kBytesPerInt; ++i) {
    if ((bytes[i] & 0xC0) != 0x80) {
      throw ProofFormatError("bad continuation byte " +
                             std::to_string(bytes[i]));
    }
    value = (value << 6) | (bytes[i] & 0x3F);
  }
  return value;
}

void encode_rule(const Rule& rule, std::size_t n,
                 std::vector<std::uint32_t>& out) {
  Writer w(n, out);
  w.value(rule.index());
  std::visit(Overloaded{
                 [](const ColoringAxiom&) {},
                 [&](const Individualize& r) {
                   w.sequence(r.node);
                   w.vertex(r.vertex);
                   w.coloring(r.coloring);
                 },
                 [&](const SplitColoring& r) {
                   w.sequence(r.node);
                   w.coloring(r.coloring);
                 },
                 [&](const Equitable& r) {
                   w.sequence(r.node);
                   w.coloring(r.coloring);
                 },
                 [&](const TargetCell& r) {
                   w.sequence(r.node);
                   w.coloring(r.coloring);
                 },
                 [&](const InvariantAxiom& r) { w.sequence(r.node); },
                 [&](const InvariantsEqual& r) {
                   w.sequence(r.first);
                   w.coloring(r.first_coloring);
                   w.sequence(r.second);
                   w.coloring(r.second_coloring);
                 },
                 [&](const InvariantsEqualSym& r) {
                   w.sequence(r.first);
                   w.sequence(r.second);
                 },
                 [&](const OrbitsAxiom& r) {
                   w.vertex(r.vertex);
                   w.sequence(r.node);
                 },
                 [&](const MergeOrbits& r) {
                   w.set(r.first_orbit);
                   w.set(r.second_orbit);
                   w.sequence(r.node);
                   w.permutation(r.sigma);
                   w.vertex(r.first_witness);
                   w.vertex(r.second_witness);
                 },
                 [&](const PruneInvariant& r) {
                   w.sequence(r.first);
                   w.coloring(r.first_coloring);
                   w.sequence(r.second);
                   w.coloring(r.second_coloring);
                 },
                 [&](const PruneLeaf& r) {
                   w.sequence(r.first);
                   w.coloring(r.first_coloring);
                   w.sequence(r.second);
                   w.coloring(r.second_coloring);
                 },
                 [&](const PruneAutomorphism& r) {
                   w.sequence(r.smaller);
                   w.sequence(r.pruned);
                   w.permutation(r.sigma);
                 },
                 [&](const PruneParent& r) {
                   w.sequence(r.node);
                   w.set(r.cell);
                 },
                 [&](const PruneOrbits& r) {
                   w.set(r.orbit);
                   w.sequence(r.node);
                   w.vertex(r.smaller);
                   w.vertex(r.larger);
                 },
                 [](const PathAxiom&) {},
                 [&](const ExtendPath& r) {
                   w.sequence(r.node);
                   w.set(r.cell);
                   w.vertex(r.vertex);
                 },
                 [&](const CanonicalLeaf& r) {
                   w.sequence(r.node);
                   w.coloring(r.coloring);
                 },
             },
             rule);
}

std::vector<std::uint32_t> encode_rule(const Rule& rule, std::size_t n) {
  std::vector<std::uint32_t> out;
  encode_rule(rule, n, out);
  return out;
}

Rule decode_rule(std::span<const std::uint32_t> ints, std::size_t& pos,
                 std::size_t n) {
  Reader in(ints, pos, n);
  const std::uint32_t code = in.value();
  switch (code) {
    case 0:
      return ColoringAxiom{};
    case 1: {
      Individualize r;
      r.node = in.sequence();
      r.vertex = in.vertex();
      r.coloring = in.coloring();
      return r;
    }
    case 2: {
      SplitColoring r;
      r.node = in.sequence();
      r.coloring = in.coloring();
      return r;
    }
    case 3: {
      Equitable r;
      r.node = in.sequence();
      r.coloring = in.coloring();
      return r;
    }
    case 4: {
      TargetCell r;
      r.node = in.sequence();
      r.coloring = in.coloring();
      return r;
    }
    case 5:
      return InvariantAxiom{in.sequence()};
    case 6:
      return read_pair_with_colorings<InvariantsEqual>(in, true);
    case 7: {
      InvariantsEqualSym r;
      r.first = in.sequence();
      r.second = in.sequence();
      return r;
    }
    case 8: {
      OrbitsAxiom r;
      r.vertex = in.vertex();
      r.node = in.sequence();
      return r;
    }
    case 9: {
      MergeOrbits r;
      r.first_orbit = in.set();
      r.second_orbit = in.set();
      r.node = in.sequence();
      r.sigma = in.permutation();
      r.first_witness = in.vertex();
      r.second_witness = in.vertex();
      return r;
    }
    case 10:
      return read_pair_with_colorings<PruneInvariant>(in, true);
    case 11:
      return read_pair_with_colorings<PruneLeaf>(in, false);
    case 12: {
      PruneAutomorphism r;
      r.smaller = in.sequence();
      r.pruned = in.sequence();
      r.sigma = in.permutation();
      return r;
    }
    case 13: {
      PruneParent r;
      r.node = in.sequence();
      r.cell = in.set();
      return r;
    }
    case 14: {
      PruneOrbits r;
      r.orbit = in.set();
      r.node = in.sequence();
      r.smaller = in.vertex();
      r.larger = in.vertex();
      return r;
    }
    case 15:
      return PathAxiom{};
    case 16: {
      ExtendPath r;
      r.node = in.sequence();
      r.cell = in.set();
      r.vertex = in.vertex();
      return r;
    }
    case 17: {
      CanonicalLeaf r;
      r.node = in.sequence();
      r.coloring = in.coloring();
      return r;
    }
    default:
      throw ProofFormatError("unknown rule code " + std::to_string(code));
  }
}

// ------------------------------------------------------------ ProofStream

ProofStream::ProofStream(std::size_t n) {
  if (n > kMaxWireValue) throw std::out_of_range("vertex count too large");
  ints_.push_back(static_cast<std::uint32_t>(n));
}

ProofStream ProofStream::from_ints(std::vector<std::uint32_t> ints) {
  if (ints.empty()) throw ProofFormatError("empty proof");
  for (std::uint32_t v : ints) {
    if (v > kMaxWireValue) throw ProofFormatError("value exceeds 2^31-1");
  }
  ProofStream out;
  out.ints_ = std::move(ints);
  return out;
}

ProofStream ProofStream::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % kBytesPerInt != 0) {
    throw ProofFormatError("proof length " + std::to_string(bytes.size()) +
                           " is not a multiple of six bytes");
  }
  std::vector<std::uint32_t> ints;
  ints.reserve(bytes.size() / kBytesPerInt);
  for (std::size_t i = 0; i < bytes.size(); i += kBytesPerInt) {
    ints.push_back(
        decode_int(bytes.subspan(i).first<kBytesPerInt>()));
  }
  return from_ints(std::move(ints));
}

ProofStream ProofStream::read(std::istream& in) {
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return from_bytes(bytes);
}

ProofStream ProofStream::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read(in);
}

void ProofStream::append(const Rule& rule) { encode_rule(rule, n(), ints_); }

void ProofStream::truncate(std::size_t int_count) {
  ints_.resize(std::max<std::size_t>(1, std::min(int_count, ints_.size())));
}

std::vector<Rule> ProofStream::rules() const {
  std::vector<Rule> out;
  std::size_t pos = 1;
  while (pos < ints_.size()) out.push_back(decode_rule(ints_, pos, n()));
  return out;
}

std::vector<std::uint8_t> ProofStream::to_bytes() const {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(byte_size());
  for (std::uint32_t v : ints_) {
    const auto enc = encode_int(v);
    bytes.insert(bytes.end(), enc.begin(), enc.end());
  }
  return bytes;
}

void ProofStream::write(std::ostream& out) const {
  const auto bytes = to_bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

void ProofStream::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace canoncert
