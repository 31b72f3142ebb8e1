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

// Sets of integer sequences holding the facts a proof has derived.

#ifndef CANONCERT_FACT_DB_HPP_
#define CANONCERT_FACT_DB_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace canoncert {

enum class DatabaseBackend { kFlat, kTrie };

std::string_view backend_name(DatabaseBackend backend);

class FactDatabase {
 public:
  virtual ~FactDatabase() = default;
  // Returns false if the key was already present.
  virtual bool insert(std::span<const std::uint32_t> key) = 0;
  virtual bool contains(std::span<const std::uint32_t> key) const = 0;
  virtual std::size_t size() const = 0;

  static std::unique_ptr<FactDatabase> create(DatabaseBackend backend);
};

// Hash set of whole keys.
class FlatFactDatabase : public FactDatabase {
 public:
  bool insert(std::span<const std::uint32_t> key) override;
  bool contains(std::span<const std::uint32_t> key) const override;
  std::size_t size() const override { return keys_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };
  std::unordered_set<std::vector<std::uint32_t>, KeyHash> keys_;
};

// Compressed trie: each edge carries a run of values, and siblings are kept
// sorted by the first value of their run.
class TrieFactDatabase : public FactDatabase {
 public:
  TrieFactDatabase();
  ~TrieFactDatabase() override;
  bool insert(std::span<const std::uint32_t> key) override;
  bool contains(std::span<const std::uint32_t> key) const override;
  std::size_t size() const override { return size_; }
  std::size_t node_count() const;

 private:
  struct Node;
  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

}  // namespace canoncert

#endif  // CANONCERT_FACT_DB_HPP_
