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

#include "canoncert/fact_db.hpp"

#include <algorithm>

namespace canoncert {

std::string_view backend_name(DatabaseBackend backend) {
  return backend == DatabaseBackend::kFlat ? "flat" : "trie";
}

std::unique_ptr<FactDatabase> FactDatabase::create(DatabaseBackend backend) {
  if (backend == DatabaseBackend::kFlat) {
    return std::make_unique<FlatFactDatabase>();
  }
  return std::make_unique<TrieFactDatabase>();
}

// ------------------------------------------------------------------ flat

std::size_t FlatFactDatabase::KeyHash::operator()(
    const std::vector<std::uint32_t>& key) const {
  std::uint64_t h = 14695981039346656037ull;
  for (std::uint32_t v : key) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

bool FlatFactDatabase::insert(std::span<const std::uint32_t> key) {
  return keys_.emplace(key.begin(), key.end()).second;
}

bool FlatFactDatabase::contains(std::span<const std::uint32_t> key) const {
  return keys_.contains(std::vector<std::uint32_t>(key.begin(), key.end()));
}

// ------------------------------------------------------------------ trie

struct TrieFactDatabase::Node {
  std::vector<std::uint32_t> run;
  bool terminal = false;
  std::vector<std::unique_ptr<Node>> children;

  // Child whose run starts with `first`, or the insertion point.
  std::vector<std::unique_ptr<Node>>::iterator lower(std::uint32_t first) {
    return std::lower_bound(
        children.begin(), children.end(), first,
        [](const std::unique_ptr<Node>& c, std::uint32_t v) {
          return c->run.front() < v;
        });
  }
  const Node* find(std::uint32_t first) const {
    auto it = std::lower_bound(
        children.begin(), children.end(), first,
        [](const std::unique_ptr<Node>& c, std::uint32_t v) {
          return c->run.front() < v;
        });
    return it != children.end() && (*it)->run.front() == first ? it->get()
                                                               : nullptr;
  }
  std::size_t count() const {
    std::size_t total = 1;
    for (const auto& c : children) total += c->count();
    return total;
  }
};

TrieFactDatabase::TrieFactDatabase() : root_(std::make_unique<Node>()) {}
TrieFactDatabase::~TrieFactDatabase() = default;

std::size_t TrieFactDatabase::node_count() const { return root_->count(); }

bool TrieFactDatabase::insert(std::span<const std::uint32_t> key) {
  Node* node = root_.get();
  std::size_t pos = 0;
  while (pos < key.size()) {
    auto it = node->lower(key[pos]);
    if (it == node->children.end() || (*it)->run.front() != key[pos]) {
      auto leaf = std::make_unique<Node>();
      leaf->run.assign(key.begin() + static_cast<std::ptrdiff_t>(pos),
                       key.end());
      leaf->terminal = true;
      node->children.insert(it, std::move(leaf));
      ++size_;
      return true;
    }
    Node* child = it->get();
    std::size_t common = 0;
    while (common < child->run.size() && pos + common < key.size() &&
           child->run[common] == key[pos + common]) {
      ++common;
    }
    if (common < child->run.size()) {
      // Split the edge: `mid` takes the shared part of the run.
      auto mid = std::make_unique<Node>();
      mid->run.assign(child->run.begin(),
                      child->run.begin() + static_cast<std::ptrdiff_t>(common));
      child->run.erase(child->run.begin(),
                       child->run.begin() + static_cast<std::ptrdiff_t>(common));
      mid->children.push_back(std::move(*it));
      *it = std::move(mid);
      child = it->get();
    }
    node = child;
    pos += common;
  }
  if (node->terminal) return false;
  node->terminal = true;
  ++size_;
  return true;
}

bool TrieFactDatabase::contains(std::span<const std::uint32_t> key) const {
  const Node* node = root_.get();
  std::size_t pos = 0;
  while (pos < key.size()) {
    const Node* child = node->find(key[pos]);
    if (child == nullptr) return false;
    if (child->run.size() > key.size() - pos) return false;
    if (!std::equal(child->run.begin(), child->run.end(),
                    key.begin() + static_cast<std::ptrdiff_t>(pos))) {
      return false;
    }
    pos += child->run.size();
    node = child;
  }
  return node->terminal;
}

}  // namespace canoncert
