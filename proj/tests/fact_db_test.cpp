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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "canoncert/fact_db.hpp"

namespace canoncert {
namespace {

using Key = std::vector<std::uint32_t>;

class FactDatabaseTest : public ::testing::TestWithParam<DatabaseBackend> {};

TEST_P(FactDatabaseTest, SetSemantics) {
  auto db = FactDatabase::create(GetParam());
  EXPECT_FALSE(db->contains(Key{5, 1, 0}));
  EXPECT_TRUE(db->insert(Key{5, 1, 0}));
  EXPECT_TRUE(db->contains(Key{5, 1, 0}));
  EXPECT_FALSE(db->insert(Key{5, 1, 0}));
  EXPECT_EQ(db->size(), 1u);
  // Prefixes and extensions are different keys.
  EXPECT_FALSE(db->contains(Key{5, 1}));
  EXPECT_FALSE(db->contains(Key{5, 1, 0, 0}));
  EXPECT_TRUE(db->insert(Key{5, 1}));
  EXPECT_TRUE(db->insert(Key{5, 1, 0, 0}));
  EXPECT_TRUE(db->insert(Key{}));
  EXPECT_TRUE(db->contains(Key{}));
  EXPECT_EQ(db->size(), 4u);
}

INSTANTIATE_TEST_SUITE_P(Backends, FactDatabaseTest,
                         ::testing::Values(DatabaseBackend::kFlat,
                                           DatabaseBackend::kTrie),
                         [](const auto& info) {
                           return std::string(backend_name(info.param));
                         });

// Keys drawn from a small alphabet so that prefixes are shared heavily.
TEST(FactDatabaseDifferentialTest, TrieAgreesWithFlatAndReference) {
  std::mt19937_64 rng(71);
  auto flat = FactDatabase::create(DatabaseBackend::kFlat);
  TrieFactDatabase trie;
  std::set<Key> reference;
  std::uniform_int_distribution<std::size_t> length(0, 8);
  std::uniform_int_distribution<std::uint32_t> symbol(0, 3);
  for (int op = 0; op < 10000; ++op) {
    Key key(length(rng));
    for (auto& x : key) x = symbol(rng);
    if (op % 2) {
      const bool fresh = reference.insert(key).second;
      ASSERT_EQ(flat->insert(key), fresh);
      ASSERT_EQ(trie.insert(key), fresh);
    } else {
      const bool present = reference.count(key) > 0;
      ASSERT_EQ(flat->contains(key), present);
      ASSERT_EQ(trie.contains(key), present);
    }
  }
  EXPECT_EQ(flat->size(), reference.size());
  EXPECT_EQ(trie.size(), reference.size());
  for (const Key& key : reference) ASSERT_TRUE(trie.contains(key));
}

TEST(TrieFactDatabaseTest, SharesPrefixes) {
  TrieFactDatabase trie;
  const Key a = {1, 2, 3, 4, 5, 6};
  const Key b = {1, 2, 3, 4, 5, 7};
  trie.insert(a);
  const std::size_t one = trie.node_count();
  trie.insert(b);
  EXPECT_LE(trie.node_count(), one + 2);
  EXPECT_TRUE(trie.contains(a));
  EXPECT_TRUE(trie.contains(b));
  EXPECT_FALSE(trie.contains(Key{1, 2, 3, 4, 5}));
}

}  // namespace
}  // namespace canoncert
