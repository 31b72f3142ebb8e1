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

// Random structurally valid rules for codec tests.

#ifndef CANONCERT_TESTS_SUPPORT_RANDOM_RULES_HPP_
#define CANONCERT_TESTS_SUPPORT_RANDOM_RULES_HPP_

#include <cstdint>
#include <random>

#include "canoncert/proof.hpp"

namespace canoncert::oracle {

// A rule with the given wire code whose parameters fit a proof for n >= 1
// vertices. Sequences that the format writes as children are non-empty.
Rule random_rule(std::uint32_t code, std::size_t n, std::mt19937_64& rng);

}  // namespace canoncert::oracle

#endif  // CANONCERT_TESTS_SUPPORT_RANDOM_RULES_HPP_
