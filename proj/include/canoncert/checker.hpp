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

// Proof checker.
//
// The checker trusts nothing computed by the solver. It shares only the data
// types and the proof codec; splitting, individualization, target cells,
// hashing, graph comparison and automorphism tests are recomputed here by
// straightforward means.

#ifndef CANONCERT_CHECKER_HPP_
#define CANONCERT_CHECKER_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "canoncert/core.hpp"
#include "canoncert/fact_db.hpp"
#include "canoncert/proof.hpp"

namespace canoncert {

enum class FailureReason {
  kDecodeError,
  kMissingPremise,
  kSideConditionFailed,
  kMalformedParameter,
  kNEndMismatch,
  kNoCanonicalFact,
};

std::string_view failure_name(FailureReason reason);

class RuleError : public std::runtime_error {
 public:
  RuleError(FailureReason reason, const std::string& detail)
      : std::runtime_error(detail), reason_(reason) {}
  FailureReason reason() const { return reason_; }

 private:
  FailureReason reason_;
};

struct Failure {
  // Zero-based position of the offending rule; for kNEndMismatch and
  // kNoCanonicalFact, the number of rules read.
  std::size_t rule_index = 0;
  FailureReason reason = FailureReason::kDecodeError;
  std::string detail;
};

struct Verdict {
  bool accepted = false;
  std::optional<ColoredGraph> canonical;
  std::optional<Failure> failure;
  std::size_t rules_checked = 0;
};

// Checks a rule against the facts in `db`, inserts its conclusion and
// returns it. Throws RuleError; the database is unchanged on failure.
Fact apply_rule(FactDatabase& db, const Graph& g, const Coloring& pi0,
                const Rule& rule);

Verdict verify_proof(const Graph& g, const Coloring& pi0,
                     const ProofStream& stream,
                     DatabaseBackend backend = DatabaseBackend::kFlat);
// As above, starting from the raw bytes of a proof file.
Verdict verify_proof_bytes(const Graph& g, const Coloring& pi0,
                           std::span<const std::uint8_t> bytes,
                           DatabaseBackend backend = DatabaseBackend::kFlat);

}  // namespace canoncert

#endif  // CANONCERT_CHECKER_HPP_
