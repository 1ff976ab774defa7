// Copyright 2026 The eafnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EAFNASH_NASH_BRIDGE_H_
#define EAFNASH_NASH_BRIDGE_H_

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eafnash/eaf.h"
#include "eafnash/game_framework.h"

namespace eafnash {

inline constexpr std::size_t kDefaultCandidateCap = 100000;

class CandidateCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An extension failed a check that the construction guarantees; this always
// indicates a bug.
class InternalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of choice assignments the structured engine would visit: the product
// over clusters of the number of best responses.
std::size_t structured_candidate_count(const GameFramework& gf);

// Preferred extensions of a game framework, built from one best-response
// preference argument per cluster plus every valuation argument, plus each
// compatible game argument. Every candidate is re-checked with is_admissible.
// Throws CandidateCapError when the number of assignments exceeds `cap`.
std::vector<Extension> enumerate_preferred_structured(
    const GameFramework& gf, std::size_t cap = kDefaultCandidateCap);

// Profiles S where every s_i is a best response in cluster S_-i. No
// enumeration; index order.
std::vector<StrategyProfile> nash_from_framework(const GameFramework& gf);

// Profiles whose game argument lies in some of `preferred`, in index order.
std::vector<StrategyProfile> nash_from_extensions(
    const GameFramework& gf, const std::vector<Extension>& preferred);

struct StableClass {
  StrategyProfile profile;
  std::vector<std::size_t> extensions;  // indexes into StableResult::stable
};

struct StableResult {
  std::vector<Extension> stable;
  std::vector<StableClass> classes;
};

// Preferred extensions holding a game argument, re-verified with is_stable and
// grouped by that argument. Throws InternalConsistencyError on a failed check.
StableResult stable_from_preferred(const GameFramework& gf,
                                   const std::vector<Extension>& preferred);

enum class Engine { kStructured, kGeneric };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

struct SolveOptions {
  Engine engine = Engine::kStructured;
  std::size_t candidate_cap = kDefaultCandidateCap;
  std::size_t brute_force_cap = kDefaultBruteForceCap;
};

struct SolveReport {
  std::vector<Extension> preferred;
  std::vector<Extension> stable;
  std::vector<StableClass> stable_classes;
  std::vector<StrategyProfile> nash;
  // Game argument of each preferred extension, if any.
  std::vector<std::optional<StrategyProfile>> preferred_game_content;
  Engine engine = Engine::kStructured;
  std::chrono::microseconds elapsed{0};
};

SolveReport solve(const GameFramework& gf, const SolveOptions& options = {});

// Structural checks on preferred extensions of a game framework: one
// preference argument per cluster, at most one game argument, no non-Nash
// profile, stable when holding a game argument, every valuation argument
// present. Returns one message per violation.
std::vector<std::string> check_structural_properties(
    const GameFramework& gf, const std::vector<Extension>& preferred,
    const std::vector<StrategyProfile>& oracle_nash);

struct CrossValidationReport {
  bool ok = true;
  bool compared_with_bruteforce = false;
  bool structured_enumerated = false;
  std::size_t preferred_count = 0;
  std::size_t nash_count = 0;
  std::size_t stable_class_count = 0;
  std::vector<std::string> failures;
};

// Runs the structured engine, the fast Nash path and the brute-force Nash
// oracle against each other; with |A| <= size_cap also the generic engine.
// Failures carry a dump of the game and the offending extension.
CrossValidationReport cross_validate(
    const GameFramework& gf, std::size_t size_cap = kDefaultBruteForceCap,
    std::size_t candidate_cap = kDefaultCandidateCap);

}  // namespace eafnash

#endif  // EAFNASH_NASH_BRIDGE_H_
