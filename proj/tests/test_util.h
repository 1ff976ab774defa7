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

// Fixtures and independent oracles shared by the unit and acceptance tests.
// Nothing here depends on a test framework.
//
// The oracles deliberately re-derive their answers from first principles
// (raw payoff numbers, subset enumeration over defeats) instead of calling the
// library's own helpers.

#ifndef EAFNASH_TESTS_TEST_UTIL_H_
#define EAFNASH_TESTS_TEST_UTIL_H_

#include <initializer_list>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eafnash/eaf.h"
#include "eafnash/game.h"
#include "eafnash/game_framework.h"

namespace eafnash::testing {

std::string games_dir();
std::string fixture_path(const std::string& name);  // "stag_hunt"
std::shared_ptr<const Game> load_fixture(const std::string& name);
GameFramework fixture_framework(const std::string& name);

// Labels a1..a16 of the stag hunt and b1..b16 of matching pennies, mapped to
// canonical argument ids.
const std::map<std::string, std::string>& stag_hunt_labels();
const std::map<std::string, std::string>& matching_pennies_labels();

// Set from labels, resolved through `labels`.
ArgumentSet labelled_set(const Framework& f,
                         const std::map<std::string, std::string>& labels,
                         std::initializer_list<std::string> names);
ArgumentId labelled(const Framework& f,
                    const std::map<std::string, std::string>& labels,
                    const std::string& name);

// A set of member-name sets, for order-insensitive comparisons.
using NameSets = std::set<std::set<std::string>>;
NameSets name_sets(const Framework& f, const std::vector<Extension>& extensions);

struct RandomGameSpec {
  std::size_t players = 2;
  std::size_t strategies = 2;  // per player, unless mixed_menus
  bool mixed_menus = false;    // draw each menu size from [2, strategies]
  int payoff_min = 0;
  int payoff_max = 9;
  // Draw from a tiny range so ties are frequent.
  bool force_ties = false;
};

GameDescription random_game_description(std::mt19937_64& rng,
                                        const RandomGameSpec& spec);
std::shared_ptr<const Game> random_game(std::mt19937_64& rng,
                                        const RandomGameSpec& spec);

// Pure Nash equilibria straight from the numeric payoff rows of `d`.
std::set<std::vector<std::string>> oracle_nash(const GameDescription& d);
// (game, preference, valuation) argument counts from the raw numeric payoffs:
// prod |Ac_i|, sum_i |Ac_i| * prod_{j != i} |Ac_j|, and the number of strictly
// ordered strategy pairs over all clusters.
struct OracleCounts {
  std::size_t game = 0;
  std::size_t preference = 0;
  std::size_t valuation = 0;
};
OracleCounts oracle_counts(const GameDescription& d);

std::set<std::vector<std::string>> profile_names(
    const Game& game, const std::vector<StrategyProfile>& profiles);

// Random framework over n arguments named x0..x{n-1}. When `eaf_condition` is
// set, meta-attacks that would violate the coherence condition get the
// required mutual attacks between their sources added.
Framework random_framework(std::mt19937_64& rng, std::size_t n,
                           double attack_probability,
                           double meta_probability, bool eaf_condition);

// Semantics oracles by definition, with reinstatement sets found by subset
// enumeration over defeats. Only for small frameworks.
bool oracle_conflict_free(const Framework& f, const std::vector<bool>& e);
bool oracle_admissible(const Framework& f, const std::vector<bool>& e);
bool oracle_stable(const Framework& f, const std::vector<bool>& e);
NameSets oracle_extensions(const Framework& f, Semantics semantics);

// Classical abstract-argumentation preferred and stable extensions, ignoring
// meta-attacks entirely.
NameSets dung_extensions(const Framework& f, Semantics semantics);

}  // namespace eafnash::testing

#endif  // EAFNASH_TESTS_TEST_UTIL_H_
