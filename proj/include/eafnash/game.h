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

#ifndef EAFNASH_GAME_H_
#define EAFNASH_GAME_H_

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eafnash {

using PlayerIndex = std::size_t;
using StrategyIndex = std::size_t;

// Marks the empty slot of a partial profile.
inline constexpr StrategyIndex kHole = std::numeric_limits<StrategyIndex>::max();

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One strategy per player, ordered by player index.
struct StrategyProfile {
  std::vector<StrategyIndex> strategies;

  std::size_t size() const { return strategies.size(); }
  StrategyIndex operator[](PlayerIndex i) const { return strategies[i]; }
  auto operator<=>(const StrategyProfile&) const = default;
};

// A profile with exactly one slot (`hole`) left open; strategies[hole] == kHole.
struct PartialProfile {
  std::vector<StrategyIndex> strategies;
  PlayerIndex hole = 0;

  auto operator<=>(const PartialProfile&) const = default;
};

// An outcome label. Numeric outcomes also carry their value.
struct Outcome {
  std::string label;
  std::optional<double> value;

  static Outcome numeric(double v);
  static Outcome named(std::string label) { return {std::move(label), {}}; }

  bool operator==(const Outcome& other) const { return label == other.label; }
};

// How one player ranks outcomes: either by numeric value or by an explicit
// list of relations over labels ("a<b", "a<=b", "a=b").
struct PreferenceSpec {
  enum class Kind { kNumeric, kExplicit };
  Kind kind = Kind::kNumeric;
  std::vector<std::string> relations;

  static PreferenceSpec numeric() { return {}; }
  static PreferenceSpec explicit_relations(std::vector<std::string> r) {
    return {Kind::kExplicit, std::move(r)};
  }
};

// Unvalidated game description, as read from a game file.
struct GameDescription {
  struct PayoffRow {
    std::vector<std::string> profile;
    std::vector<Outcome> outcome;
  };

  std::vector<std::string> players;
  std::vector<std::vector<std::string>> strategies;
  std::vector<PayoffRow> payoffs;
  // Empty means numeric preferences for every player.
  std::vector<PreferenceSpec> preferences;
};

// A validated finite normal-form game. Immutable; every preference is a total
// preorder, materialized as an integer level per (player, outcome) so that
// ties compare equal.
class Game {
 public:
  // Throws GameError naming the offending element.
  static Game validate(const GameDescription& description);

  std::size_t num_players() const { return players_.size(); }
  const std::string& player_name(PlayerIndex i) const { return players_[i]; }
  const std::vector<std::string>& players() const { return players_; }

  std::size_t num_strategies(PlayerIndex i) const {
    return strategies_[i].size();
  }
  std::size_t max_strategies() const;
  const std::vector<std::string>& strategies(PlayerIndex i) const {
    return strategies_[i];
  }
  const std::string& strategy_name(PlayerIndex i, StrategyIndex s) const {
    return strategies_[i][s];
  }
  std::optional<StrategyIndex> find_strategy(PlayerIndex i,
                                             const std::string& name) const;

  // Profiles are numbered in mixed radix with player 0 most significant, so
  // index order is lexicographic order.
  std::size_t num_profiles() const { return num_profiles_; }
  StrategyProfile profile_at(std::size_t index) const;
  std::size_t index_of(const StrategyProfile& profile) const;
  std::vector<StrategyProfile> all_profiles() const;
  bool is_valid(const StrategyProfile& profile) const;
  // Parses strategy names in player order; throws GameError.
  StrategyProfile parse_profile(const std::vector<std::string>& names) const;

  const std::vector<Outcome>& effect(const StrategyProfile& profile) const {
    return effects_[index_of(profile)];
  }
  // Preference level of player i's outcome under `profile`; larger is better.
  int level(PlayerIndex i, const StrategyProfile& profile) const {
    return levels_[index_of(profile)][i];
  }

  const std::vector<PreferenceSpec>& preferences() const {
    return preferences_;
  }
  const GameDescription& description() const { return description_; }

 private:
  Game() = default;

  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> strategies_;
  std::size_t num_profiles_ = 0;
  std::vector<std::vector<Outcome>> effects_;
  std::vector<std::vector<int>> levels_;
  std::vector<PreferenceSpec> preferences_;
  GameDescription description_;
};

// S <=_i S' : player i's outcome under `than` is at least as good as under `s`.
bool weakly_prefers(const Game& game, PlayerIndex i, const StrategyProfile& s,
                    const StrategyProfile& than);
// S <_i S'.
bool strictly_prefers(const Game& game, PlayerIndex i, const StrategyProfile& s,
                      const StrategyProfile& than);

// S_{-i}.
PartialProfile remove(const StrategyProfile& profile, PlayerIndex i);
// P (+) s; throws GameError when s is not in the hole player's menu.
StrategyProfile oplus(const Game& game, const PartialProfile& partial,
                      StrategyIndex s);
// Unchecked variant for callers that already hold a valid strategy index.
StrategyProfile oplus(const PartialProfile& partial, StrategyIndex s);

// Best-response marking: for every player and every partial profile, mark the
// maximal cells; profiles marked by all players are returned, in index order.
std::vector<StrategyProfile> nash_equilibria_bruteforce(const Game& game);

std::string to_string(const Game& game, const StrategyProfile& profile);
// Renders the hole as "_".
std::string to_string(const Game& game, const PartialProfile& partial);
std::string format_number(double v);

}  // namespace eafnash

#endif  // EAFNASH_GAME_H_
