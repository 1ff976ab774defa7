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

// Three-level argumentation framework of a normal-form game:
//   game arguments        one per strategy profile, mutually attacking;
//   preference arguments  (S_-i, s), attacking siblings in their cluster and
//                         meta-attacking every attack on S_-i (+) s from a
//                         sibling profile;
//   valuation arguments   (S_-i, better > worse), meta-attacking the attack
//                         from (S_-i, worse) on (S_-i, better).
//
// Argument ids are canonical strings:
//   g:stag,hare   p:[stag,_]/stag   v:[stag,_]/stag>hare

#ifndef EAFNASH_GAME_FRAMEWORK_H_
#define EAFNASH_GAME_FRAMEWORK_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "eafnash/eaf.h"
#include "eafnash/game.h"

namespace eafnash {

struct GameArgument {
  StrategyProfile profile;
  auto operator<=>(const GameArgument&) const = default;
};

struct PreferenceArgument {
  PartialProfile partial;
  StrategyIndex strategy;
  auto operator<=>(const PreferenceArgument&) const = default;
};

struct ValuationArgument {
  PartialProfile partial;
  StrategyIndex better;
  StrategyIndex worse;
  auto operator<=>(const ValuationArgument&) const = default;
};

using ArgumentContent =
    std::variant<GameArgument, PreferenceArgument, ValuationArgument>;

enum class ArgumentKind { kGame, kPreference, kValuation };

std::string_view to_string(ArgumentKind kind);

std::string argument_id(const Game& game, const GameArgument& a);
std::string argument_id(const Game& game, const PreferenceArgument& a);
std::string argument_id(const Game& game, const ValuationArgument& a);
std::string argument_id(const Game& game, const ArgumentContent& a);
// Human-readable rendering, e.g. "([stag,_], stag > hare)".
std::string argument_label(const Game& game, const ArgumentContent& a);

struct PreferenceCluster {
  PartialProfile key;
  std::vector<PreferenceArgument> members;
};

// Profiles in index order.
std::vector<GameArgument> build_game_arguments(const Game& game);
// Clusters ordered by hole player, then by partial profile; members in menu
// order.
std::vector<PreferenceCluster> build_preference_arguments(const Game& game);
// One per strict pair within a cluster; ties produce nothing.
std::vector<ValuationArgument> build_valuation_arguments(const Game& game);

struct IdPair {
  std::string from;
  std::string to;
  auto operator<=>(const IdPair&) const = default;
};

struct IdMetaAttack {
  std::string from;
  IdPair attack;
  auto operator<=>(const IdMetaAttack&) const = default;
};

struct AttackSets {
  std::vector<IdPair> rivalry;               // C_r, game vs game
  std::vector<IdPair> preference;            // C_p, within clusters
  std::vector<IdMetaAttack> undercut;        // C_u, preference onto C_r
  std::vector<IdMetaAttack> valuation;       // C_v, valuation onto C_p
};

AttackSets build_attacks(const Game& game,
                         const std::vector<GameArgument>& game_args,
                         const std::vector<PreferenceCluster>& clusters,
                         const std::vector<ValuationArgument>& valuations);

// The assembled framework of a game together with its provenance map.
class GameFramework {
 public:
  struct Cluster {
    PartialProfile key;
    std::vector<ArgumentId> members;  // indexed by strategy
    std::vector<StrategyIndex> best;  // <=_i-maximal strategies
  };

  const Game& game() const { return *game_; }
  std::shared_ptr<const Game> game_ptr() const { return game_; }
  const Framework& framework() const { return framework_; }

  const ArgumentContent& content(ArgumentId a) const { return provenance_.at(a); }
  ArgumentKind kind(ArgumentId a) const;
  std::string label(ArgumentId a) const;

  const std::vector<ArgumentId>& game_arguments() const { return game_ids_; }
  const std::vector<ArgumentId>& valuation_arguments() const {
    return valuation_ids_;
  }
  const std::vector<Cluster>& clusters() const { return clusters_; }

  ArgumentId game_argument(const StrategyProfile& s) const {
    return game_ids_.at(game_->index_of(s));
  }
  std::size_t cluster_index(const PartialProfile& key) const;
  const Cluster& cluster(const PartialProfile& key) const {
    return clusters_[cluster_index(key)];
  }
  ArgumentId preference_argument(const PartialProfile& key,
                                 StrategyIndex s) const {
    return cluster(key).members.at(s);
  }
  std::optional<ArgumentId> valuation_argument(const PartialProfile& key,
                                               StrategyIndex better,
                                               StrategyIndex worse) const;
  // True iff s is a best response in the cluster `key`.
  bool is_best(const PartialProfile& key, StrategyIndex s) const;

 private:
  friend GameFramework assemble_framework(std::shared_ptr<const Game> game);

  std::shared_ptr<const Game> game_;
  Framework framework_;
  std::vector<ArgumentContent> provenance_;
  std::vector<ArgumentId> game_ids_;
  std::vector<ArgumentId> valuation_ids_;
  std::vector<Cluster> clusters_;
  std::map<PartialProfile, std::size_t> cluster_by_key_;
  std::map<std::tuple<std::size_t, StrategyIndex, StrategyIndex>, ArgumentId>
      valuation_by_key_;

  GameFramework(std::shared_ptr<const Game> game, Framework framework)
      : game_(std::move(game)), framework_(std::move(framework)) {}
};

// A = A_g u A_p u A_v, C = C_r u C_p, D = C_u u C_v.
GameFramework assemble_framework(std::shared_ptr<const Game> game);

struct EafViolation {
  ArgumentId z;
  ArgumentId z_prime;
  AttackId forward;   // (x, y), meta-attacked by z
  AttackId backward;  // (y, x), meta-attacked by z_prime
};

struct EafConditionReport {
  bool holds = true;
  std::vector<EafViolation> violations;
};

// If (z,(x,y)) and (z',(y,x)) are both in D then (z,z') and (z',z) must be in C.
EafConditionReport check_eaf_condition(const Framework& f);

struct ArgumentCounts {
  std::size_t game_count = 0;
  std::size_t preference_count = 0;
  std::size_t valuation_count = 0;
  // m^(n+1) * n with m the largest menu.
  std::size_t bound = 0;
  // n * m^(n-1) * m(m-1)/2, the ceiling on valuation arguments.
  std::size_t valuation_bound = 0;

  std::size_t total() const {
    return game_count + preference_count + valuation_count;
  }
};

// Throws std::logic_error if the valuation count exceeds its bound.
ArgumentCounts argument_counts(const Game& game);

}  // namespace eafnash

#endif  // EAFNASH_GAME_FRAMEWORK_H_
