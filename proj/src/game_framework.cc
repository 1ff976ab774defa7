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

#include "eafnash/game_framework.h"

#include <algorithm>
#include <stdexcept>

namespace eafnash {
namespace {

std::string bare_profile(const Game& game, const StrategyProfile& s) {
  std::string out;
  for (PlayerIndex i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += game.strategy_name(i, s[i]);
  }
  return out;
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

}  // namespace

std::string_view to_string(ArgumentKind kind) {
  switch (kind) {
    case ArgumentKind::kGame:
      return "game";
    case ArgumentKind::kPreference:
      return "preference";
    case ArgumentKind::kValuation:
      return "valuation";
  }
  return "unknown";
}

std::string argument_id(const Game& game, const GameArgument& a) {
  return "g:" + bare_profile(game, a.profile);
}

std::string argument_id(const Game& game, const PreferenceArgument& a) {
  return "p:" + to_string(game, a.partial) + "/" +
         game.strategy_name(a.partial.hole, a.strategy);
}

std::string argument_id(const Game& game, const ValuationArgument& a) {
  const PlayerIndex i = a.partial.hole;
  return "v:" + to_string(game, a.partial) + "/" +
         game.strategy_name(i, a.better) + ">" + game.strategy_name(i, a.worse);
}

std::string argument_id(const Game& game, const ArgumentContent& a) {
  return std::visit([&](const auto& x) { return argument_id(game, x); }, a);
}

std::string argument_label(const Game& game, const ArgumentContent& a) {
  struct Visitor {
    const Game& game;
    std::string operator()(const GameArgument& x) const {
      return to_string(game, x.profile);
    }
    std::string operator()(const PreferenceArgument& x) const {
      return "(" + to_string(game, x.partial) + ", " +
             game.strategy_name(x.partial.hole, x.strategy) + ")";
    }
    std::string operator()(const ValuationArgument& x) const {
      const PlayerIndex i = x.partial.hole;
      return "(" + to_string(game, x.partial) + ", " +
             game.strategy_name(i, x.better) + " > " +
             game.strategy_name(i, x.worse) + ")";
    }
  };
  return std::visit(Visitor{game}, a);
}

std::vector<GameArgument> build_game_arguments(const Game& game) {
  std::vector<GameArgument> out;
  out.reserve(game.num_profiles());
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    out.push_back({game.profile_at(k)});
  }
  return out;
}

std::vector<PreferenceCluster> build_preference_arguments(const Game& game) {
  std::vector<PreferenceCluster> out;
  for (PlayerIndex i = 0; i < game.num_players(); ++i) {
    for (std::size_t k = 0; k < game.num_profiles(); ++k) {
      const StrategyProfile s = game.profile_at(k);
      if (s[i] != 0) continue;
      PreferenceCluster cluster{remove(s, i), {}};
      for (StrategyIndex t = 0; t < game.num_strategies(i); ++t) {
        cluster.members.push_back({cluster.key, t});
      }
      out.push_back(std::move(cluster));
    }
  }
  return out;
}

std::vector<ValuationArgument> build_valuation_arguments(const Game& game) {
  std::vector<ValuationArgument> out;
  for (const PreferenceCluster& cluster : build_preference_arguments(game)) {
    const PlayerIndex i = cluster.key.hole;
    for (StrategyIndex better = 0; better < game.num_strategies(i); ++better) {
      for (StrategyIndex worse = 0; worse < game.num_strategies(i); ++worse) {
        if (strictly_prefers(game, i, oplus(cluster.key, worse),
                             oplus(cluster.key, better))) {
          out.push_back({cluster.key, better, worse});
        }
      }
    }
  }
  return out;
}

AttackSets build_attacks(const Game& game,
                         const std::vector<GameArgument>& game_args,
                         const std::vector<PreferenceCluster>& clusters,
                         const std::vector<ValuationArgument>& valuations) {
  AttackSets out;
  for (const auto& a : game_args) {
    for (const auto& b : game_args) {
      if (a != b) out.rivalry.push_back({argument_id(game, a), argument_id(game, b)});
    }
  }
  for (const auto& cluster : clusters) {
    for (const auto& a : cluster.members) {
      for (const auto& b : cluster.members) {
        if (a.strategy != b.strategy) {
          out.preference.push_back({argument_id(game, a), argument_id(game, b)});
        }
      }
    }
    // (S, s2) protects S (+) s2 against every sibling profile S (+) s.
    for (const auto& p : cluster.members) {
      const std::string target =
          argument_id(game, GameArgument{oplus(cluster.key, p.strategy)});
      for (const auto& sibling : cluster.members) {
        if (sibling.strategy == p.strategy) continue;
        out.undercut.push_back(
            {argument_id(game, p),
             {argument_id(game, GameArgument{oplus(cluster.key, sibling.strategy)}),
              target}});
      }
    }
  }
  for (const auto& v : valuations) {
    out.valuation.push_back(
        {argument_id(game, v),
         {argument_id(game, PreferenceArgument{v.partial, v.worse}),
          argument_id(game, PreferenceArgument{v.partial, v.better})}});
  }
  return out;
}

ArgumentKind GameFramework::kind(ArgumentId a) const {
  return static_cast<ArgumentKind>(provenance_.at(a).index());
}

std::string GameFramework::label(ArgumentId a) const {
  return argument_label(*game_, provenance_.at(a));
}

std::size_t GameFramework::cluster_index(const PartialProfile& key) const {
  const auto it = cluster_by_key_.find(key);
  if (it == cluster_by_key_.end()) {
    throw std::out_of_range("no cluster for partial profile " +
                            to_string(*game_, key));
  }
  return it->second;
}

std::optional<ArgumentId> GameFramework::valuation_argument(
    const PartialProfile& key, StrategyIndex better, StrategyIndex worse) const {
  const auto it =
      valuation_by_key_.find({cluster_index(key), better, worse});
  if (it == valuation_by_key_.end()) return std::nullopt;
  return it->second;
}

bool GameFramework::is_best(const PartialProfile& key, StrategyIndex s) const {
  const auto& best = cluster(key).best;
  return std::find(best.begin(), best.end(), s) != best.end();
}

GameFramework assemble_framework(std::shared_ptr<const Game> game_ptr) {
  const Game& game = *game_ptr;
  const auto game_args = build_game_arguments(game);
  const auto clusters = build_preference_arguments(game);
  const auto valuations = build_valuation_arguments(game);
  const AttackSets attacks = build_attacks(game, game_args, clusters, valuations);

  Framework::Builder builder;
  std::vector<ArgumentContent> provenance;
  std::vector<ArgumentId> game_ids;
  for (const auto& a : game_args) {
    game_ids.push_back(builder.add_argument(argument_id(game, a)));
    provenance.emplace_back(a);
  }
  std::vector<GameFramework::Cluster> cluster_info;
  for (const auto& cluster : clusters) {
    GameFramework::Cluster info{cluster.key, {}, {}};
    const PlayerIndex i = cluster.key.hole;
    int top = 0;
    for (const auto& p : cluster.members) {
      info.members.push_back(builder.add_argument(argument_id(game, p)));
      provenance.emplace_back(p);
      const int level = game.level(i, oplus(cluster.key, p.strategy));
      if (p.strategy == 0 || level > top) top = level;
    }
    for (const auto& p : cluster.members) {
      if (game.level(i, oplus(cluster.key, p.strategy)) == top) {
        info.best.push_back(p.strategy);
      }
    }
    cluster_info.push_back(std::move(info));
  }
  std::vector<ArgumentId> valuation_ids;
  for (const auto& v : valuations) {
    valuation_ids.push_back(builder.add_argument(argument_id(game, v)));
    provenance.emplace_back(v);
  }
  for (const auto* set : {&attacks.rivalry, &attacks.preference}) {
    for (const IdPair& c : *set) builder.add_attack(c.from, c.to);
  }
  for (const auto* set : {&attacks.undercut, &attacks.valuation}) {
    for (const IdMetaAttack& d : *set) {
      builder.add_meta_attack(d.from, d.attack.from, d.attack.to);
    }
  }

  GameFramework gf(std::move(game_ptr), std::move(builder).build());
  gf.provenance_ = std::move(provenance);
  gf.game_ids_ = std::move(game_ids);
  gf.valuation_ids_ = std::move(valuation_ids);
  gf.clusters_ = std::move(cluster_info);
  for (std::size_t c = 0; c < gf.clusters_.size(); ++c) {
    gf.cluster_by_key_.emplace(gf.clusters_[c].key, c);
  }
  for (std::size_t k = 0; k < valuations.size(); ++k) {
    const auto& v = valuations[k];
    gf.valuation_by_key_.emplace(
        std::tuple{gf.cluster_index(v.partial), v.better, v.worse},
        gf.valuation_ids_[k]);
  }
  return gf;
}

EafConditionReport check_eaf_condition(const Framework& f) {
  EafConditionReport report;
  for (AttackId forward = 0; forward < f.attacks().size(); ++forward) {
    const Attack& a = f.attack(forward);
    const auto backward = f.find_attack(a.to, a.from);
    if (!backward || f.meta_attackers(forward).empty()) continue;
    // Each unordered pair once; a self attack is its own reverse.
    if (*backward < forward) continue;
    for (ArgumentId z : f.meta_attackers(forward)) {
      for (ArgumentId z_prime : f.meta_attackers(*backward)) {
        if (!f.find_attack(z, z_prime) || !f.find_attack(z_prime, z)) {
          report.holds = false;
          report.violations.push_back({z, z_prime, forward, *backward});
        }
      }
    }
  }
  return report;
}

ArgumentCounts argument_counts(const Game& game) {
  ArgumentCounts counts;
  const std::size_t n = game.num_players();
  const std::size_t m = game.max_strategies();
  counts.game_count = game.num_profiles();
  for (PlayerIndex i = 0; i < n; ++i) {
    // Each of the num_profiles / |Ac_i| clusters holds |Ac_i| arguments.
    counts.preference_count += game.num_profiles();
  }
  counts.valuation_count = build_valuation_arguments(game).size();
  counts.bound = ipow(m, n + 1) * n;
  counts.valuation_bound = n * ipow(m, n - 1) * m * (m - 1) / 2;
  if (counts.valuation_count > counts.valuation_bound) {
    throw std::logic_error("valuation count " +
                           std::to_string(counts.valuation_count) +
                           " exceeds its bound " +
                           std::to_string(counts.valuation_bound));
  }
  return counts;
}

}  // namespace eafnash
