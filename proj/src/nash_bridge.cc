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

#include "eafnash/nash_bridge.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace eafnash {
namespace {

std::string dump_game(const Game& game) {
  std::ostringstream out;
  out << "game with " << game.num_players() << " players:";
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    const StrategyProfile s = game.profile_at(k);
    out << " " << to_string(game, s) << "->(";
    const auto& effect = game.effect(s);
    for (std::size_t i = 0; i < effect.size(); ++i) {
      out << (i ? "," : "") << effect[i].label;
    }
    out << ")";
  }
  return out.str();
}

std::string dump_extension(const Framework& f, const ArgumentSet& e) {
  std::string out = "{";
  bool first = true;
  for (const auto& name : f.sorted_names(e)) {
    out += (first ? "" : " ") + name;
    first = false;
  }
  return out + "}";
}

std::string dump_profiles(const Game& game,
                          const std::vector<StrategyProfile>& profiles) {
  std::string out = "{";
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    out += (k ? " " : "") + to_string(game, profiles[k]);
  }
  return out + "}";
}

std::optional<StrategyProfile> game_content(const GameFramework& gf,
                                            const ArgumentSet& e) {
  for (ArgumentId a : gf.game_arguments()) {
    if (e.test(a)) return std::get<GameArgument>(gf.content(a)).profile;
  }
  return std::nullopt;
}

std::vector<std::size_t> game_members(const GameFramework& gf,
                                      const ArgumentSet& e) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < gf.game_arguments().size(); ++k) {
    if (e.test(gf.game_arguments()[k])) out.push_back(k);
  }
  return out;
}

std::vector<StableClass> group_by_profile(const GameFramework& gf,
                                          const std::vector<Extension>& stable) {
  std::map<std::size_t, StableClass> classes;
  for (std::size_t k = 0; k < stable.size(); ++k) {
    const auto content = game_content(gf, stable[k].members);
    if (!content) continue;
    auto& cls = classes[gf.game().index_of(*content)];
    cls.profile = *content;
    cls.extensions.push_back(k);
  }
  std::vector<StableClass> out;
  for (auto& [index, cls] : classes) out.push_back(std::move(cls));
  return out;
}

}  // namespace

std::size_t structured_candidate_count(const GameFramework& gf) {
  constexpr std::size_t kSaturated = static_cast<std::size_t>(-1);
  std::size_t count = 1;
  for (const auto& cluster : gf.clusters()) {
    const std::size_t width = cluster.best.size();
    if (count > kSaturated / width) return kSaturated;
    count *= width;
  }
  return count;
}

std::vector<Extension> enumerate_preferred_structured(const GameFramework& gf,
                                                      std::size_t cap) {
  const std::size_t candidates = structured_candidate_count(gf);
  if (candidates > cap) {
    throw CandidateCapError(
        "structured enumeration needs " +
        (candidates == static_cast<std::size_t>(-1) ? std::string("too many")
                                                    : std::to_string(candidates)) +
        " best-response assignments, above the cap of " + std::to_string(cap));
  }
  const Game& game = gf.game();
  const Framework& f = gf.framework();
  const auto& clusters = gf.clusters();

  // cluster_of[k][i]: the cluster S_-i of profile k.
  std::vector<std::vector<std::size_t>> cluster_of(game.num_profiles());
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    const StrategyProfile s = game.profile_at(k);
    for (PlayerIndex i = 0; i < game.num_players(); ++i) {
      cluster_of[k].push_back(gf.cluster_index(remove(s, i)));
    }
  }

  ArgumentSet base = f.empty_set();
  for (ArgumentId v : gf.valuation_arguments()) base.set(v);

  std::vector<Extension> out;
  std::vector<std::size_t> digit(clusters.size(), 0);
  auto admit = [&](ArgumentSet members) {
    if (!is_admissible(f, members)) {
      throw InternalConsistencyError(
          "structured candidate is not admissible: " + dump_extension(f, members) +
          " in " + dump_game(game));
    }
    out.push_back({std::move(members), Semantics::kPreferred});
  };
  for (std::size_t visited = 0; visited < candidates; ++visited) {
    ArgumentSet members = base;
    std::vector<StrategyIndex> chosen(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      chosen[c] = clusters[c].best[digit[c]];
      members.set(clusters[c].members[chosen[c]]);
    }
    bool any_game = false;
    for (std::size_t k = 0; k < game.num_profiles(); ++k) {
      const StrategyProfile s = game.profile_at(k);
      bool compatible = true;
      for (PlayerIndex i = 0; i < game.num_players() && compatible; ++i) {
        compatible = chosen[cluster_of[k][i]] == s[i];
      }
      if (!compatible) continue;
      any_game = true;
      ArgumentSet with_game = members;
      with_game.set(gf.game_arguments()[k]);
      admit(std::move(with_game));
    }
    if (!any_game) admit(std::move(members));

    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (++digit[c] < clusters[c].best.size()) break;
      digit[c] = 0;
    }
  }
  sort_extensions(f, out);
  return out;
}

std::vector<StrategyProfile> nash_from_framework(const GameFramework& gf) {
  const Game& game = gf.game();
  std::vector<StrategyProfile> out;
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    const StrategyProfile s = game.profile_at(k);
    bool best_everywhere = true;
    for (PlayerIndex i = 0; i < game.num_players() && best_everywhere; ++i) {
      best_everywhere = gf.is_best(remove(s, i), s[i]);
    }
    if (best_everywhere) out.push_back(s);
  }
  return out;
}

std::vector<StrategyProfile> nash_from_extensions(
    const GameFramework& gf, const std::vector<Extension>& preferred) {
  std::vector<StrategyProfile> out;
  for (std::size_t k = 0; k < gf.game_arguments().size(); ++k) {
    const ArgumentId a = gf.game_arguments()[k];
    const bool present =
        std::any_of(preferred.begin(), preferred.end(),
                    [&](const Extension& e) { return e.members.test(a); });
    if (present) out.push_back(gf.game().profile_at(k));
  }
  return out;
}

StableResult stable_from_preferred(const GameFramework& gf,
                                   const std::vector<Extension>& preferred) {
  StableResult result;
  for (const Extension& e : preferred) {
    if (!game_content(gf, e.members)) continue;
    if (!is_stable(gf.framework(), e.members)) {
      throw InternalConsistencyError(
          "preferred extension with a game argument is not stable: " +
          dump_extension(gf.framework(), e.members) + " in " +
          dump_game(gf.game()));
    }
    result.stable.push_back({e.members, Semantics::kStable});
  }
  sort_extensions(gf.framework(), result.stable);
  result.classes = group_by_profile(gf, result.stable);
  return result;
}

std::string_view to_string(Engine engine) {
  return engine == Engine::kStructured ? "structured" : "generic";
}

Engine parse_engine(std::string_view text) {
  if (text == "structured") return Engine::kStructured;
  if (text == "generic") return Engine::kGeneric;
  throw std::invalid_argument("unknown engine '" + std::string(text) +
                              "' (allowed: structured, generic)");
}

SolveReport solve(const GameFramework& gf, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  report.engine = options.engine;
  if (options.engine == Engine::kStructured) {
    report.preferred = enumerate_preferred_structured(gf, options.candidate_cap);
    StableResult stable = stable_from_preferred(gf, report.preferred);
    report.stable = std::move(stable.stable);
    report.stable_classes = std::move(stable.classes);
  } else {
    const Framework& f = gf.framework();
    report.preferred = enumerate_extensions_bruteforce(f, Semantics::kPreferred,
                                                       options.brute_force_cap);
    report.stable = enumerate_extensions_bruteforce(f, Semantics::kStable,
                                                    options.brute_force_cap);
    report.stable_classes = group_by_profile(gf, report.stable);
  }
  report.nash = nash_from_framework(gf);
  if (nash_from_extensions(gf, report.preferred) != report.nash) {
    throw InternalConsistencyError(
        "Nash profiles read off the preferred extensions " +
        dump_profiles(gf.game(), nash_from_extensions(gf, report.preferred)) +
        " differ from the best-response fast path " +
        dump_profiles(gf.game(), report.nash));
  }
  for (const Extension& e : report.preferred) {
    report.preferred_game_content.push_back(game_content(gf, e.members));
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

std::vector<std::string> check_structural_properties(
    const GameFramework& gf, const std::vector<Extension>& preferred,
    const std::vector<StrategyProfile>& oracle_nash) {
  const Framework& f = gf.framework();
  const Game& game = gf.game();
  std::vector<std::string> violations;
  for (const Extension& e : preferred) {
    const std::string where =
        " in " + dump_extension(f, e.members) + " of " + dump_game(game);
    for (const auto& cluster : gf.clusters()) {
      std::size_t hits = 0;
      for (ArgumentId p : cluster.members) hits += e.members.test(p) ? 1 : 0;
      if (hits != 1) {
        violations.push_back("cluster " + to_string(game, cluster.key) + " has " +
                             std::to_string(hits) + " members" + where);
      }
    }
    const auto games = game_members(gf, e.members);
    if (games.size() > 1) {
      violations.push_back(std::to_string(games.size()) + " game arguments" + where);
    }
    for (std::size_t k : games) {
      const StrategyProfile s = game.profile_at(k);
      if (std::find(oracle_nash.begin(), oracle_nash.end(), s) == oracle_nash.end()) {
        violations.push_back("non-Nash profile " + to_string(game, s) + where);
      }
    }
    if (!games.empty() && !is_stable(f, e.members)) {
      violations.push_back("extension with a game argument is not stable" + where);
    }
    for (ArgumentId v : gf.valuation_arguments()) {
      if (!e.members.test(v)) {
        violations.push_back("valuation argument " + f.name(v) + " missing" + where);
      }
    }
  }
  return violations;
}

CrossValidationReport cross_validate(const GameFramework& gf,
                                     std::size_t size_cap,
                                     std::size_t candidate_cap) {
  CrossValidationReport report;
  const Game& game = gf.game();
  const Framework& f = gf.framework();
  auto fail = [&](std::string message) {
    report.ok = false;
    report.failures.push_back(std::move(message));
  };

  const auto oracle = nash_equilibria_bruteforce(game);
  report.nash_count = oracle.size();
  const auto fast = nash_from_framework(gf);
  if (fast != oracle) {
    fail("fast-path Nash " + dump_profiles(game, fast) + " != oracle " +
         dump_profiles(game, oracle) + " for " + dump_game(game));
  }

  std::optional<std::vector<Extension>> structured;
  std::optional<StableResult> stable;
  try {
    structured = enumerate_preferred_structured(gf, candidate_cap);
    report.structured_enumerated = true;
    report.preferred_count = structured->size();
    for (auto& v : check_structural_properties(gf, *structured, oracle)) {
      fail(std::move(v));
    }
    const auto enumerated = nash_from_extensions(gf, *structured);
    if (enumerated != oracle) {
      fail("Nash from preferred extensions " + dump_profiles(game, enumerated) +
           " != oracle " + dump_profiles(game, oracle) + " for " + dump_game(game));
    }
    stable = stable_from_preferred(gf, *structured);
    report.stable_class_count = stable->classes.size();
    if (stable->classes.size() != oracle.size()) {
      fail(std::to_string(stable->classes.size()) + " stable classes but " +
           std::to_string(oracle.size()) + " Nash equilibria for " +
           dump_game(game));
    }
  } catch (const CandidateCapError&) {
    // Too tied to enumerate; the fast path above still ran.
  } catch (const InternalConsistencyError& e) {
    fail(e.what());
  }

  if (f.size() <= size_cap) {
    report.compared_with_bruteforce = true;
    const auto generic =
        enumerate_extensions_bruteforce(f, Semantics::kPreferred, size_cap);
    if (structured && generic != *structured) {
      std::string message = "structured and generic preferred extensions differ for " +
                            dump_game(game) + "; generic:";
      for (const auto& e : generic) message += " " + dump_extension(f, e.members);
      message += "; structured:";
      for (const auto& e : *structured) message += " " + dump_extension(f, e.members);
      fail(std::move(message));
    }
    for (auto& v : check_structural_properties(gf, generic, oracle)) {
      fail("generic: " + v);
    }
    const auto generic_stable =
        enumerate_extensions_bruteforce(f, Semantics::kStable, size_cap);
    if (group_by_profile(gf, generic_stable).size() != oracle.size()) {
      fail("generic stable classes do not match the Nash count for " +
           dump_game(game));
    }
    if (stable && generic_stable != stable->stable) {
      fail("generic stable extensions differ from the stable preferred ones for " +
           dump_game(game));
    }
  }
  return report;
}

}  // namespace eafnash
