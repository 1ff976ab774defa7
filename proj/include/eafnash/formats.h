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

// JSON exchange formats (game, framework, results, explanations, dialogue
// moves) and the DOT graph export.
//
// Game file:
//   {"players": ["player 0", "player 1"],
//    "strategies": [["stag", "hare"], ["stag", "hare"]],
//    "payoffs": [{"profile": ["stag", "stag"], "outcome": [4, 4]}, ...],
//    "preferences": ["numeric", {"relations": ["low<mid", "mid<=high"]}]}
//
// Framework file:
//   {"format": "eafnash-framework", "version": 1,
//    "nodes": [{"id", "kind", "label", "provenance"}],
//    "attacks": [{"id": "c0", "from", "to"}],
//    "metaAttacks": [{"from", "attackId"}]}

#ifndef EAFNASH_FORMATS_H_
#define EAFNASH_FORMATS_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eafnash/eaf.h"
#include "eafnash/explain.h"
#include "eafnash/game.h"
#include "eafnash/game_framework.h"
#include "eafnash/nash_bridge.h"
#include "json.hpp"

namespace eafnash {

using Json = nlohmann::json;

inline constexpr std::string_view kFrameworkFormat = "eafnash-framework";
inline constexpr std::string_view kResultsFormat = "eafnash-results";

// Malformed input: JSON syntax (with line:column) or wrong shape (with a JSON
// path such as payoffs[2].outcome).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json parse_json_text(std::string_view text);
std::string read_file(const std::string& path);

GameDescription game_description_from_json(const Json& j);
// Shape errors throw FormatError, semantic ones GameError.
Game parse_game(std::string_view text);
Game load_game_file(const std::string& path);
// Canonical form: payoffs in profile index order, every preference explicit.
Json game_to_json(const Game& game);

struct NodeInfo {
  std::string kind;
  std::string label;
  Json provenance;
};

struct FrameworkDocument {
  Framework framework;
  std::vector<NodeInfo> nodes;  // parallel to framework arguments
};

FrameworkDocument to_document(const GameFramework& gf);
Json framework_to_json(const FrameworkDocument& doc);
FrameworkDocument framework_from_json(const Json& j);
// Game, preference and valuation nodes get distinct fill colours; an attack
// that is itself attacked is routed through a small anchor node so dashed
// meta-attack edges can point at it.
std::string framework_to_dot(const FrameworkDocument& doc);

Json profile_to_json(const Game& game, const StrategyProfile& profile);
StrategyProfile profile_from_json(const Game& game, const Json& j);
// "stag,hare" in player order; throws GameError on unknown names.
StrategyProfile parse_profile_flag(const Game& game, std::string_view text);

Json extensions_to_json(const Framework& f, const std::vector<Extension>& extensions);
Json counts_to_json(const ArgumentCounts& counts);
Json results_to_json(const GameFramework& gf, const SolveReport& report,
                     Semantics semantics);

Json explanation_to_json(const GameFramework& gf, const ExplanationNode& node);
// Indented plain-text rendering for terminals.
std::string render_tree(const GameFramework& gf, const ExplanationNode& node);

Json move_to_json(const GameFramework& gf, const Move& move);
// Throws DialogueError for malformed moves or unknown referents.
Move move_from_json(const GameFramework& gf, const Json& j);
Json reply_to_json(const GameFramework& gf, const Reply& reply);

// Brute-force size cap from EAFNASH_BRUTE_FORCE_CAP, else `fallback`.
std::size_t brute_force_cap_from_env(std::size_t fallback = kDefaultBruteForceCap);

}  // namespace eafnash

#endif  // EAFNASH_FORMATS_H_
