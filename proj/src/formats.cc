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

#include "eafnash/formats.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <variant>

namespace eafnash {
namespace {

constexpr int kFormatVersion = 1;

// Shape checks that report a JSON path.
const Json& require(const Json& j, const std::string& key,
                    const std::string& path) {
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw FormatError(path + ": missing field '" + key + "'");
  }
  return *it;
}

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path + ": expected an array");
  return j;
}

std::string require_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError(path + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(require_string(j[k], index_path(path, k)));
  }
  return out;
}

Outcome outcome_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return Outcome::numeric(j.get<double>());
  if (j.is_string()) return Outcome::named(j.get<std::string>());
  throw FormatError(path + ": expected a number or a string");
}

Json outcome_to_json(const Outcome& o) {
  if (!o.value) return o.label;
  const double v = *o.value;
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

PreferenceSpec preference_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "numeric") return PreferenceSpec::numeric();
    throw FormatError(path + ": expected \"numeric\" or {\"relations\": [...]}");
  }
  if (j.is_array()) {
    return PreferenceSpec::explicit_relations(string_list(j, path));
  }
  if (j.is_object()) {
    const std::string rpath = join_path(path, "relations");
    return PreferenceSpec::explicit_relations(
        string_list(require(j, "relations", path), rpath));
  }
  throw FormatError(path + ": expected \"numeric\" or {\"relations\": [...]}");
}

Json partial_to_json(const Game& game, const PartialProfile& p) {
  Json out = Json::array();
  for (PlayerIndex i = 0; i < p.strategies.size(); ++i) {
    out.push_back(i == p.hole ? std::string("_")
                              : game.strategy_name(i, p.strategies[i]));
  }
  return out;
}

Json provenance_to_json(const Game& game, const ArgumentContent& content) {
  return std::visit(
      [&](const auto& a) -> Json {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, GameArgument>) {
          return {{"profile", profile_to_json(game, a.profile)}};
        } else if constexpr (std::is_same_v<T, PreferenceArgument>) {
          return {{"partial", partial_to_json(game, a.partial)},
                  {"player", a.partial.hole},
                  {"strategy", game.strategy_name(a.partial.hole, a.strategy)}};
        } else {
          const PlayerIndex i = a.partial.hole;
          return {{"partial", partial_to_json(game, a.partial)},
                  {"player", i},
                  {"better", game.strategy_name(i, a.better)},
                  {"worse", game.strategy_name(i, a.worse)}};
        }
      },
      content);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view fill_colour(const std::string& kind) {
  if (kind == "game") return "#9ecae1";        // blue
  if (kind == "preference") return "#fee391";  // yellow
  if (kind == "valuation") return "#a1d99b";   // green
  return "#ffffff";
}

std::vector<std::string> names_of(const Framework& f,
                                  const std::vector<ArgumentId>& ids) {
  std::vector<std::string> out;
  for (ArgumentId a : ids) out.push_back(f.name(a));
  return out;
}

std::optional<ArgumentId> argument_field(const GameFramework& gf, const Json& j,
                                         const char* field) {
  auto it = j.find(field);
  if (it == j.end()) return std::nullopt;
  if (!it->is_string()) {
    throw DialogueError(std::string("'") + field + "' must be an argument id");
  }
  auto a = gf.framework().find(it->get<std::string>());
  if (!a) throw DialogueError("unknown argument '" + it->get<std::string>() + "'");
  return a;
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a 1-based line and column.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size() + 1);
    for (std::size_t k = 0; k + 1 < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    // Keep only nlohmann's human-readable tail.
    if (auto pos = what.find("syntax error"); pos != std::string::npos) {
      what = what.substr(pos);
    }
    throw FormatError("line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + what);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GameDescription game_description_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("game: expected an object");
  GameDescription d;
  d.players = string_list(require(j, "players", "game"), "players");
  const Json& strategies = require_array(require(j, "strategies", "game"), "strategies");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    d.strategies.push_back(string_list(strategies[i], index_path("strategies", i)));
  }
  const Json& payoffs = require_array(require(j, "payoffs", "game"), "payoffs");
  for (std::size_t k = 0; k < payoffs.size(); ++k) {
    const std::string path = index_path("payoffs", k);
    GameDescription::PayoffRow row;
    row.profile = string_list(require(payoffs[k], "profile", path),
                              join_path(path, "profile"));
    const std::string opath = join_path(path, "outcome");
    const Json& outcome = require_array(require(payoffs[k], "outcome", path), opath);
    for (std::size_t i = 0; i < outcome.size(); ++i) {
      row.outcome.push_back(outcome_from_json(outcome[i], index_path(opath, i)));
    }
    d.payoffs.push_back(std::move(row));
  }
  if (auto it = j.find("preferences"); it != j.end()) {
    require_array(*it, "preferences");
    for (std::size_t i = 0; i < it->size(); ++i) {
      d.preferences.push_back(
          preference_from_json((*it)[i], index_path("preferences", i)));
    }
  }
  return d;
}

Game parse_game(std::string_view text) {
  return Game::validate(game_description_from_json(parse_json_text(text)));
}

Game load_game_file(const std::string& path) {
  try {
    return parse_game(read_file(path));
  } catch (const FormatError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw FormatError(path + ": " + what);
  } catch (const GameError& e) {
    throw GameError(path + ": " + e.what());
  }
}

Json game_to_json(const Game& game) {
  Json strategies = Json::array();
  for (PlayerIndex i = 0; i < game.num_players(); ++i) {
    strategies.push_back(game.strategies(i));
  }
  Json payoffs = Json::array();
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    const StrategyProfile s = game.profile_at(k);
    Json outcome = Json::array();
    for (const Outcome& o : game.effect(s)) outcome.push_back(outcome_to_json(o));
    payoffs.push_back({{"profile", profile_to_json(game, s)}, {"outcome", outcome}});
  }
  Json preferences = Json::array();
  for (PlayerIndex i = 0; i < game.num_players(); ++i) {
    const PreferenceSpec& p = game.preferences().at(i);
    if (p.kind == PreferenceSpec::Kind::kNumeric) {
      preferences.push_back("numeric");
    } else {
      preferences.push_back({{"relations", p.relations}});
    }
  }
  return {{"players", game.players()},
          {"strategies", strategies},
          {"payoffs", payoffs},
          {"preferences", preferences}};
}

FrameworkDocument to_document(const GameFramework& gf) {
  const Framework& f = gf.framework();
  std::vector<NodeInfo> nodes;
  nodes.reserve(f.size());
  for (ArgumentId a = 0; a < f.size(); ++a) {
    nodes.push_back({std::string(to_string(gf.kind(a))), gf.label(a),
                     provenance_to_json(gf.game(), gf.content(a))});
  }
  return {f, std::move(nodes)};
}

Json framework_to_json(const FrameworkDocument& doc) {
  const Framework& f = doc.framework;
  Json nodes = Json::array();
  for (ArgumentId a = 0; a < f.size(); ++a) {
    Json node = {{"id", f.name(a)}};
    if (a < doc.nodes.size()) {
      if (!doc.nodes[a].kind.empty()) node["kind"] = doc.nodes[a].kind;
      if (!doc.nodes[a].label.empty()) node["label"] = doc.nodes[a].label;
      if (!doc.nodes[a].provenance.is_null()) {
        node["provenance"] = doc.nodes[a].provenance;
      }
    }
    nodes.push_back(std::move(node));
  }
  Json attacks = Json::array();
  for (AttackId c = 0; c < f.attacks().size(); ++c) {
    attacks.push_back({{"id", "c" + std::to_string(c)},
                       {"from", f.name(f.attack(c).from)},
                       {"to", f.name(f.attack(c).to)}});
  }
  Json meta = Json::array();
  for (const MetaAttack& d : f.meta_attacks()) {
    meta.push_back({{"from", f.name(d.from)},
                    {"attackId", "c" + std::to_string(d.attack)}});
  }
  return {{"format", kFrameworkFormat},
          {"version", kFormatVersion},
          {"nodes", nodes},
          {"attacks", attacks},
          {"metaAttacks", meta}};
}

FrameworkDocument framework_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("framework: expected an object");
  if (auto it = j.find("format");
      it != j.end() && (!it->is_string() || *it != kFrameworkFormat)) {
    throw FormatError("format: expected \"" + std::string(kFrameworkFormat) + "\"");
  }
  Framework::Builder builder;
  std::vector<NodeInfo> nodes;
  const Json& jnodes = require_array(require(j, "nodes", "framework"), "nodes");
  std::unordered_map<std::string, ArgumentId> node_ids;
  for (std::size_t k = 0; k < jnodes.size(); ++k) {
    const std::string path = index_path("nodes", k);
    const Json& node = jnodes[k];
    std::string id = require_string(require(node, "id", path), join_path(path, "id"));
    if (id.empty()) throw FormatError(join_path(path, "id") + ": empty id");
    if (!node_ids.emplace(id, k).second) {
      throw FormatError(join_path(path, "id") + ": duplicate id '" + id + "'");
    }
    NodeInfo info;
    if (auto it = node.find("kind"); it != node.end()) {
      info.kind = require_string(*it, join_path(path, "kind"));
    }
    if (auto it = node.find("label"); it != node.end()) {
      info.label = require_string(*it, join_path(path, "label"));
    }
    if (auto it = node.find("provenance"); it != node.end()) info.provenance = *it;
    builder.add_argument(std::move(id));
    nodes.push_back(std::move(info));
  }

  std::unordered_map<std::string, AttackId> attack_ids;
  const Json& jattacks = require_array(require(j, "attacks", "framework"), "attacks");
  for (std::size_t k = 0; k < jattacks.size(); ++k) {
    const std::string path = index_path("attacks", k);
    const Json& attack = jattacks[k];
    const std::string from =
        require_string(require(attack, "from", path), join_path(path, "from"));
    const std::string to =
        require_string(require(attack, "to", path), join_path(path, "to"));
    AttackId c;
    try {
      c = builder.add_attack(std::string_view(from), std::string_view(to));
    } catch (const FrameworkError& e) {
      throw FormatError(path + ": " + e.what());
    }
    if (auto it = attack.find("id"); it != attack.end()) {
      const std::string id = require_string(*it, join_path(path, "id"));
      if (!attack_ids.emplace(id, c).second) {
        throw FormatError(join_path(path, "id") + ": duplicate attack id '" + id + "'");
      }
    }
  }

  if (auto it = j.find("metaAttacks"); it != j.end()) {
    require_array(*it, "metaAttacks");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = index_path("metaAttacks", k);
      const Json& meta = (*it)[k];
      const std::string from =
          require_string(require(meta, "from", path), join_path(path, "from"));
      const std::string id = require_string(require(meta, "attackId", path),
                                            join_path(path, "attackId"));
      auto attack = attack_ids.find(id);
      if (attack == attack_ids.end()) {
        throw FormatError(join_path(path, "attackId") + ": unknown attack '" + id + "'");
      }
      auto source = node_ids.find(from);
      if (source == node_ids.end()) {
        throw FormatError(join_path(path, "from") + ": unknown argument '" + from + "'");
      }
      builder.add_meta_attack(source->second, attack->second);
    }
  }
  return {std::move(builder).build(), std::move(nodes)};
}

std::string framework_to_dot(const FrameworkDocument& doc) {
  const Framework& f = doc.framework;
  std::ostringstream out;
  out << "digraph eaf {\n";
  out << "  node [style=filled, fontname=\"Helvetica\"];\n";
  for (ArgumentId a = 0; a < f.size(); ++a) {
    const std::string kind = a < doc.nodes.size() ? doc.nodes[a].kind : "";
    const std::string label =
        a < doc.nodes.size() && !doc.nodes[a].label.empty() ? doc.nodes[a].label
                                                            : f.name(a);
    out << "  \"" << dot_escape(f.name(a)) << "\" [label=\"" << dot_escape(label)
        << "\", fillcolor=\"" << fill_colour(kind) << "\"";
    if (!kind.empty()) out << ", class=\"" << kind << "\"";
    out << "];\n";
  }
  for (AttackId c = 0; c < f.attacks().size(); ++c) {
    const std::string from = dot_escape(f.name(f.attack(c).from));
    const std::string to = dot_escape(f.name(f.attack(c).to));
    if (f.meta_attackers(c).empty()) {
      out << "  \"" << from << "\" -> \"" << to << "\" [color=black];\n";
    } else {
      const std::string anchor = "c" + std::to_string(c);
      out << "  \"" << anchor
          << "\" [shape=point, width=0.06, label=\"\", color=black];\n";
      out << "  \"" << from << "\" -> \"" << anchor
          << "\" [color=black, arrowhead=none];\n";
      out << "  \"" << anchor << "\" -> \"" << to << "\" [color=black];\n";
    }
  }
  for (const MetaAttack& d : f.meta_attacks()) {
    out << "  \"" << dot_escape(f.name(d.from)) << "\" -> \"c" << d.attack
        << "\" [style=dashed, color=red];\n";
  }
  out << "}\n";
  return out.str();
}

Json profile_to_json(const Game& game, const StrategyProfile& profile) {
  Json out = Json::array();
  for (PlayerIndex i = 0; i < profile.size(); ++i) {
    out.push_back(game.strategy_name(i, profile[i]));
  }
  return out;
}

StrategyProfile profile_from_json(const Game& game, const Json& j) {
  if (!j.is_array()) throw GameError("profile: expected an array of strategy names");
  std::vector<std::string> names;
  for (const Json& item : j) {
    if (!item.is_string()) throw GameError("profile: expected strategy names");
    names.push_back(item.get<std::string>());
  }
  return game.parse_profile(names);
}

StrategyProfile parse_profile_flag(const Game& game, std::string_view text) {
  std::vector<std::string> names;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      names.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  names.push_back(current);
  return game.parse_profile(names);
}

Json extensions_to_json(const Framework& f, const std::vector<Extension>& extensions) {
  Json out = Json::array();
  for (const Extension& e : extensions) {
    out.push_back({{"semantics", to_string(e.semantics)},
                   {"members", f.sorted_names(e.members)}});
  }
  return out;
}

Json counts_to_json(const ArgumentCounts& counts) {
  return {{"game", counts.game_count},
          {"preference", counts.preference_count},
          {"valuation", counts.valuation_count},
          {"total", counts.total()},
          {"bound", counts.bound}};
}

Json results_to_json(const GameFramework& gf, const SolveReport& report,
                     Semantics semantics) {
  const Framework& f = gf.framework();
  const Game& game = gf.game();
  const std::vector<Extension>& chosen =
      semantics == Semantics::kStable ? report.stable : report.preferred;
  Json nash = Json::array();
  for (const StrategyProfile& s : report.nash) nash.push_back(profile_to_json(game, s));
  Json classes = Json::array();
  for (const StableClass& c : report.stable_classes) {
    classes.push_back({{"profile", profile_to_json(game, c.profile)},
                       {"gameArgument", f.name(gf.game_argument(c.profile))},
                       {"extensions", c.extensions}});
  }
  return {{"format", kResultsFormat},
          {"version", kFormatVersion},
          {"engine", to_string(report.engine)},
          {"semantics", to_string(semantics)},
          {"extensions", extensions_to_json(f, chosen)},
          {"nash", nash},
          {"stableClasses", classes},
          {"counts", counts_to_json(argument_counts(game))}};
}

Json explanation_to_json(const GameFramework& gf, const ExplanationNode& node) {
  const Framework& f = gf.framework();
  Json out = {{"claim", to_string(node.kind)},
              {"template", node.template_id},
              {"referents", names_of(f, node.referents)},
              {"prose", node.prose}};
  if (node.attack) {
    const Attack& c = f.attack(*node.attack);
    out["attack"] = {{"from", f.name(c.from)}, {"to", f.name(c.to)}};
  }
  if (node.profile) out["profile"] = profile_to_json(gf.game(), *node.profile);
  if (node.player) {
    out["player"] = gf.game().player_name(*node.player);
    Json strategies = Json::array();
    for (StrategyIndex s : node.strategies) {
      strategies.push_back(gf.game().strategy_name(*node.player, s));
    }
    out["strategies"] = strategies;
  }
  Json children = Json::array();
  for (const auto& child : node.children) {
    children.push_back(explanation_to_json(gf, child));
  }
  out["children"] = children;
  return out;
}

std::string render_tree(const GameFramework& gf, const ExplanationNode& node) {
  std::ostringstream out;
  const auto walk = [&](const auto& self, const ExplanationNode& n,
                        std::size_t depth) -> void {
    out << std::string(2 * depth, ' ') << to_string(n.kind);
    if (n.kind == ClaimKind::kDefeats && n.referents.size() >= 2) {
      out << " " << gf.framework().name(n.referents[0]) << " -> "
          << gf.framework().name(n.referents[1]);
    } else if (!n.referents.empty()) {
      out << " " << gf.framework().name(n.referents.front());
    }
    out << ": " << n.prose << "\n";
    for (const auto& child : n.children) self(self, child, depth + 1);
  };
  walk(walk, node, 0);
  return out.str();
}

Json move_to_json(const GameFramework& gf, const Move& move) {
  const Framework& f = gf.framework();
  Json out = {{"move", to_string(move.kind)}};
  if (move.profile) out["profile"] = profile_to_json(gf.game(), *move.profile);
  if (move.attacker) out["attacker"] = f.name(*move.attacker);
  if (move.target) out["target"] = f.name(*move.target);
  if (move.argument) out["argument"] = f.name(*move.argument);
  return out;
}

Move move_from_json(const GameFramework& gf, const Json& j) {
  if (!j.is_object()) throw DialogueError("a move must be a JSON object");
  auto kind = j.find("move");
  if (kind == j.end() || !kind->is_string()) {
    throw DialogueError("a move needs a 'move' field");
  }
  Move move;
  move.kind = parse_move_kind(kind->get<std::string>());
  if (auto it = j.find("profile"); it != j.end()) {
    try {
      move.profile = profile_from_json(gf.game(), *it);
    } catch (const GameError& e) {
      throw DialogueError(e.what());
    }
  }
  move.attacker = argument_field(gf, j, "attacker");
  move.target = argument_field(gf, j, "target");
  move.argument = argument_field(gf, j, "argument");
  return move;
}

Json reply_to_json(const GameFramework& gf, const Reply& reply) {
  Json moves = Json::array();
  for (const Move& m : reply.legal_moves) moves.push_back(move_to_json(gf, m));
  Json out = {{"prose", reply.prose},
              {"referents", names_of(gf.framework(), reply.referents)},
              {"legalMoves", moves}};
  out["node"] = reply.node ? explanation_to_json(gf, *reply.node) : Json();
  return out;
}

std::size_t brute_force_cap_from_env(std::size_t fallback) {
  const char* value = std::getenv("EAFNASH_BRUTE_FORCE_CAP");
  if (value == nullptr || *value == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(value, &end, 10);
  if (*end != '\0' || cap == 0) return fallback;
  return static_cast<std::size_t>(cap);
}

}  // namespace eafnash
