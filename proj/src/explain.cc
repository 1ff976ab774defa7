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

#include "eafnash/explain.h"

#include <algorithm>

#include "eafnash/templates_data.h"
#include "json.hpp"

namespace eafnash {
namespace {

using Slots = std::map<std::string, std::string>;

std::string render(const std::string& template_id, const Slots& slots) {
  std::string text = prose_templates().at(template_id);
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find('{', pos);
    if (open == std::string::npos) break;
    const auto close = text.find('}', open);
    if (close == std::string::npos) break;
    out += text.substr(pos, open - pos);
    const auto it = slots.find(text.substr(open + 1, close - open - 1));
    out += it == slots.end() ? text.substr(open, close - open + 1) : it->second;
    pos = close + 1;
  }
  return out + text.substr(pos);
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += (k + 1 == items.size()) ? " and " : ", ";
    out += items[k];
  }
  return out;
}

// "player 0 plays stag and player 2 plays hare".
std::string context(const Game& game, const PartialProfile& key) {
  std::vector<std::string> parts;
  for (PlayerIndex j = 0; j < key.strategies.size(); ++j) {
    if (j == key.hole) continue;
    parts.push_back(game.player_name(j) + " plays " +
                    game.strategy_name(j, key.strategies[j]));
  }
  if (parts.empty()) return prose_templates().at("context.alone");
  return join_list(parts);
}

bool is_nash(const GameFramework& gf, const StrategyProfile& s) {
  for (PlayerIndex i = 0; i < s.size(); ++i) {
    if (!gf.is_best(remove(s, i), s[i])) return false;
  }
  return true;
}

ExplanationNode valuation_node(const GameFramework& gf, ArgumentId v) {
  const Game& game = gf.game();
  const auto& content = std::get<ValuationArgument>(gf.content(v));
  const PlayerIndex i = content.partial.hole;
  ExplanationNode node;
  node.kind = ClaimKind::kValuation;
  node.template_id = "valuation";
  node.referents = {v};
  node.player = i;
  node.strategies = {content.better, content.worse};
  node.prose = render(
      node.template_id,
      {{"player", game.player_name(i)},
       {"context", context(game, content.partial)},
       {"better", game.strategy_name(i, content.better)},
       {"worse", game.strategy_name(i, content.worse)},
       {"better_outcome", game.effect(oplus(content.partial, content.better))[i].label},
       {"worse_outcome", game.effect(oplus(content.partial, content.worse))[i].label}});
  return node;
}

ExplanationNode sibling_defeat(const GameFramework& gf, const StrategyProfile& s,
                               const StrategyProfile& t, PlayerIndex i) {
  const Game& game = gf.game();
  const Framework& f = gf.framework();
  const ArgumentId gs = gf.game_argument(s);
  const ArgumentId gt = gf.game_argument(t);
  const PartialProfile key = remove(s, i);
  const ArgumentId blocker = gf.preference_argument(key, s[i]);
  const bool tied = game.level(i, t) == game.level(i, s);

  ExplanationNode preference;
  preference.kind = ClaimKind::kPreferenceHolds;
  preference.referents = {blocker};
  preference.attack = f.find_attack(gt, gs);
  preference.player = i;
  preference.strategies = {s[i]};
  std::vector<std::string> valuation_ids;
  for (StrategyIndex w = 0; w < game.num_strategies(i); ++w) {
    if (const auto v = gf.valuation_argument(key, s[i], w)) {
      preference.children.push_back(valuation_node(gf, *v));
      preference.referents.push_back(*v);
      valuation_ids.push_back(f.name(*v));
    }
  }
  if (!valuation_ids.empty()) {
    preference.template_id = "preference.strict";
    preference.prose = render(preference.template_id,
                              {{"player", game.player_name(i)},
                               {"list", join_list(valuation_ids)}});
  } else {
    std::vector<std::string> others;
    for (StrategyIndex w = 0; w < game.num_strategies(i); ++w) {
      if (w != s[i]) others.push_back(game.strategy_name(i, w));
    }
    preference.template_id = "preference.tied";
    preference.prose = render(preference.template_id,
                              {{"player", game.player_name(i)},
                               {"strategy", game.strategy_name(i, s[i])},
                               {"list", join_list(others)},
                               {"context", context(game, key)}});
  }

  ExplanationNode node;
  node.kind = ClaimKind::kDefeats;
  node.template_id = tied ? "defeats.sibling_tied" : "defeats.sibling";
  node.referents = {gs, gt, blocker};
  node.attack = f.find_attack(gs, gt);
  node.profile = t;
  node.player = i;
  node.strategies = {s[i], t[i]};
  node.prose = render(node.template_id,
                      {{"strategy", game.strategy_name(i, s[i])},
                       {"other", game.strategy_name(i, t[i])},
                       {"player", game.player_name(i)},
                       {"context", context(game, key)}});
  node.children.push_back(std::move(preference));
  return node;
}

ExplanationNode unblocked_defeat(const GameFramework& gf, const StrategyProfile& s,
                                 const StrategyProfile& t) {
  const Framework& f = gf.framework();
  const ArgumentId gs = gf.game_argument(s);
  const ArgumentId gt = gf.game_argument(t);
  ExplanationNode node;
  node.kind = ClaimKind::kDefeats;
  node.template_id = "defeats.unblocked";
  node.referents = {gs, gt};
  node.attack = f.find_attack(gs, gt);
  node.profile = t;
  node.prose = render(node.template_id,
                      {{"argument", f.name(gs)}, {"target", f.name(gt)}});
  return node;
}

Reply reply_for(const GameFramework& gf, const SolveReport& report,
                const DialogueState& state, const ExplanationNode* node,
                std::string prose) {
  Reply reply;
  reply.prose = std::move(prose);
  if (node) {
    reply.referents = node->referents;
    reply.node = *node;
  }
  reply.legal_moves = legal_moves(gf, report, state);
  return reply;
}

ArgumentId checked_argument(const GameFramework& gf,
                            const std::optional<ArgumentId>& a,
                            const char* field) {
  if (!a) throw DialogueError(std::string("move is missing '") + field + "'");
  if (*a >= gf.framework().size()) {
    throw DialogueError("unknown argument id " + std::to_string(*a));
  }
  return *a;
}

}  // namespace

std::string_view to_string(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::kIsNash:
      return "IS_NASH";
    case ClaimKind::kDefeats:
      return "DEFEATS";
    case ClaimKind::kPreferenceHolds:
      return "PREFERENCE_HOLDS";
    case ClaimKind::kValuation:
      return "VALUATION";
    case ClaimKind::kNotNash:
      return "NOT_NASH";
    case ClaimKind::kDeviationWitness:
      return "DEVIATION_WITNESS";
  }
  return "UNKNOWN";
}

const std::map<std::string, std::string>& prose_templates() {
  static const auto* templates = [] {
    auto* out = new std::map<std::string, std::string>();
    const nlohmann::json parsed = nlohmann::json::parse(internal::kTemplatesJson);
    for (const auto& [key, value] : parsed.items()) {
      (*out)[key] = value.get<std::string>();
    }
    return out;
  }();
  return *templates;
}

std::optional<std::size_t> anchor_extension(const GameFramework& gf,
                                            const SolveReport& report,
                                            const StrategyProfile& profile) {
  const ArgumentId g = gf.game_argument(profile);
  for (std::size_t k = 0; k < report.preferred.size(); ++k) {
    if (report.preferred[k].members.test(g)) return k;
  }
  return std::nullopt;
}

ExplanationNode explain_nash(const GameFramework& gf, const SolveReport& report,
                             const StrategyProfile& profile) {
  const Game& game = gf.game();
  if (!game.is_valid(profile)) throw ExplanationRefused("invalid profile");
  if (std::find(report.nash.begin(), report.nash.end(), profile) ==
      report.nash.end()) {
    throw ExplanationRefused(to_string(game, profile) +
                             " is not a Nash equilibrium; ask why not instead");
  }
  if (!anchor_extension(gf, report, profile)) {
    throw InternalConsistencyError("no preferred extension contains " +
                                   to_string(game, profile));
  }
  const Framework& f = gf.framework();
  const ArgumentId gs = gf.game_argument(profile);

  ExplanationNode root;
  root.kind = ClaimKind::kIsNash;
  root.referents = {gs};
  root.profile = profile;
  std::vector<std::string> defeated;
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    const StrategyProfile t = game.profile_at(k);
    if (t == profile) continue;
    std::vector<PlayerIndex> differ;
    for (PlayerIndex i = 0; i < t.size(); ++i) {
      if (t[i] != profile[i]) differ.push_back(i);
    }
    root.children.push_back(differ.size() == 1
                                ? sibling_defeat(gf, profile, t, differ[0])
                                : unblocked_defeat(gf, profile, t));
    root.referents.push_back(gf.game_argument(t));
    defeated.push_back(f.name(gf.game_argument(t)));
  }
  root.template_id = defeated.empty() ? "is_nash.alone" : "is_nash";
  root.prose = render(root.template_id,
                      {{"argument", f.name(gs)}, {"list", join_list(defeated)}});
  return root;
}

ExplanationNode explain_not_nash(const GameFramework& gf,
                                 const StrategyProfile& profile) {
  const Game& game = gf.game();
  if (!game.is_valid(profile)) throw ExplanationRefused("invalid profile");
  if (is_nash(gf, profile)) {
    throw ExplanationRefused(to_string(game, profile) +
                             " is a Nash equilibrium; ask why instead");
  }
  const Framework& f = gf.framework();
  const ArgumentId gs = gf.game_argument(profile);
  ExplanationNode root;
  root.kind = ClaimKind::kNotNash;
  root.template_id = "not_nash";
  root.referents = {gs};
  root.profile = profile;
  root.prose = render(root.template_id, {{"argument", f.name(gs)}});
  for (PlayerIndex i = 0; i < game.num_players(); ++i) {
    const PartialProfile key = remove(profile, i);
    for (StrategyIndex s = 0; s < game.num_strategies(i); ++s) {
      const auto v = gf.valuation_argument(key, s, profile[i]);
      if (!v) continue;
      ExplanationNode witness;
      witness.kind = ClaimKind::kDeviationWitness;
      witness.template_id = "deviation";
      witness.referents = {*v, gs};
      witness.player = i;
      witness.strategies = {s, profile[i]};
      witness.prose = render(witness.template_id,
                             {{"player", game.player_name(i)},
                              {"better", game.strategy_name(i, s)},
                              {"worse", game.strategy_name(i, profile[i])},
                              {"context", context(game, key)},
                              {"valuation", f.name(*v)}});
      root.children.push_back(std::move(witness));
    }
  }
  return root;
}

std::size_t tree_depth(const ExplanationNode& node) {
  std::size_t deepest = 0;
  for (const auto& child : node.children) {
    deepest = std::max(deepest, tree_depth(child));
  }
  return deepest + 1;
}

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::kWhy:
      return "WHY";
    case MoveKind::kWhyDefeat:
      return "WHY_DEFEAT";
    case MoveKind::kWhyPreference:
      return "WHY_PREFERENCE";
    case MoveKind::kWhyNot:
      return "WHY_NOT";
    case MoveKind::kConcede:
      return "CONCEDE";
    case MoveKind::kEnd:
      return "END";
  }
  return "UNKNOWN";
}

MoveKind parse_move_kind(std::string_view text) {
  for (MoveKind kind : {MoveKind::kWhy, MoveKind::kWhyDefeat,
                        MoveKind::kWhyPreference, MoveKind::kWhyNot,
                        MoveKind::kConcede, MoveKind::kEnd}) {
    if (to_string(kind) == text) return kind;
  }
  throw DialogueError("unknown move '" + std::string(text) +
                      "' (allowed: WHY, WHY_DEFEAT, WHY_PREFERENCE, WHY_NOT, "
                      "CONCEDE, END)");
}

std::vector<Move> legal_moves(const GameFramework& gf, const SolveReport& report,
                              const DialogueState& state) {
  std::vector<Move> moves;
  if (state.closed) return moves;
  if (state.focus.empty()) {
    const Game& game = gf.game();
    for (std::size_t k = 0; k < game.num_profiles(); ++k) {
      const StrategyProfile s = game.profile_at(k);
      const bool nash =
          std::find(report.nash.begin(), report.nash.end(), s) != report.nash.end();
      Move m;
      m.kind = nash ? MoveKind::kWhy : MoveKind::kWhyNot;
      m.profile = s;
      moves.push_back(m);
    }
    moves.emplace_back(MoveKind::kEnd);
    return moves;
  }
  const ExplanationNode& top = state.focus.back();
  for (const auto& child : top.children) {
    Move m;
    if (top.kind == ClaimKind::kIsNash && child.kind == ClaimKind::kDefeats) {
      m.kind = MoveKind::kWhyDefeat;
      m.attacker = child.referents[0];
      m.target = child.referents[1];
    } else if (top.kind == ClaimKind::kDefeats &&
               child.kind == ClaimKind::kPreferenceHolds) {
      m.kind = MoveKind::kWhyPreference;
      m.argument = child.referents[0];
    } else {
      continue;
    }
    moves.push_back(m);
  }
  moves.emplace_back(MoveKind::kConcede);
  moves.emplace_back(MoveKind::kEnd);
  return moves;
}

std::pair<Reply, DialogueState> dialogue_step(const GameFramework& gf,
                                              const SolveReport& report,
                                              const DialogueState& state,
                                              const Move& move) {
  if (state.closed) throw DialogueError("the session is closed");
  DialogueState next = state;
  std::optional<ExplanationNode> answered;
  std::string prose;

  switch (move.kind) {
    case MoveKind::kWhy:
    case MoveKind::kWhyNot: {
      if (!move.profile || !gf.game().is_valid(*move.profile)) {
        throw DialogueError("move needs a valid profile");
      }
      const bool nash = std::find(report.nash.begin(), report.nash.end(),
                                  *move.profile) != report.nash.end();
      if (move.kind == MoveKind::kWhyNot && nash) {
        throw DialogueError(to_string(gf.game(), *move.profile) +
                            " is a Nash equilibrium; ask WHY instead");
      }
      answered = nash ? explain_nash(gf, report, *move.profile)
                      : explain_not_nash(gf, *move.profile);
      break;
    }
    case MoveKind::kWhyDefeat: {
      const ArgumentId attacker = checked_argument(gf, move.attacker, "attacker");
      const ArgumentId target = checked_argument(gf, move.target, "target");
      if (state.focus.empty() || state.focus.back().kind != ClaimKind::kIsNash) {
        throw DialogueError("WHY_DEFEAT needs an equilibrium under discussion");
      }
      for (const auto& child : state.focus.back().children) {
        if (child.referents[0] == attacker && child.referents[1] == target) {
          answered = child;
        }
      }
      if (!answered) {
        throw DialogueError(gf.framework().name(attacker) + " -> " +
                            gf.framework().name(target) +
                            " is not a defeat under discussion");
      }
      break;
    }
    case MoveKind::kWhyPreference: {
      const ArgumentId argument = checked_argument(gf, move.argument, "argument");
      if (state.focus.empty() || state.focus.back().kind != ClaimKind::kDefeats) {
        throw DialogueError("WHY_PREFERENCE needs a defeat under discussion");
      }
      for (const auto& child : state.focus.back().children) {
        if (child.kind == ClaimKind::kPreferenceHolds &&
            child.referents[0] == argument) {
          answered = child;
        }
      }
      if (!answered) {
        throw DialogueError(gf.framework().name(argument) +
                            " is not the preference under discussion");
      }
      break;
    }
    case MoveKind::kConcede: {
      if (state.focus.empty()) throw DialogueError("nothing to concede");
      next.focus.pop_back();
      prose = prose_templates().at("concede");
      break;
    }
    case MoveKind::kEnd: {
      next.focus.clear();
      next.closed = true;
      prose = prose_templates().at("end");
      break;
    }
  }

  if (answered) {
    prose = answered->prose;
    next.focus.push_back(*answered);
  }
  Reply reply = reply_for(gf, report, next, answered ? &*answered : nullptr,
                          std::move(prose));
  next.transcript.push_back({move, reply});
  return {std::move(reply), std::move(next)};
}

}  // namespace eafnash
