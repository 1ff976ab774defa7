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

// Justification trees for "why is this profile an equilibrium" and "why not",
// and a small question/answer dialogue that walks them.
//
// Tree grammar (depth at most four):
//   IS_NASH(S)
//     DEFEATS(S, T)                     one per other profile T
//       PREFERENCE_HOLDS((S_-i, s_i))   only when T differs from S for player i
//         VALUATION((S_-i, s_i > w))    one per strictly worse w
//   NOT_NASH(S)
//     DEVIATION_WITNESS(i, s)           one per strictly improving deviation

#ifndef EAFNASH_EXPLAIN_H_
#define EAFNASH_EXPLAIN_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eafnash/game_framework.h"
#include "eafnash/nash_bridge.h"

namespace eafnash {

enum class ClaimKind {
  kIsNash,
  kDefeats,
  kPreferenceHolds,
  kValuation,
  kNotNash,
  kDeviationWitness,
};

std::string_view to_string(ClaimKind kind);

struct ExplanationNode {
  ClaimKind kind = ClaimKind::kIsNash;
  std::string template_id;
  // Framework arguments the claim is about; the first is the subject.
  std::vector<ArgumentId> referents;
  // DEFEATS: the prevailing attack. PREFERENCE_HOLDS: the attack it blocks.
  std::optional<AttackId> attack;
  std::optional<StrategyProfile> profile;
  std::optional<PlayerIndex> player;
  std::vector<StrategyIndex> strategies;
  std::string prose;
  std::vector<ExplanationNode> children;
};

class ExplanationRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prose templates keyed by template id, loaded from the bundled data file.
const std::map<std::string, std::string>& prose_templates();

// Index into report.preferred of the lexicographically first preferred
// extension containing the game argument of `profile`.
std::optional<std::size_t> anchor_extension(const GameFramework& gf,
                                            const SolveReport& report,
                                            const StrategyProfile& profile);

// Throws ExplanationRefused if `profile` is not in report.nash.
ExplanationNode explain_nash(const GameFramework& gf, const SolveReport& report,
                             const StrategyProfile& profile);

// Throws ExplanationRefused if `profile` is a Nash equilibrium.
ExplanationNode explain_not_nash(const GameFramework& gf,
                                 const StrategyProfile& profile);

std::size_t tree_depth(const ExplanationNode& node);

enum class MoveKind { kWhy, kWhyDefeat, kWhyPreference, kWhyNot, kConcede, kEnd };

std::string_view to_string(MoveKind kind);
MoveKind parse_move_kind(std::string_view text);

struct Move {
  MoveKind kind = MoveKind::kWhy;
  std::optional<StrategyProfile> profile;   // WHY, WHY_NOT
  std::optional<ArgumentId> attacker;       // WHY_DEFEAT
  std::optional<ArgumentId> target;         // WHY_DEFEAT
  std::optional<ArgumentId> argument;       // WHY_PREFERENCE

  Move() = default;
  explicit Move(MoveKind k) : kind(k) {}

  bool operator==(const Move&) const = default;
};

struct Reply {
  std::string prose;
  std::vector<ArgumentId> referents;
  std::optional<ExplanationNode> node;
  std::vector<Move> legal_moves;
};

struct DialogueTurn {
  Move move;
  Reply reply;
};

struct DialogueState {
  std::string session_id;
  // Open questions; the top is the node the last reply answered.
  std::vector<ExplanationNode> focus;
  std::vector<DialogueTurn> transcript;
  bool closed = false;
};

class DialogueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Moves that are well-typed for the current focus.
std::vector<Move> legal_moves(const GameFramework& gf, const SolveReport& report,
                              const DialogueState& state);

// Pure: returns the reply and the successor state, leaving `state` untouched.
// Throws DialogueError on ill-typed moves or unknown referents.
std::pair<Reply, DialogueState> dialogue_step(const GameFramework& gf,
                                              const SolveReport& report,
                                              const DialogueState& state,
                                              const Move& move);

}  // namespace eafnash

#endif  // EAFNASH_EXPLAIN_H_
