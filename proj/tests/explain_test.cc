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

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eafnash {
namespace {

using ::testing::HasSubstr;
using ::testing::UnorderedElementsAre;

class StagHuntExplainTest : public ::testing::Test {
 protected:
  StagHuntExplainTest()
      : gf_(testing::fixture_framework("stag_hunt")), report_(solve(gf_)) {}

  ArgumentId a(const std::string& label) const {
    return testing::labelled(gf_.framework(), testing::stag_hunt_labels(), label);
  }
  StrategyProfile P(std::vector<std::string> names) const {
    return gf_.game().parse_profile(names);
  }

  GameFramework gf_;
  SolveReport report_;
};

TEST_F(StagHuntExplainTest, IsNashTreeShape) {
  const ExplanationNode root = explain_nash(gf_, report_, P({"stag", "stag"}));
  EXPECT_EQ(root.kind, ClaimKind::kIsNash);
  ASSERT_EQ(root.referents.front(), a("a2"));
  ASSERT_EQ(root.children.size(), 3u);  // |A_g| - 1
  std::vector<ArgumentId> targets;
  for (const auto& child : root.children) {
    EXPECT_EQ(child.kind, ClaimKind::kDefeats);
    EXPECT_EQ(child.referents[0], a("a2"));
    targets.push_back(child.referents[1]);
  }
  EXPECT_THAT(targets, UnorderedElementsAre(a("a1"), a("a3"), a("a4")));
  EXPECT_THAT(root.prose, HasSubstr("defeats all the other game-based arguments"));
  EXPECT_LE(tree_depth(root), 4u);
}

TEST_F(StagHuntExplainTest, SiblingBranchIsGroundedInValuation) {
  const ExplanationNode root = explain_nash(gf_, report_, P({"stag", "stag"}));
  const ExplanationNode* branch = nullptr;
  for (const auto& child : root.children) {
    if (child.referents[1] == a("a1")) branch = &child;
  }
  ASSERT_NE(branch, nullptr);
  EXPECT_EQ(branch->prose,
            "Because playing stag gives a better outcome to player 1 if player 0 "
            "plays stag.");
  ASSERT_EQ(branch->children.size(), 1u);
  const ExplanationNode& pref = branch->children[0];
  EXPECT_EQ(pref.kind, ClaimKind::kPreferenceHolds);
  EXPECT_EQ(pref.referents[0], a("a5"));
  const Attack& blocked = gf_.framework().attack(pref.attack.value());
  EXPECT_EQ(blocked.from, a("a1"));
  EXPECT_EQ(blocked.to, a("a2"));
  EXPECT_THAT(pref.prose, HasSubstr("Because of the valuation defined for player 1"));
  ASSERT_EQ(pref.children.size(), 1u);
  EXPECT_EQ(pref.children[0].kind, ClaimKind::kValuation);
  EXPECT_EQ(pref.children[0].referents[0], a("a13"));
}

// Every DEFEATS node names a real defeat with respect to the anchor extension.
TEST_F(StagHuntExplainTest, DefeatsReverify) {
  for (const auto& nash : report_.nash) {
    const auto anchor = anchor_extension(gf_, report_, nash);
    ASSERT_TRUE(anchor.has_value());
    const ArgumentSet& e = report_.preferred[*anchor].members;
    const ExplanationNode root = explain_nash(gf_, report_, nash);
    for (const auto& child : root.children) {
      EXPECT_TRUE(defeats(gf_.framework(), child.referents[0], child.referents[1], e));
      ASSERT_TRUE(child.attack.has_value());
      EXPECT_TRUE(is_defeat(gf_.framework(), *child.attack, e));
    }
  }
}

TEST_F(StagHuntExplainTest, Refusals) {
  EXPECT_THROW(explain_nash(gf_, report_, P({"hare", "stag"})), ExplanationRefused);
  EXPECT_THROW(explain_not_nash(gf_, P({"stag", "stag"})), ExplanationRefused);
}

TEST_F(StagHuntExplainTest, NotNashWitness) {
  const ExplanationNode root = explain_not_nash(gf_, P({"stag", "hare"}));
  EXPECT_EQ(root.kind, ClaimKind::kNotNash);
  bool found = false;
  for (const auto& w : root.children) {
    EXPECT_EQ(w.kind, ClaimKind::kDeviationWitness);
    if (w.player == 0u && w.referents[0] == a("a16")) {
      found = true;
      EXPECT_EQ(gf_.game().strategy_name(0, w.strategies[0]), "hare");
    }
  }
  EXPECT_TRUE(found);
}

TEST(MatchingPenniesExplainTest, NotNashWitness) {
  const GameFramework gf = testing::fixture_framework("matching_pennies");
  const ExplanationNode root =
      explain_not_nash(gf, gf.game().parse_profile({"heads", "heads"}));
  ASSERT_EQ(root.children.size(), 1u);
  const auto& w = root.children[0];
  EXPECT_EQ(w.player, 1u);
  EXPECT_EQ(gf.game().strategy_name(1, w.strategies[0]), "tails");
  EXPECT_EQ(w.referents[0],
            testing::labelled(gf.framework(), testing::matching_pennies_labels(), "b13"));
}

TEST(MatchingPenniesExplainTest, OnlyWhyNotMovesOffered) {
  const GameFramework gf = testing::fixture_framework("matching_pennies");
  const SolveReport report = solve(gf);
  const auto moves = legal_moves(gf, report, DialogueState{});
  for (const auto& m : moves) {
    EXPECT_TRUE(m.kind == MoveKind::kWhyNot || m.kind == MoveKind::kEnd);
  }
  EXPECT_EQ(moves.size(), 5u);
}

TEST_F(StagHuntExplainTest, DialogueWalk) {
  const DialogueState start;
  Move why{MoveKind::kWhy};
  why.profile = P({"stag", "stag"});
  auto [r1, s1] = dialogue_step(gf_, report_, start, why);
  EXPECT_THAT(r1.referents, ::testing::IsSupersetOf({a("a1"), a("a3"), a("a4")}));
  EXPECT_TRUE(start.focus.empty());  // pure
  EXPECT_TRUE(start.transcript.empty());
  ASSERT_EQ(s1.focus.size(), 1u);

  Move why_defeat{MoveKind::kWhyDefeat};
  why_defeat.attacker = a("a2");
  why_defeat.target = a("a1");
  EXPECT_NE(std::find(r1.legal_moves.begin(), r1.legal_moves.end(), why_defeat),
            r1.legal_moves.end());
  auto [r2, s2] = dialogue_step(gf_, report_, s1, why_defeat);
  EXPECT_THAT(r2.prose, HasSubstr("playing stag gives a better outcome to player 1 if "
                                  "player 0 plays stag"));
  EXPECT_THAT(r2.referents, ::testing::Contains(a("a5")));
  EXPECT_EQ(s1.focus.size(), 1u);
  EXPECT_EQ(s2.focus.size(), 2u);

  Move why_pref{MoveKind::kWhyPreference};
  why_pref.argument = a("a5");
  auto [r3, s3] = dialogue_step(gf_, report_, s2, why_pref);
  EXPECT_THAT(r3.referents, ::testing::Contains(a("a13")));
  EXPECT_EQ(s3.focus.size(), 3u);

  auto [r4, s4] = dialogue_step(gf_, report_, s3, Move{MoveKind::kConcede});
  EXPECT_EQ(s4.focus.size(), 2u);
  auto [r5, s5] = dialogue_step(gf_, report_, s4, Move{MoveKind::kEnd});
  EXPECT_TRUE(s5.closed);
  EXPECT_TRUE(r5.legal_moves.empty());
  EXPECT_EQ(s5.transcript.size(), 5u);
  EXPECT_THROW(dialogue_step(gf_, report_, s5, why), DialogueError);
}

TEST_F(StagHuntExplainTest, DialogueErrors) {
  const DialogueState start;
  EXPECT_THROW(dialogue_step(gf_, report_, start, Move{MoveKind::kConcede}),
               DialogueError);
  Move why_defeat{MoveKind::kWhyDefeat};
  why_defeat.attacker = a("a2");
  why_defeat.target = a("a1");
  EXPECT_THROW(dialogue_step(gf_, report_, start, why_defeat), DialogueError);
  Move bogus{MoveKind::kWhyDefeat};
  bogus.attacker = 999;
  bogus.target = a("a1");
  EXPECT_THROW(dialogue_step(gf_, report_, start, bogus), DialogueError);
  Move why_not{MoveKind::kWhyNot};
  why_not.profile = P({"stag", "stag"});
  EXPECT_THROW(dialogue_step(gf_, report_, start, why_not), DialogueError);
  // WHY on a non-equilibrium routes to the why-not explanation.
  Move why{MoveKind::kWhy};
  why.profile = P({"stag", "hare"});
  auto [reply, next] = dialogue_step(gf_, report_, start, why);
  ASSERT_TRUE(reply.node.has_value());
  EXPECT_EQ(reply.node->kind, ClaimKind::kNotNash);
  EXPECT_THROW(parse_move_kind("HOW"), DialogueError);
}

// Following every offered question from every opening reaches a leaf within
// the depth bound.
TEST(DialoguePropertyTest, ExhaustiveWalkTerminates) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 25; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = 2 + trial % 2;
    spec.force_ties = trial % 2 == 0;
    const GameFramework gf =
        assemble_framework(testing::random_game(rng, spec));
    const SolveReport report = solve(gf);
    std::size_t visited = 0;
    const std::function<void(const DialogueState&, std::size_t)> walk =
        [&](const DialogueState& state, std::size_t depth) {
          ASSERT_LE(depth, 4u);
          for (const Move& m : legal_moves(gf, report, state)) {
            if (m.kind == MoveKind::kConcede || m.kind == MoveKind::kEnd) continue;
            auto [reply, next] = dialogue_step(gf, report, state, m);
            ++visited;
            for (ArgumentId r : reply.referents) ASSERT_LT(r, gf.framework().size());
            walk(next, depth + 1);
          }
        };
    walk(DialogueState{}, 0);
    EXPECT_GE(visited, gf.game().num_profiles());
  }
}

}  // namespace
}  // namespace eafnash
