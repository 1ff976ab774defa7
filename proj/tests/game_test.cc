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

#include "eafnash/game.h"

#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eafnash {
namespace {

using ::testing::HasSubstr;

StrategyProfile P(const Game& g, std::vector<std::string> names) {
  return g.parse_profile(names);
}

GameDescription TwoByTwo(std::vector<std::pair<double, double>> cells) {
  GameDescription d;
  d.players = {"row", "col"};
  d.strategies = {{"u", "d"}, {"l", "r"}};
  const char* rows[] = {"u", "u", "d", "d"};
  const char* cols[] = {"l", "r", "l", "r"};
  for (int k = 0; k < 4; ++k) {
    d.payoffs.push_back({{rows[k], cols[k]},
                         {Outcome::numeric(cells[k].first),
                          Outcome::numeric(cells[k].second)}});
  }
  return d;
}

void ExpectMessage(const GameDescription& d, const std::string& fragment) {
  try {
    Game::validate(d);
    FAIL() << "expected GameError containing '" << fragment << "'";
  } catch (const GameError& e) {
    EXPECT_THAT(e.what(), HasSubstr(fragment));
  }
}

TEST(GameTest, StagHuntEffects) {
  auto g = testing::load_fixture("stag_hunt");
  const auto& sh = g->effect(P(*g, {"stag", "hare"}));
  EXPECT_EQ(*sh[0].value, 1);
  EXPECT_EQ(*sh[1].value, 3);
  const auto& hh = g->effect(P(*g, {"hare", "hare"}));
  EXPECT_EQ(*hh[0].value, 2);
  EXPECT_EQ(*hh[1].value, 2);
}

TEST(GameTest, MatchingPenniesEffect) {
  auto g = testing::load_fixture("matching_pennies");
  const auto& hh = g->effect(P(*g, {"heads", "heads"}));
  EXPECT_EQ(*hh[0].value, 1);
  EXPECT_EQ(*hh[1].value, -1);
}

TEST(GameTest, StagHuntPreferences) {
  auto g = testing::load_fixture("stag_hunt");
  EXPECT_TRUE(weakly_prefers(*g, 0, P(*g, {"stag", "hare"}), P(*g, {"hare", "hare"})));
  EXPECT_TRUE(weakly_prefers(*g, 1, P(*g, {"hare", "hare"}), P(*g, {"stag", "hare"})));
  EXPECT_TRUE(strictly_prefers(*g, 0, P(*g, {"stag", "hare"}), P(*g, {"hare", "hare"})));
  EXPECT_FALSE(strictly_prefers(*g, 0, P(*g, {"hare", "hare"}), P(*g, {"stag", "hare"})));
  // Reflexive, never strict.
  EXPECT_TRUE(weakly_prefers(*g, 0, P(*g, {"stag", "stag"}), P(*g, {"stag", "stag"})));
  EXPECT_FALSE(strictly_prefers(*g, 0, P(*g, {"stag", "stag"}), P(*g, {"stag", "stag"})));
}

TEST(GameTest, RemoveAndOplus) {
  auto g = testing::load_fixture("stag_hunt");
  const PartialProfile key = remove(P(*g, {"stag", "hare"}), 0);
  EXPECT_EQ(to_string(*g, key), "[_,hare]");
  EXPECT_EQ(key.hole, 0u);
  const auto hare = *g->find_strategy(0, "hare");
  EXPECT_EQ(oplus(*g, key, hare), P(*g, {"hare", "hare"}));
  EXPECT_THROW(oplus(*g, key, 7), GameError);
}

TEST(GameTest, NashBruteForceStagHunt) {
  auto g = testing::load_fixture("stag_hunt");
  const auto nash = nash_equilibria_bruteforce(*g);
  ASSERT_EQ(nash.size(), 2u);
  EXPECT_EQ(nash[0], P(*g, {"stag", "stag"}));
  EXPECT_EQ(nash[1], P(*g, {"hare", "hare"}));
}

TEST(GameTest, NashBruteForceMatchingPenniesIsEmpty) {
  EXPECT_TRUE(nash_equilibria_bruteforce(*testing::load_fixture("matching_pennies")).empty());
  EXPECT_TRUE(nash_equilibria_bruteforce(*testing::load_fixture("matching_pennies_3")).empty());
}

TEST(GameTest, ProfileIndexIsLexicographic) {
  auto g = testing::load_fixture("matching_pennies_3");
  ASSERT_EQ(g->num_profiles(), 9u);
  for (std::size_t k = 0; k < g->num_profiles(); ++k) {
    EXPECT_EQ(g->index_of(g->profile_at(k)), k);
    if (k > 0) EXPECT_LT(g->profile_at(k - 1), g->profile_at(k));
  }
}

TEST(GameTest, ToString) {
  auto g = testing::load_fixture("stag_hunt");
  EXPECT_EQ(to_string(*g, P(*g, {"stag", "hare"})), "[stag,hare]");
  EXPECT_EQ(format_number(4), "4");
  EXPECT_EQ(format_number(-1.5), "-1.5");
}

TEST(GameTest, ParseProfileErrors) {
  auto g = testing::load_fixture("stag_hunt");
  EXPECT_THROW(g->parse_profile({"stag"}), GameError);
  EXPECT_THROW(g->parse_profile({"stag", "deer"}), GameError);
}

TEST(GameValidationTest, MissingOutcome) {
  auto d = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  d.payoffs.pop_back();
  ExpectMessage(d, "missing outcome for profile [d,r]");
}

TEST(GameValidationTest, DuplicateOutcome) {
  auto d = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  d.payoffs.push_back(d.payoffs.front());
  ExpectMessage(d, "duplicate outcome");
}

TEST(GameValidationTest, UnknownStrategyInRow) {
  auto d = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  d.payoffs[1].profile[1] = "x";
  ExpectMessage(d, "payoffs[1]");
}

TEST(GameValidationTest, OutcomeArity) {
  auto d = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  d.payoffs[2].outcome.pop_back();
  ExpectMessage(d, "one entry per player");
}

TEST(GameValidationTest, DuplicateStrategyAndReservedNames) {
  auto d = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  d.strategies[0] = {"u", "u"};
  ExpectMessage(d, "player 0");
  auto e = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  e.strategies[1] = {"l", "a,b"};
  ExpectMessage(e, "reserved");
  auto f = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  f.strategies[1] = {"l", "_"};
  ExpectMessage(f, "reserved");
}

TEST(GameValidationTest, EmptyGame) {
  ExpectMessage(GameDescription{}, "at least one player");
}

TEST(GameValidationTest, NamedOutcomeUnderNumericPreference) {
  auto d = TwoByTwo({{1, 1}, {0, 0}, {0, 0}, {1, 1}});
  d.payoffs[0].outcome[0] = Outcome::named("win");
  ExpectMessage(d, "not numeric");
}

GameDescription LabelGame(std::vector<std::string> relations) {
  GameDescription d;
  d.players = {"solo"};
  d.strategies = {{"a", "b", "c"}};
  d.payoffs = {{{"a"}, {Outcome::named("low")}},
               {{"b"}, {Outcome::named("mid")}},
               {{"c"}, {Outcome::named("high")}}};
  d.preferences = {PreferenceSpec::explicit_relations(std::move(relations))};
  return d;
}

TEST(ExplicitPreferenceTest, ChainIsTotal) {
  const Game g = Game::validate(LabelGame({"low<mid", "mid<high"}));
  EXPECT_LT(g.level(0, g.parse_profile({"a"})), g.level(0, g.parse_profile({"b"})));
  EXPECT_LT(g.level(0, g.parse_profile({"b"})), g.level(0, g.parse_profile({"c"})));
  const auto nash = nash_equilibria_bruteforce(g);
  ASSERT_EQ(nash.size(), 1u);
  EXPECT_EQ(nash[0], g.parse_profile({"c"}));
}

TEST(ExplicitPreferenceTest, TiesCompareEqual) {
  const Game g = Game::validate(LabelGame({"low<mid", "mid=high"}));
  EXPECT_EQ(g.level(0, g.parse_profile({"b"})), g.level(0, g.parse_profile({"c"})));
  EXPECT_EQ(nash_equilibria_bruteforce(g).size(), 2u);
}

TEST(ExplicitPreferenceTest, CycleRejected) {
  try {
    Game::validate(LabelGame({"low<mid", "mid<high", "high<=low"}));
    FAIL();
  } catch (const GameError& e) {
    EXPECT_THAT(e.what(), HasSubstr("preference cycle"));
  }
}

TEST(ExplicitPreferenceTest, IncompleteRejected) {
  try {
    Game::validate(LabelGame({"low<mid", "low<high"}));
    FAIL();
  } catch (const GameError& e) {
    EXPECT_THAT(e.what(), HasSubstr("incomparable"));
  }
}

TEST(ExplicitPreferenceTest, MalformedRelation) {
  EXPECT_THROW(Game::validate(LabelGame({"low mid", "mid<high"})), GameError);
}

// Total preorder properties of the induced relation on every player.
TEST(GamePropertyTest, WeakPreferenceIsTotalPreorder) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = 2 + trial % 2;
    spec.strategies = 3;
    spec.force_ties = trial % 3 == 0;
    auto g = testing::random_game(rng, spec);
    const auto profiles = g->all_profiles();
    for (PlayerIndex i = 0; i < g->num_players(); ++i) {
      for (const auto& a : profiles) {
        for (const auto& b : profiles) {
          EXPECT_TRUE(weakly_prefers(*g, i, a, b) || weakly_prefers(*g, i, b, a));
          EXPECT_EQ(strictly_prefers(*g, i, a, b),
                    weakly_prefers(*g, i, a, b) && !weakly_prefers(*g, i, b, a));
          for (const auto& c : profiles) {
            if (weakly_prefers(*g, i, a, b) && weakly_prefers(*g, i, b, c)) {
              EXPECT_TRUE(weakly_prefers(*g, i, a, c));
            }
          }
        }
      }
    }
  }
}

TEST(GamePropertyTest, RemoveOplusIdentities) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = 3;
    spec.strategies = 3;
    spec.mixed_menus = true;
    auto g = testing::random_game(rng, spec);
    for (const auto& s : g->all_profiles()) {
      for (PlayerIndex i = 0; i < g->num_players(); ++i) {
        const PartialProfile key = remove(s, i);
        EXPECT_EQ(oplus(*g, key, s[i]), s);
        for (StrategyIndex t = 0; t < g->num_strategies(i); ++t) {
          EXPECT_EQ(remove(oplus(*g, key, t), i), key);
        }
      }
    }
  }
}

TEST(GamePropertyTest, BruteForceNashMatchesDefinition) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = 2 + trial % 2;
    spec.strategies = 2 + trial % 2;
    spec.mixed_menus = trial % 5 == 0;
    spec.force_ties = trial % 4 == 0;
    const GameDescription d = testing::random_game_description(rng, spec);
    const Game g = Game::validate(d);
    EXPECT_EQ(testing::profile_names(g, nash_equilibria_bruteforce(g)),
              testing::oracle_nash(d));
  }
}

// A positive affine rescaling of any one player's payoffs preserves the
// preorder and hence the equilibria.
TEST(GamePropertyTest, AffineInvariance) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = 2 + trial % 2;
    spec.strategies = 3;
    spec.force_ties = trial % 2 == 0;
    GameDescription d = testing::random_game_description(rng, spec);
    const Game base = Game::validate(d);
    const PlayerIndex i = trial % spec.players;
    for (auto& row : d.payoffs) {
      row.outcome[i] = Outcome::numeric(3.5 * *row.outcome[i].value - 20);
    }
    const Game scaled = Game::validate(d);
    EXPECT_EQ(nash_equilibria_bruteforce(base), nash_equilibria_bruteforce(scaled));
    for (const auto& s : base.all_profiles()) {
      for (const auto& t : base.all_profiles()) {
        EXPECT_EQ(weakly_prefers(base, i, s, t), weakly_prefers(scaled, i, s, t));
      }
    }
  }
}

}  // namespace
}  // namespace eafnash
