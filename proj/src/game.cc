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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace eafnash {
namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k > 0) out += ",";
    out += names[k];
  }
  return out + "]";
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

// Strategy names appear inside canonical argument ids, so the id delimiters
// are reserved.
void check_strategy_name(const std::string& name, PlayerIndex i) {
  if (name.empty() || trim(name) != name) {
    throw GameError("player " + std::to_string(i) +
                    ": strategy names must be non-empty without surrounding spaces: '" +
                    name + "'");
  }
  if (name == "_" || name.find_first_of(",[]/<>=") != std::string::npos) {
    throw GameError("player " + std::to_string(i) + ": strategy name '" +
                    name + "' uses a reserved character (,[]/<>= or '_')");
  }
}

struct Relation {
  std::string lhs;
  std::string rhs;
  enum class Op { kLess, kLessEqual, kEqual } op;
};

Relation parse_relation(const std::string& text, PlayerIndex i) {
  struct Token {
    const char* symbol;
    Relation::Op op;
  };
  // Longest operators first so "<=" is not read as "<".
  static constexpr Token kTokens[] = {{"<=", Relation::Op::kLessEqual},
                                      {"<", Relation::Op::kLess},
                                      {"=", Relation::Op::kEqual}};
  for (const Token& token : kTokens) {
    const auto pos = text.find(token.symbol);
    if (pos == std::string::npos) continue;
    const std::size_t len = std::char_traits<char>::length(token.symbol);
    Relation r{trim(text.substr(0, pos)), trim(text.substr(pos + len)),
               token.op};
    if (r.lhs.empty() || r.rhs.empty()) break;
    return r;
  }
  throw GameError("player " + std::to_string(i) + ": malformed preference '" +
                  text + "' (expected a<b, a<=b or a=b)");
}

// Levels for an explicit relation: closes it, then rejects cycles through a
// strict pair and incomparable labels.
std::map<std::string, int> explicit_levels(
    const std::vector<std::string>& relations,
    const std::set<std::string>& used_labels, PlayerIndex i) {
  std::vector<Relation> parsed;
  std::set<std::string> universe = used_labels;
  for (const auto& text : relations) {
    parsed.push_back(parse_relation(text, i));
    universe.insert(parsed.back().lhs);
    universe.insert(parsed.back().rhs);
  }
  const std::vector<std::string> labels(universe.begin(), universe.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < labels.size(); ++k) index[labels[k]] = k;

  const std::size_t n = labels.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t k = 0; k < n; ++k) leq[k][k] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> strict;
  for (const auto& r : parsed) {
    const std::size_t a = index[r.lhs], b = index[r.rhs];
    leq[a][b] = 1;
    if (r.op == Relation::Op::kEqual) leq[b][a] = 1;
    if (r.op == Relation::Op::kLess) strict.emplace_back(a, b);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (leq[a][k])
        for (std::size_t b = 0; b < n; ++b)
          if (leq[k][b]) leq[a][b] = 1;

  for (const auto& [a, b] : strict) {
    if (leq[b][a]) {
      throw GameError("player " + std::to_string(i) +
                      ": preference cycle through " + labels[a] + "<" +
                      labels[b]);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!leq[a][b] && !leq[b][a]) {
        throw GameError("player " + std::to_string(i) +
                        ": incomplete preference, '" + labels[a] + "' and '" +
                        labels[b] + "' are incomparable");
      }

  std::map<std::string, int> levels;
  for (std::size_t a = 0; a < n; ++a) {
    int below = 0;
    for (std::size_t b = 0; b < n; ++b) below += leq[b][a] ? 1 : 0;
    levels[labels[a]] = below;
  }
  return levels;
}

}  // namespace

std::string format_number(double v) {
  if (std::isfinite(v) && std::trunc(v) == v && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

Outcome Outcome::numeric(double v) { return {format_number(v), v}; }

Game Game::validate(const GameDescription& d) {
  Game g;
  if (d.players.empty()) throw GameError("a game needs at least one player");
  if (d.strategies.size() != d.players.size()) {
    throw GameError("expected a strategy menu for each of the " +
                    std::to_string(d.players.size()) + " players, got " +
                    std::to_string(d.strategies.size()));
  }
  const std::size_t n = d.players.size();
  g.players_ = d.players;
  g.strategies_ = d.strategies;
  g.num_profiles_ = 1;
  for (PlayerIndex i = 0; i < n; ++i) {
    const auto& menu = d.strategies[i];
    if (menu.empty()) {
      throw GameError("player " + std::to_string(i) + " has no strategies");
    }
    std::set<std::string> seen;
    for (const auto& name : menu) {
      check_strategy_name(name, i);
      if (!seen.insert(name).second) {
        throw GameError("player " + std::to_string(i) +
                        ": duplicate strategy name '" + name + "'");
      }
    }
    g.num_profiles_ *= menu.size();
  }

  std::vector<std::optional<std::vector<Outcome>>> table(g.num_profiles_);
  for (std::size_t row = 0; row < d.payoffs.size(); ++row) {
    const auto& payoff = d.payoffs[row];
    const std::string where = "payoffs[" + std::to_string(row) + "]";
    if (payoff.profile.size() != n) {
      throw GameError(where + ": profile " + join_names(payoff.profile) +
                      " must name one strategy per player");
    }
    if (payoff.outcome.size() != n) {
      throw GameError(where + ": outcome must have one entry per player");
    }
    StrategyProfile s;
    try {
      s = g.parse_profile(payoff.profile);
    } catch (const GameError& e) {
      throw GameError(where + ": " + e.what());
    }
    auto& slot = table[g.index_of(s)];
    if (slot) {
      throw GameError(where + ": duplicate outcome for profile " +
                      join_names(payoff.profile));
    }
    slot = payoff.outcome;
  }
  g.effects_.reserve(g.num_profiles_);
  for (std::size_t k = 0; k < g.num_profiles_; ++k) {
    if (!table[k]) {
      throw GameError("missing outcome for profile " +
                      to_string(g, g.profile_at(k)));
    }
    g.effects_.push_back(std::move(*table[k]));
  }

  g.preferences_ = d.preferences;
  if (g.preferences_.empty()) {
    g.preferences_.assign(n, PreferenceSpec::numeric());
  }
  if (g.preferences_.size() != n) {
    throw GameError("expected preferences for each of the " +
                    std::to_string(n) + " players");
  }

  g.levels_.assign(g.num_profiles_, std::vector<int>(n, 0));
  for (PlayerIndex i = 0; i < n; ++i) {
    const PreferenceSpec& pref = g.preferences_[i];
    if (pref.kind == PreferenceSpec::Kind::kNumeric) {
      std::set<double> values;
      for (const auto& effect : g.effects_) {
        if (!effect[i].value) {
          throw GameError("player " + std::to_string(i) + ": outcome '" +
                          effect[i].label +
                          "' is not numeric but preferences are numeric");
        }
        values.insert(*effect[i].value);
      }
      const std::vector<double> sorted(values.begin(), values.end());
      for (std::size_t k = 0; k < g.num_profiles_; ++k) {
        const double v = *g.effects_[k][i].value;
        g.levels_[k][i] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
      }
    } else {
      std::set<std::string> used;
      for (const auto& effect : g.effects_) used.insert(effect[i].label);
      const auto levels = explicit_levels(pref.relations, used, i);
      for (std::size_t k = 0; k < g.num_profiles_; ++k) {
        g.levels_[k][i] = levels.at(g.effects_[k][i].label);
      }
    }
  }
  g.description_ = d;
  g.description_.preferences = g.preferences_;
  return g;
}

std::size_t Game::max_strategies() const {
  std::size_t m = 0;
  for (const auto& menu : strategies_) m = std::max(m, menu.size());
  return m;
}

std::optional<StrategyIndex> Game::find_strategy(PlayerIndex i,
                                                 const std::string& name) const {
  const auto& menu = strategies_[i];
  const auto it = std::find(menu.begin(), menu.end(), name);
  if (it == menu.end()) return std::nullopt;
  return static_cast<StrategyIndex>(it - menu.begin());
}

StrategyProfile Game::profile_at(std::size_t index) const {
  StrategyProfile s;
  s.strategies.resize(num_players());
  for (std::size_t i = num_players(); i-- > 0;) {
    s.strategies[i] = index % strategies_[i].size();
    index /= strategies_[i].size();
  }
  return s;
}

std::size_t Game::index_of(const StrategyProfile& profile) const {
  std::size_t index = 0;
  for (PlayerIndex i = 0; i < num_players(); ++i) {
    index = index * strategies_[i].size() + profile.strategies[i];
  }
  return index;
}

std::vector<StrategyProfile> Game::all_profiles() const {
  std::vector<StrategyProfile> out;
  out.reserve(num_profiles_);
  for (std::size_t k = 0; k < num_profiles_; ++k) out.push_back(profile_at(k));
  return out;
}

bool Game::is_valid(const StrategyProfile& profile) const {
  if (profile.size() != num_players()) return false;
  for (PlayerIndex i = 0; i < num_players(); ++i) {
    if (profile[i] >= strategies_[i].size()) return false;
  }
  return true;
}

StrategyProfile Game::parse_profile(const std::vector<std::string>& names) const {
  if (names.size() != num_players()) {
    throw GameError("profile " + join_names(names) + " must name " +
                    std::to_string(num_players()) + " strategies");
  }
  StrategyProfile s;
  for (PlayerIndex i = 0; i < names.size(); ++i) {
    const auto found = find_strategy(i, names[i]);
    if (!found) {
      throw GameError("unknown strategy '" + names[i] + "' for player " +
                      std::to_string(i) + " in profile " + join_names(names));
    }
    s.strategies.push_back(*found);
  }
  return s;
}

bool weakly_prefers(const Game& game, PlayerIndex i, const StrategyProfile& s,
                    const StrategyProfile& than) {
  return game.level(i, s) <= game.level(i, than);
}

bool strictly_prefers(const Game& game, PlayerIndex i, const StrategyProfile& s,
                      const StrategyProfile& than) {
  return weakly_prefers(game, i, s, than) && !weakly_prefers(game, i, than, s);
}

PartialProfile remove(const StrategyProfile& profile, PlayerIndex i) {
  PartialProfile p{profile.strategies, i};
  p.strategies[i] = kHole;
  return p;
}

StrategyProfile oplus(const PartialProfile& partial, StrategyIndex s) {
  StrategyProfile out{partial.strategies};
  out.strategies[partial.hole] = s;
  return out;
}

StrategyProfile oplus(const Game& game, const PartialProfile& partial,
                      StrategyIndex s) {
  if (partial.hole >= game.num_players() ||
      s >= game.num_strategies(partial.hole)) {
    throw GameError("strategy " + std::to_string(s) +
                    " is not in the menu of player " +
                    std::to_string(partial.hole));
  }
  return oplus(partial, s);
}

std::vector<StrategyProfile> nash_equilibria_bruteforce(const Game& game) {
  const std::size_t n = game.num_players();
  std::vector<std::size_t> marks(game.num_profiles(), 0);
  for (PlayerIndex i = 0; i < n; ++i) {
    // Each profile with s_i = 0 names one column (partial profile) for i.
    for (std::size_t k = 0; k < game.num_profiles(); ++k) {
      const StrategyProfile base = game.profile_at(k);
      if (base[i] != 0) continue;
      const PartialProfile column = remove(base, i);
      int best = 0;
      for (StrategyIndex s = 0; s < game.num_strategies(i); ++s) {
        const int level = game.level(i, oplus(column, s));
        if (s == 0 || level > best) best = level;
      }
      for (StrategyIndex s = 0; s < game.num_strategies(i); ++s) {
        const StrategyProfile cell = oplus(column, s);
        if (game.level(i, cell) == best) ++marks[game.index_of(cell)];
      }
    }
  }
  std::vector<StrategyProfile> out;
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    if (marks[k] == n) out.push_back(game.profile_at(k));
  }
  return out;
}

std::string to_string(const Game& game, const StrategyProfile& profile) {
  std::vector<std::string> names;
  for (PlayerIndex i = 0; i < profile.size(); ++i) {
    names.push_back(game.strategy_name(i, profile[i]));
  }
  return join_names(names);
}

std::string to_string(const Game& game, const PartialProfile& partial) {
  std::vector<std::string> names;
  for (PlayerIndex i = 0; i < partial.strategies.size(); ++i) {
    names.push_back(i == partial.hole ? "_"
                                      : game.strategy_name(i, partial.strategies[i]));
  }
  return join_names(names);
}

}  // namespace eafnash
