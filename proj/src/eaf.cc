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

#include "eafnash/eaf.h"

#include <algorithm>
#include <functional>

namespace eafnash {
namespace {

std::uint64_t attack_key(ArgumentId from, ArgumentId to) {
  return (static_cast<std::uint64_t>(from) << 32) | static_cast<std::uint64_t>(to);
}

void check_id(const Framework& f, ArgumentId a) {
  if (a >= f.size()) {
    throw FrameworkError("unknown argument id " + std::to_string(a));
  }
}

void check_set(const Framework& f, const ArgumentSet& set) {
  if (set.size() != f.size()) {
    throw FrameworkError("argument set has " + std::to_string(set.size()) +
                         " slots, framework has " + std::to_string(f.size()));
  }
}

// Targets v for which some surviving E-sourced defeat u ->_E v exists.
ArgumentSet reinstated_targets(const Framework& f, const ArgumentSet& e) {
  ArgumentSet covered(f.size());
  for (AttackId c : greatest_reinstatement_set(f, e)) covered.set(f.attack(c).to);
  return covered;
}

bool acceptable_given(const Framework& f, ArgumentId x, const ArgumentSet& e,
                      const ArgumentSet& covered) {
  for (AttackId c : f.attacks_on(x)) {
    if (is_defeat(f, c, e) && !covered.test(f.attack(c).from)) return false;
  }
  return true;
}

}  // namespace

ArgumentId Framework::Builder::add_argument(std::string name) {
  const ArgumentId id = names_.size();
  if (!by_name_.emplace(name, id).second) {
    throw FrameworkError("duplicate argument '" + name + "'");
  }
  names_.push_back(std::move(name));
  return id;
}

AttackId Framework::Builder::add_attack(ArgumentId from, ArgumentId to) {
  if (from >= names_.size() || to >= names_.size()) {
    throw FrameworkError("attack endpoint is not an argument");
  }
  const auto [it, inserted] =
      attack_index_.emplace(attack_key(from, to), attacks_.size());
  if (inserted) attacks_.push_back({from, to});
  return it->second;
}

void Framework::Builder::add_meta_attack(ArgumentId from, AttackId attack) {
  if (from >= names_.size()) {
    throw FrameworkError("meta-attack source is not an argument");
  }
  if (attack >= attacks_.size()) {
    throw FrameworkError("meta-attack target is not an attack");
  }
  for (const MetaAttack& m : meta_attacks_) {
    if (m.from == from && m.attack == attack) return;
  }
  meta_attacks_.push_back({from, attack});
}

ArgumentId Framework::Builder::lookup(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) {
    throw FrameworkError("unknown argument '" + std::string(name) + "'");
  }
  return it->second;
}

AttackId Framework::Builder::add_attack(std::string_view from,
                                        std::string_view to) {
  return add_attack(lookup(from), lookup(to));
}

void Framework::Builder::add_meta_attack(std::string_view from,
                                         std::string_view attack_from,
                                         std::string_view attack_to) {
  const auto it = attack_index_.find(attack_key(lookup(attack_from), lookup(attack_to)));
  if (it == attack_index_.end()) {
    throw FrameworkError("meta-attack target (" + std::string(attack_from) +
                         "," + std::string(attack_to) + ") is not an attack");
  }
  add_meta_attack(lookup(from), it->second);
}

Framework Framework::Builder::build() && {
  Framework f;
  f.names_ = std::move(names_);
  f.by_name_ = std::move(by_name_);
  f.attacks_ = std::move(attacks_);
  f.attack_index_ = std::move(attack_index_);
  f.meta_attacks_ = std::move(meta_attacks_);
  f.incoming_.resize(f.names_.size());
  f.outgoing_.resize(f.names_.size());
  f.meta_attackers_.resize(f.attacks_.size());
  for (AttackId c = 0; c < f.attacks_.size(); ++c) {
    f.incoming_[f.attacks_[c].to].push_back(c);
    f.outgoing_[f.attacks_[c].from].push_back(c);
  }
  for (const MetaAttack& m : f.meta_attacks_) {
    f.meta_attackers_[m.attack].push_back(m.from);
  }
  return f;
}

std::optional<ArgumentId> Framework::find(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

ArgumentId Framework::at(std::string_view name) const {
  const auto found = find(name);
  if (!found) throw FrameworkError("unknown argument '" + std::string(name) + "'");
  return *found;
}

std::optional<AttackId> Framework::find_attack(ArgumentId from,
                                               ArgumentId to) const {
  const auto it = attack_index_.find(attack_key(from, to));
  if (it == attack_index_.end()) return std::nullopt;
  return it->second;
}

ArgumentSet Framework::make_set(
    std::initializer_list<std::string_view> names) const {
  ArgumentSet set = empty_set();
  for (std::string_view name : names) set.set(at(name));
  return set;
}

std::vector<std::string> Framework::sorted_names(const ArgumentSet& set) const {
  std::vector<std::string> out;
  for (auto a = set.find_first(); a != ArgumentSet::npos; a = set.find_next(a)) {
    out.push_back(names_[a]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view to_string(Semantics semantics) {
  switch (semantics) {
    case Semantics::kAdmissible:
      return "admissible";
    case Semantics::kPreferred:
      return "preferred";
    case Semantics::kStable:
      return "stable";
  }
  return "unknown";
}

Semantics parse_semantics(std::string_view text) {
  if (text == "admissible") return Semantics::kAdmissible;
  if (text == "preferred") return Semantics::kPreferred;
  if (text == "stable") return Semantics::kStable;
  throw std::invalid_argument("unknown semantics '" + std::string(text) +
                              "' (allowed: admissible, preferred, stable)");
}

bool is_defeat(const Framework& f, AttackId c, const ArgumentSet& context) {
  for (ArgumentId z : f.meta_attackers(c)) {
    if (context.test(z)) return false;
  }
  return true;
}

bool defeats(const Framework& f, ArgumentId y, ArgumentId x,
             const ArgumentSet& context) {
  check_id(f, y);
  check_id(f, x);
  check_set(f, context);
  const auto c = f.find_attack(y, x);
  return c && is_defeat(f, *c, context);
}

bool is_conflict_free(const Framework& f, const ArgumentSet& e) {
  check_set(f, e);
  for (auto x = e.find_first(); x != ArgumentSet::npos; x = e.find_next(x)) {
    for (AttackId c : f.attacks_on(x)) {
      const ArgumentId y = f.attack(c).from;
      if (!e.test(y)) continue;
      if (f.find_attack(x, y)) return false;
      if (is_defeat(f, c, e)) return false;
    }
  }
  return true;
}

std::vector<AttackId> greatest_reinstatement_set(const Framework& f,
                                                 const ArgumentSet& e) {
  check_set(f, e);
  std::vector<AttackId> alive;
  std::vector<std::size_t> hits(f.size(), 0);
  for (auto u = e.find_first(); u != ArgumentSet::npos; u = e.find_next(u)) {
    for (AttackId c : f.attacks_from(u)) {
      if (is_defeat(f, c, e)) {
        alive.push_back(c);
        ++hits[f.attack(c).to];
      }
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<AttackId> kept;
    kept.reserve(alive.size());
    for (AttackId c : alive) {
      const auto& attackers = f.meta_attackers(c);
      const bool open = std::any_of(attackers.begin(), attackers.end(),
                                    [&](ArgumentId z) { return hits[z] == 0; });
      if (open) {
        --hits[f.attack(c).to];
        changed = true;
      } else {
        kept.push_back(c);
      }
    }
    alive = std::move(kept);
  }
  std::sort(alive.begin(), alive.end());
  return alive;
}

bool is_acceptable(const Framework& f, ArgumentId x, const ArgumentSet& e) {
  check_id(f, x);
  check_set(f, e);
  return acceptable_given(f, x, e, reinstated_targets(f, e));
}

bool is_admissible(const Framework& f, const ArgumentSet& e) {
  if (!is_conflict_free(f, e)) return false;
  const ArgumentSet covered = reinstated_targets(f, e);
  for (auto x = e.find_first(); x != ArgumentSet::npos; x = e.find_next(x)) {
    if (!acceptable_given(f, x, e, covered)) return false;
  }
  return true;
}

bool is_stable(const Framework& f, const ArgumentSet& e) {
  if (!is_conflict_free(f, e)) return false;
  for (ArgumentId y = 0; y < f.size(); ++y) {
    if (e.test(y)) continue;
    bool hit = false;
    for (AttackId c : f.attacks_on(y)) {
      if (e.test(f.attack(c).from) && is_defeat(f, c, e)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

void sort_extensions(const Framework& f, std::vector<Extension>& extensions) {
  std::vector<std::pair<std::vector<std::string>, Extension>> keyed;
  keyed.reserve(extensions.size());
  for (auto& ext : extensions) {
    keyed.emplace_back(f.sorted_names(ext.members), std::move(ext));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  extensions.clear();
  for (auto& [key, ext] : keyed) extensions.push_back(std::move(ext));
}

std::vector<Extension> enumerate_extensions_bruteforce(const Framework& f,
                                                       Semantics semantics,
                                                       std::size_t cap) {
  const std::size_t n = f.size();
  if (n > cap) {
    throw TooLargeError("framework has " + std::to_string(n) +
                        " arguments: too large for brute force (cap " +
                        std::to_string(cap) + ")");
  }
  // Symmetric and self attacks can never be reconciled by meta-attacks.
  std::vector<ArgumentSet> clash(n, ArgumentSet(n));
  for (const Attack& a : f.attacks()) {
    if (a.from == a.to || f.find_attack(a.to, a.from)) {
      clash[a.from].set(a.to);
      clash[a.to].set(a.from);
    }
  }

  std::vector<ArgumentSet> found;
  ArgumentSet current(n);
  std::function<void(std::size_t)> search = [&](std::size_t next) {
    if (next == n) {
      const bool keep = semantics == Semantics::kStable
                            ? is_stable(f, current)
                            : is_admissible(f, current);
      if (keep) found.push_back(current);
      return;
    }
    if (!clash[next].test(next) && !clash[next].intersects(current)) {
      current.set(next);
      search(next + 1);
      current.reset(next);
    }
    search(next + 1);
  };
  search(0);

  if (semantics == Semantics::kPreferred) {
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      return a.count() > b.count();
    });
    std::vector<ArgumentSet> maximal;
    for (const auto& set : found) {
      const bool dominated =
          std::any_of(maximal.begin(), maximal.end(), [&](const auto& m) {
            return set.is_proper_subset_of(m);
          });
      if (!dominated) maximal.push_back(set);
    }
    found = std::move(maximal);
  }

  std::vector<Extension> out;
  out.reserve(found.size());
  for (auto& set : found) out.push_back({std::move(set), semantics});
  sort_extensions(f, out);
  return out;
}

}  // namespace eafnash
