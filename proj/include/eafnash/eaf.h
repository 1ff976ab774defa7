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

// Extended Argumentation Frameworks: arguments, attacks between arguments and
// attacks on attacks (meta-attacks), with set-relative defeat and the
// admissible / preferred / stable semantics built on reinstatement sets.

#ifndef EAFNASH_EAF_H_
#define EAFNASH_EAF_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace eafnash {

using ArgumentId = std::size_t;
using AttackId = std::size_t;
using ArgumentSet = boost::dynamic_bitset<>;

struct Attack {
  ArgumentId from;
  ArgumentId to;
};

struct MetaAttack {
  ArgumentId from;
  AttackId attack;
};

class FrameworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable (A, C, D) with per-target attack lists and per-attack
// meta-attacker lists. The EAF coherence condition is not enforced here; see
// check_eaf_condition.
class Framework {
 public:
  class Builder {
   public:
    // Names must be unique.
    ArgumentId add_argument(std::string name);
    AttackId add_attack(ArgumentId from, ArgumentId to);
    void add_meta_attack(ArgumentId from, AttackId attack);
    // Name-based conveniences for hand-built frameworks.
    AttackId add_attack(std::string_view from, std::string_view to);
    void add_meta_attack(std::string_view from, std::string_view attack_from,
                         std::string_view attack_to);
    std::size_t size() const { return names_.size(); }
    Framework build() &&;

   private:
    ArgumentId lookup(std::string_view name) const;

    std::vector<std::string> names_;
    std::unordered_map<std::string, ArgumentId> by_name_;
    std::vector<Attack> attacks_;
    std::unordered_map<std::uint64_t, AttackId> attack_index_;
    std::vector<MetaAttack> meta_attacks_;
  };

  std::size_t size() const { return names_.size(); }
  const std::string& name(ArgumentId a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<ArgumentId> find(std::string_view name) const;
  // Throws FrameworkError on unknown names.
  ArgumentId at(std::string_view name) const;

  const std::vector<Attack>& attacks() const { return attacks_; }
  const std::vector<MetaAttack>& meta_attacks() const { return meta_attacks_; }
  const Attack& attack(AttackId c) const { return attacks_.at(c); }
  std::optional<AttackId> find_attack(ArgumentId from, ArgumentId to) const;

  std::span<const AttackId> attacks_on(ArgumentId x) const {
    return incoming_.at(x);
  }
  std::span<const AttackId> attacks_from(ArgumentId x) const {
    return outgoing_.at(x);
  }
  std::span<const ArgumentId> meta_attackers(AttackId c) const {
    return meta_attackers_.at(c);
  }

  ArgumentSet empty_set() const { return ArgumentSet(size()); }
  ArgumentSet full_set() const { return ~empty_set(); }
  ArgumentSet make_set(std::initializer_list<std::string_view> names) const;
  std::vector<std::string> sorted_names(const ArgumentSet& set) const;

 private:
  Framework() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, ArgumentId> by_name_;
  std::vector<Attack> attacks_;
  std::unordered_map<std::uint64_t, AttackId> attack_index_;
  std::vector<MetaAttack> meta_attacks_;
  std::vector<std::vector<AttackId>> incoming_;
  std::vector<std::vector<AttackId>> outgoing_;
  std::vector<std::vector<ArgumentId>> meta_attackers_;
};

enum class Semantics { kAdmissible, kPreferred, kStable };

std::string_view to_string(Semantics semantics);
// Throws std::invalid_argument listing the allowed values.
Semantics parse_semantics(std::string_view text);

struct Extension {
  ArgumentSet members;
  Semantics semantics = Semantics::kPreferred;

  bool operator==(const Extension& other) const {
    return members == other.members && semantics == other.semantics;
  }
};

// y ->_Y x: (y, x) is an attack and no member of Y meta-attacks it.
bool defeats(const Framework& f, ArgumentId y, ArgumentId x,
             const ArgumentSet& context);
// Same as above for a known attack id.
bool is_defeat(const Framework& f, AttackId c, const ArgumentSet& context);

// Modgil's reading: every internal attack (y, x) requires (x, y) not to be an
// attack and some member meta-attacking (y, x).
bool is_conflict_free(const Framework& f, const ArgumentSet& e);

// The greatest closed set of E-sourced defeats: starting from every defeat
// u ->_E v with u in E, repeatedly drop a defeat if one of its meta-attackers
// is not itself defeated by a surviving member, until nothing changes. Closed
// sets are closed under union, so this contains every reinstatement set.
std::vector<AttackId> greatest_reinstatement_set(const Framework& f,
                                                 const ArgumentSet& e);

bool is_acceptable(const Framework& f, ArgumentId x, const ArgumentSet& e);
bool is_admissible(const Framework& f, const ArgumentSet& e);
// Conflict-free and defeating (w.r.t. itself) every outside argument.
bool is_stable(const Framework& f, const ArgumentSet& e);

inline constexpr std::size_t kDefaultBruteForceCap = 22;

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact preferred or stable (or all admissible) extensions by subset search
// with pruning on permanent conflicts. Output is sorted lexicographically by
// sorted member names. Throws TooLargeError above `cap` arguments.
std::vector<Extension> enumerate_extensions_bruteforce(
    const Framework& f, Semantics semantics,
    std::size_t cap = kDefaultBruteForceCap);

// Lexicographic order on sorted member names, used for all reported lists.
void sort_extensions(const Framework& f, std::vector<Extension>& extensions);

}  // namespace eafnash

#endif  // EAFNASH_EAF_H_
