#pragma once

#include <optional>
#include <set>

#include "dspace/conditions.hpp"
#include "dspace/ids.hpp"

namespace dspace {

enum class RuleEffect { permit, deny };

std::string to_string(RuleEffect e);
bool rule_effect_from_string(const std::string& s, RuleEffect& out);

// Which attempted operations a rule applies to. Absent data/actor filters
// match everything. Filters are id sets so a rule re-targeted by refinement
// can cover all children of a decomposed element under one rule id.
struct OperationSelector {
  std::set<OpKind> op_kinds;
  std::optional<std::set<DataId>> data;
  std::optional<std::set<OrgId>> actors;

  bool matches(OpKind kind, const std::optional<DataId>& target,
               const OrgId& actor) const {
    if (!op_kinds.contains(kind)) return false;
    if (data && (!target || !data->contains(*target))) return false;
    if (actors && !actors->contains(actor)) return false;
    return true;
  }
  bool operator==(const OperationSelector&) const = default;
};

// Dynamic governance record. Rules operate within a social-mechanism
// infrastructure element and carry a guard condition evaluated against the
// request context.
struct Rule {
  RuleId id;
  OrgId issuer;
  OperationSelector selector;
  Condition guard;
  RuleEffect effect = RuleEffect::permit;
  SocialMechId social;
  bool operator==(const Rule&) const = default;
};

enum class Decision { permitted, denied, no_applicable_rule };

std::string to_string(Decision d);

}  // namespace dspace
