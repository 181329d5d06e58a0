#pragma once

#include <optional>
#include <span>

#include "dspace/operations.hpp"
#include "dspace/trace.hpp"

namespace dspace {

// Data governance methods over the rule set R. Issuer sovereignty mirrors
// provider sovereignty: only the issuing organization may modify or stop a
// rule.

OpResult provide_rule(const DataSpaceState& state, const OrgId& actor,
                      const Rule& rule, const Condition& cond);

OpResult modify_rule(const DataSpaceState& state, const OrgId& actor,
                     const RuleId& id, const Rule& r_new,
                     const Condition& cond);

OpResult stop_rule(const DataSpaceState& state, const OrgId& actor,
                   const RuleId& id, const Condition& cond);

// Rule evaluation for one attempted operation: collect rules whose selector
// matches and whose guard is satisfied; deny overrides permit. The caller
// applies the default policy when no rule applies (Use_Data defaults to
// deny, everything else to permit).
Decision evaluate(const DataSpaceState& state, OpKind op, const OrgId& actor,
                  const std::optional<DataId>& target,
                  const RequestContext& ctx);

// A proposed operation call, as judged by the precedence constraints.
struct OpCall {
  OpKind kind = OpKind::provide_data;
  OrgId actor;
  std::string target;
};

// Whether the precedence relationships admit the proposed call given the
// history: data cannot be used unless currently provided, and only the
// providing organization may modify or stop its provision.
bool check_precedence(std::span<const TraceEvent> history,
                      const OpCall& proposed);

}  // namespace dspace
