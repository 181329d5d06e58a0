#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dspace/model.hpp"

namespace dspace {

// Outcome of one attempted operation. Every attempt, successful or not,
// advances the clock by exactly one; a failed attempt changes nothing else.
struct OpResult {
  int ret = 0;  // 0 or 1
  DataSpaceState state;
  ReasonCode reason = ReasonCode::ok;
  // Data units whose lifecycle a successful rule operation advanced
  // (selector-matched for Provide_Rule, last-permit-lost for Stop_Rule).
  std::vector<DataId> rule_scope;
};

// Data service methods. D is only ever changed on ret=1, by exactly the
// documented delta.

OpResult provide_data(const DataSpaceState& state, const OrgId& actor,
                      const DataUnit& unit, const Condition& cond);

// Changes provision conditions, header, or mechanisms; never the content.
// d_new.id must equal id and d_new.payload must equal the current payload.
OpResult modify_data(const DataSpaceState& state, const OrgId& actor,
                     const DataId& id, const DataUnit& d_new,
                     const Condition& cond);

OpResult stop_data(const DataSpaceState& state, const OrgId& actor,
                   const DataId& id, const Condition& cond);

// Pure with respect to D: the data-unit set of the post-state always equals
// the pre-state's. Per-actor use counters are engine bookkeeping.
OpResult use_data(const DataSpaceState& state, const OrgId& actor,
                  const DataId& id, const Condition& cond_u,
                  const std::optional<std::string>& purpose);

namespace detail {

struct UseDecision {
  int ret = 0;
  ReasonCode reason = ReasonCode::ok;
};

// The full Use_Data admission decision (precedence, compatibility,
// governance) for an actor with an explicit credential set, without any
// state mutation. Shared by use_data and the federation layer.
UseDecision decide_use(const DataSpaceState& state, const OrgId& actor,
                       const std::set<SocialMechId>& credentials,
                       const DataId& id, const Condition& cond_u,
                       const std::optional<std::string>& purpose);

// Evaluation context for an operation attempted at the state's current
// clock. subject socials are filled when the target unit exists.
RequestContext make_context(const DataSpaceState& state, const OrgId& actor,
                            const std::set<SocialMechId>& credentials,
                            const std::optional<DataId>& target,
                            const std::optional<std::string>& purpose);

}  // namespace detail

}  // namespace dspace
