#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "dspace/ids.hpp"

namespace dspace {

// Inclusive logical-clock interval.
struct ClockWindow {
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  auto operator<=>(const ClockWindow&) const = default;
  bool contains(std::uint64_t t) const { return start <= t && t <= end; }
};

// Clause-set policy expression. An omitted clause imposes no constraint
// (wildcard); the wildcard condition is the top of the constraint lattice.
struct Condition {
  std::optional<std::set<OrgId>> allowed_orgs;
  std::optional<std::set<std::string>> purposes;
  std::optional<ClockWindow> valid_window;
  std::optional<SocialMechId> required_social;
  std::optional<std::uint64_t> max_uses;  // must be >= 1 when present

  bool wildcard() const {
    return !allowed_orgs && !purposes && !valid_window && !required_social &&
           !max_uses;
  }
  bool operator==(const Condition&) const = default;
};

// Evaluation context for one requested operation.
//
// purpose is the requested intent of a Use_Data call. subject_socials are
// facts about the provision subject: the data unit's header social mechanism
// plus the provider organization's credentials; they back user-side
// required_social clauses.
struct RequestContext {
  OrgId actor;
  std::uint64_t clock = 0;
  std::set<SocialMechId> actor_credentials;
  std::uint64_t uses_so_far = 0;
  std::optional<std::string> purpose;
  std::set<SocialMechId> subject_socials;
};

// True iff every clause present in c holds for ctx.
bool satisfies(const Condition& c, const RequestContext& ctx);

// Directional compatibility between the provider's provision condition and
// the user's usage condition: the provider condition must admit the request,
// and every user clause must be implied by the provider condition or by
// context facts (requirement set contained in allowance set).
bool compatible(const Condition& provider, const Condition& user,
                const RequestContext& ctx);

}  // namespace dspace
