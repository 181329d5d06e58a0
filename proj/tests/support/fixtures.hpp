#pragma once

// Shared builders for the small spaces most tests run on.

#include <string>
#include <vector>

#include "dspace/model.hpp"

namespace dspace::testing {

inline Organization org(const std::string& id, std::set<RoleTag> roles,
                        std::set<std::string> creds = {}) {
  Organization o;
  o.id = OrgId{id};
  o.roles = std::move(roles);
  for (const auto& c : creds) o.credentials.insert(SocialMechId{c});
  return o;
}

inline SocialMechanism social(const std::string& id,
                              const std::string& kind = "identity-verification") {
  return SocialMechanism{SocialMechId{id}, kind};
}

inline DataProvisionMechanism mech(const std::string& id,
                                   MechKind kind = MechKind::database) {
  return DataProvisionMechanism{MechId{id}, kind};
}

inline DataUnit unit(const std::string& id, const std::string& social_id,
                     const std::string& bytes = "bytes",
                     std::set<std::string> mech_ids = {"m1"}) {
  DataUnit d;
  d.id = DataId{id};
  d.header.set_social(SocialMechId{social_id});
  d.payload = Payload::from_bytes(bytes);
  for (const auto& m : mech_ids) d.mechanisms.insert(MechId{m});
  return d;
}

inline Rule permit_use(const std::string& id, const std::string& issuer,
                       const std::string& data_id = "",
                       const std::string& social_id = "s1") {
  Rule r;
  r.id = RuleId{id};
  r.issuer = OrgId{issuer};
  r.selector.op_kinds = {OpKind::use_data};
  if (!data_id.empty()) r.selector.data = std::set<DataId>{DataId{data_id}};
  r.effect = RuleEffect::permit;
  r.social = SocialMechId{social_id};
  return r;
}

// o1 provider (credential s1), o2 user (credential s1), o3 user without
// credentials; socials s1, s2; mechs m1, m2.
inline DataSpaceState small_space() {
  return new_data_space(
      {org("o1", {RoleTag::provider}, {"s1"}),
       org("o2", {RoleTag::user}, {"s1"}),
       org("o3", {RoleTag::user})},
      {mech("m1", MechKind::database), mech("m2", MechKind::file)},
      {social("s1"), social("s2", "policy-enforcement")});
}

}  // namespace dspace::testing
