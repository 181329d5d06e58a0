#include "dspace/federation.hpp"

#include "dspace/errors.hpp"

namespace dspace {

namespace {

OpResult pure_result(const FederationBridge& bridge, int ret,
                     ReasonCode reason) {
  OpResult r;
  r.ret = ret;
  r.reason = reason;
  r.state = bridge.space_a;  // federated evaluation never mutates a space
  return r;
}

}  // namespace

FederationBridge establish_recognition(FederationBridge bridge,
                                       const SocialMechId& in_a,
                                       const SocialMechId& in_b) {
  // The pair is unordered; arguments may come in either space order.
  if (bridge.space_a.socials.contains(in_a) &&
      bridge.space_b.socials.contains(in_b)) {
    bridge.recognition.pairs.insert({in_a, in_b});  // set semantics: idempotent
    return bridge;
  }
  if (bridge.space_a.socials.contains(in_b) &&
      bridge.space_b.socials.contains(in_a)) {
    bridge.recognition.pairs.insert({in_b, in_a});
    return bridge;
  }
  throw DanglingReference(
      bridge.space_a.socials.contains(in_a) || bridge.space_b.socials.contains(in_a)
          ? in_b.value
          : in_a.value);
}

std::set<SocialMechId> translate_credentials_a_to_b(const FederationBridge& b,
                                                    const OrgId& org_in_a) {
  auto it = b.space_a.orgs.find(org_in_a);
  if (it == b.space_a.orgs.end()) throw DanglingReference(org_in_a.value);
  std::set<SocialMechId> out;
  for (const auto& [sa, sb] : b.recognition.pairs)
    if (it->second.credentials.contains(sa)) out.insert(sb);
  return out;
}

std::set<SocialMechId> translate_credentials_b_to_a(const FederationBridge& b,
                                                    const OrgId& org_in_b) {
  auto it = b.space_b.orgs.find(org_in_b);
  if (it == b.space_b.orgs.end()) throw DanglingReference(org_in_b.value);
  std::set<SocialMechId> out;
  for (const auto& [sa, sb] : b.recognition.pairs)
    if (it->second.credentials.contains(sb)) out.insert(sa);
  return out;
}

OpResult federated_use_data(const FederationBridge& bridge,
                            const OrgId& actor_in_b, const DataId& data_in_a,
                            const Condition& cond_u,
                            const std::optional<std::string>& purpose) {
  if (!bridge.space_b.orgs.contains(actor_in_b))
    return pure_result(bridge, 0, ReasonCode::unknown_id);
  if (!bridge.space_a.units.contains(data_in_a))
    return pure_result(bridge, 0, ReasonCode::precedence_violation);
  // Interoperability concerns data NOT directly provided to B; a native copy
  // makes the federated path moot.
  if (bridge.space_b.units.contains(data_in_a))
    return pure_result(bridge, 0, ReasonCode::duplicate_id);

  std::set<SocialMechId> translated =
      translate_credentials_b_to_a(bridge, actor_in_b);
  if (translated.empty())
    return pure_result(bridge, 0, ReasonCode::no_recognition);

  // Space A judges a virtual actor carrying the translated credentials.
  auto decision = detail::decide_use(bridge.space_a, actor_in_b, translated,
                                     data_in_a, cond_u, purpose);
  return pure_result(bridge, decision.ret, decision.reason);
}

std::vector<Condition> candidate_conditions(const DataSpaceState& space,
                                            const DataId& id) {
  std::vector<Condition> out;
  out.push_back(Condition{});  // wildcard first
  auto it = space.provisions.find(id);
  if (it == space.provisions.end()) return out;
  const Condition& prov = it->second;
  if (!prov.wildcard()) out.push_back(prov);  // exact match
  // Each single-clause restriction of the provision condition.
  if (prov.allowed_orgs) {
    Condition c;
    c.allowed_orgs = prov.allowed_orgs;
    out.push_back(std::move(c));
  }
  if (prov.purposes) {
    Condition c;
    c.purposes = prov.purposes;
    out.push_back(std::move(c));
  }
  if (prov.valid_window) {
    Condition c;
    c.valid_window = prov.valid_window;
    out.push_back(std::move(c));
  }
  if (prov.required_social) {
    Condition c;
    c.required_social = prov.required_social;
    out.push_back(std::move(c));
  }
  if (prov.max_uses) {
    Condition c;
    c.max_uses = prov.max_uses;
    out.push_back(std::move(c));
  }
  return out;
}

InteropVerdict check_interoperability(const FederationBridge& bridge,
                                      const DataId& data_in_a) {
  if (!bridge.space_a.units.contains(data_in_a))
    throw PremiseViolation("data unit " + data_in_a.value +
                           " is not provided in space A");

  const std::vector<Condition> candidates =
      candidate_conditions(bridge.space_a, data_in_a);

  // Premise: someone in A can use the unit natively.
  bool native_usable = false;
  for (const auto& [o, org] : bridge.space_a.orgs) {
    for (const auto& cond : candidates) {
      if (detail::decide_use(bridge.space_a, o, org.credentials, data_in_a,
                             cond, std::nullopt)
              .ret == 1) {
        native_usable = true;
        break;
      }
    }
    if (native_usable) break;
  }
  if (!native_usable)
    throw PremiseViolation("no organization of space A can use " +
                           data_in_a.value);

  // Finite witness search over B's organizations and the condition lattice.
  for (const auto& [o, org] : bridge.space_b.orgs) {
    (void)org;
    for (const auto& cond : candidates) {
      if (federated_use_data(bridge, o, data_in_a, cond, std::nullopt).ret == 1)
        return InteropVerdict{true, std::make_pair(o, cond)};
    }
  }
  return InteropVerdict{false, std::nullopt};
}

}  // namespace dspace
