#include "dspace/model.hpp"

#include "dspace/errors.hpp"
#include "dspace/hash.hpp"

namespace dspace {

std::optional<SocialMechId> Header::social() const {
  auto it = attributes.find(social_attribute);
  if (it == attributes.end()) return std::nullopt;
  const auto* s = std::get_if<std::string>(&it->second);
  if (!s) return std::nullopt;
  return SocialMechId{*s};
}

void Header::set_social(const SocialMechId& s) {
  attributes[social_attribute] = s.value;
}

Payload Payload::from_bytes(std::string bytes, bool structured) {
  Payload p;
  p.content_hash = digest(bytes);
  p.inline_bytes = std::move(bytes);
  p.structured = structured;
  return p;
}

DataSpaceState new_data_space(const std::vector<Organization>& orgs,
                              const std::vector<DataProvisionMechanism>& mechs,
                              const std::vector<SocialMechanism>& socials) {
  DataSpaceState state;
  for (const auto& s : socials) state.socials.emplace(s.id, s);
  for (const auto& m : mechs) state.mechs.emplace(m.id, m);
  for (const auto& o : orgs) {
    for (const auto& cred : o.credentials)
      if (!state.socials.contains(cred)) throw DanglingReference(cred.value);
    state.orgs.emplace(o.id, o);
  }
  return state;
}

namespace detail {

std::optional<Violation> header_problem(
    const Header& h, const std::map<SocialMechId, SocialMechanism>& socials,
    const std::string& subject) {
  auto it = h.attributes.find(Header::social_attribute);
  if (it == h.attributes.end())
    return Violation{"MissingMandatoryAttribute", subject,
                     "header lacks the social attribute"};
  const auto* social = std::get_if<std::string>(&it->second);
  if (!social)
    return Violation{"InvalidAttributeType", subject,
                     "social attribute must be a string token"};
  if (!socials.contains(SocialMechId{*social}))
    return Violation{"DanglingReference", subject,
                     "social mechanism " + *social + " not in S"};
  if (auto ts = h.attributes.find(Header::timestamp_attribute);
      ts != h.attributes.end() && !std::holds_alternative<Timestamp>(ts->second))
    return Violation{"InvalidAttributeType", subject,
                     "timestamp attribute must be timestamp-typed"};
  if (auto fm = h.attributes.find(Header::format_attribute);
      fm != h.attributes.end() &&
      !std::holds_alternative<std::string>(fm->second))
    return Violation{"InvalidAttributeType", subject,
                     "format attribute must be a string"};
  return std::nullopt;
}

}  // namespace detail

ValidationReport validate_state(const DataSpaceState& state) {
  ValidationReport report;
  auto flag = [&](std::string code, std::string subject, std::string detail) {
    report.push_back({std::move(code), std::move(subject), std::move(detail)});
  };

  for (const auto& [id, org] : state.orgs) {
    if (org.id != id) flag("KeyMismatch", id.value, "organization key/id differ");
    if (org.roles.empty()) flag("EmptyRoleSet", id.value, "organization has no roles");
    for (const auto& cred : org.credentials)
      if (!state.socials.contains(cred))
        flag("DanglingReference", id.value, "credential " + cred.value + " not in S");
  }

  for (const auto& [id, mech] : state.mechs)
    if (mech.id != id) flag("KeyMismatch", id.value, "mechanism key/id differ");
  for (const auto& [id, social] : state.socials)
    if (social.id != id) flag("KeyMismatch", id.value, "social key/id differ");

  // provider_of / lifecycle may retain ids of stopped units; a data id is
  // "historical" when it appears there.
  auto historical = [&](const DataId& d) {
    return state.provider_of.contains(d) || state.units.contains(d);
  };

  for (const auto& [id, unit] : state.units) {
    if (unit.id != id) flag("KeyMismatch", id.value, "data unit key/id differ");
    if (auto v = detail::header_problem(unit.header, state.socials, id.value))
      report.push_back(*v);
    if (unit.mechanisms.empty())
      flag("EmptyMechanismSet", id.value,
           "data unit associates with no provision mechanism");
    for (const auto& m : unit.mechanisms)
      if (!state.mechs.contains(m))
        flag("DanglingReference", id.value, "mechanism " + m.value + " not in M");
    if (unit.payload.inline_bytes &&
        unit.payload.content_hash != digest(*unit.payload.inline_bytes))
      flag("PayloadHashMismatch", id.value,
           "inline bytes do not match the recorded content hash");
    if (!state.provider_of.contains(id))
      flag("MissingProvider", id.value, "active unit has no provider record");
    if (!state.provisions.contains(id))
      flag("MissingProvision", id.value, "active unit has no provision condition");
    if (!state.lifecycle.contains(id))
      flag("MissingLifecycle", id.value, "active unit has no lifecycle state");
  }

  for (const auto& [id, org] : state.provider_of)
    if (!state.orgs.contains(org))
      flag("DanglingReference", id.value, "provider " + org.value + " not in O");

  for (const auto& [id, cond] : state.provisions) {
    if (!state.units.contains(id))
      flag("StaleProvision", id.value, "provision condition for absent unit");
    if (cond.valid_window && cond.valid_window->start > cond.valid_window->end)
      flag("WindowInverted", id.value, "valid_window start exceeds end");
    if (cond.max_uses && *cond.max_uses == 0)
      flag("InvalidMaxUses", id.value, "max_uses must be positive");
  }

  for (const auto& [id, rule] : state.rules) {
    if (rule.id != id) flag("KeyMismatch", id.value, "rule key/id differ");
    if (!state.socials.contains(rule.social))
      flag("DanglingReference", id.value,
           "rule social " + rule.social.value + " not in S");
    if (rule.selector.op_kinds.empty())
      flag("EmptySelector", id.value, "selector matches no operation kind");
    if (rule.selector.data)
      for (const auto& d : *rule.selector.data)
        if (!historical(d))
          flag("DanglingReference", id.value,
               "selector data " + d.value + " never provided");
    if (rule.selector.actors)
      for (const auto& a : *rule.selector.actors)
        if (!state.orgs.contains(a))
          flag("DanglingReference", id.value,
               "selector actor " + a.value + " not in O");
    if (!state.orgs.contains(rule.issuer))
      flag("DanglingReference", id.value,
           "issuer " + rule.issuer.value + " not in O");
    if (!state.issuer_of.contains(id))
      flag("MissingIssuer", id.value, "rule has no issuer record");
    if (rule.guard.valid_window &&
        rule.guard.valid_window->start > rule.guard.valid_window->end)
      flag("WindowInverted", id.value, "guard valid_window start exceeds end");
    if (rule.guard.max_uses && *rule.guard.max_uses == 0)
      flag("InvalidMaxUses", id.value, "guard max_uses must be positive");
  }

  for (const auto& [id, org] : state.issuer_of) {
    if (!state.rules.contains(id))
      flag("StaleIssuer", id.value, "issuer record for absent rule");
    if (!state.orgs.contains(org))
      flag("DanglingReference", id.value, "issuer " + org.value + " not in O");
  }

  for (const auto& [id, ls] : state.lifecycle) {
    (void)ls;
    if (!historical(id))
      flag("DanglingReference", id.value, "lifecycle entry for unknown unit");
  }

  for (const auto& [key, count] : state.use_counts) {
    (void)count;
    if (!state.orgs.contains(key.first))
      flag("DanglingReference", key.first.value, "use counter for unknown org");
    if (!historical(key.second))
      flag("DanglingReference", key.second.value,
           "use counter for unknown unit");
  }

  return report;
}

}  // namespace dspace
