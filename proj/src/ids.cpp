#include "dspace/ids.hpp"

#include <array>
#include <utility>

namespace dspace {

namespace {

template <class E, std::size_t N>
std::string lookup(const std::array<std::pair<E, const char*>, N>& table, E v) {
  for (const auto& [e, s] : table)
    if (e == v) return s;
  return "?";
}

template <class E, std::size_t N>
bool reverse_lookup(const std::array<std::pair<E, const char*>, N>& table,
                    const std::string& s, E& out) {
  for (const auto& [e, name] : table)
    if (s == name) {
      out = e;
      return true;
    }
  return false;
}

constexpr std::array<std::pair<RoleTag, const char*>, 6> role_names{{
    {RoleTag::provider, "provider"},
    {RoleTag::user, "user"},
    {RoleTag::authenticator, "authenticator"},
    {RoleTag::trust_org, "trust-org"},
    {RoleTag::clearing_house, "clearing-house"},
    {RoleTag::marketplace, "marketplace"},
}};

constexpr std::array<std::pair<MechKind, const char*>, 5> mech_names{{
    {MechKind::database, "database"},
    {MechKind::file, "file"},
    {MechKind::api_endpoint, "api-endpoint"},
    {MechKind::stream, "stream"},
    {MechKind::other, "other"},
}};

constexpr std::array<std::pair<OpKind, const char*>, 7> op_names{{
    {OpKind::provide_data, "Provide_Data"},
    {OpKind::modify_data, "Modify_Data"},
    {OpKind::stop_data, "Stop_Data"},
    {OpKind::use_data, "Use_Data"},
    {OpKind::provide_rule, "Provide_Rule"},
    {OpKind::modify_rule, "Modify_Rule"},
    {OpKind::stop_rule, "Stop_Rule"},
}};

constexpr std::array<std::pair<ReasonCode, const char*>, 10> reason_names{{
    {ReasonCode::ok, "ok"},
    {ReasonCode::precedence_violation, "precedence-violation"},
    {ReasonCode::not_provider, "not-provider"},
    {ReasonCode::not_issuer, "not-issuer"},
    {ReasonCode::rule_denied, "rule-denied"},
    {ReasonCode::incompatible, "incompatible"},
    {ReasonCode::duplicate_id, "duplicate-id"},
    {ReasonCode::unknown_id, "unknown-id"},
    {ReasonCode::invalid_header, "invalid-header"},
    {ReasonCode::no_recognition, "no-recognition"},
}};

}  // namespace

std::string to_string(RoleTag t) { return lookup(role_names, t); }
std::string to_string(MechKind k) { return lookup(mech_names, k); }
std::string to_string(OpKind k) { return lookup(op_names, k); }
std::string to_string(ReasonCode r) { return lookup(reason_names, r); }

bool role_from_string(const std::string& s, RoleTag& out) {
  return reverse_lookup(role_names, s, out);
}
bool mech_kind_from_string(const std::string& s, MechKind& out) {
  return reverse_lookup(mech_names, s, out);
}
bool op_kind_from_string(const std::string& s, OpKind& out) {
  return reverse_lookup(op_names, s, out);
}
bool reason_from_string(const std::string& s, ReasonCode& out) {
  return reverse_lookup(reason_names, s, out);
}

}  // namespace dspace
