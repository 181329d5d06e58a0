#pragma once

#include <compare>
#include <string>

namespace dspace {

// Opaque, totally ordered identifier token. The tag parameter keeps ids of
// different component sets from mixing at compile time; ordering is the
// lexicographic order of the underlying token and defines the canonical
// ordering of every set in a data space.
template <class Tag>
struct Id {
  std::string value;

  Id() = default;
  explicit Id(std::string v) : value(std::move(v)) {}

  bool empty() const { return value.empty(); }
  auto operator<=>(const Id&) const = default;
};

using OrgId = Id<struct OrgIdTag>;
using MechId = Id<struct MechIdTag>;
using DataId = Id<struct DataIdTag>;
using SocialMechId = Id<struct SocialMechIdTag>;
using RuleId = Id<struct RuleIdTag>;

enum class RoleTag {
  provider,
  user,
  authenticator,
  trust_org,
  clearing_house,
  marketplace,
};

enum class MechKind {
  database,
  file,
  api_endpoint,
  stream,
  other,
};

// The seven fundamental operations.
enum class OpKind {
  provide_data,
  modify_data,
  stop_data,
  use_data,
  provide_rule,
  modify_rule,
  stop_rule,
};

inline constexpr OpKind all_op_kinds[] = {
    OpKind::provide_data, OpKind::modify_data, OpKind::stop_data,
    OpKind::use_data,     OpKind::provide_rule, OpKind::modify_rule,
    OpKind::stop_rule,
};

// Outcome classification for one attempted operation. `ok` accompanies
// ret=1; every other code explains a ret=0.
enum class ReasonCode {
  ok,
  precedence_violation,
  not_provider,
  not_issuer,
  rule_denied,
  incompatible,
  duplicate_id,
  unknown_id,
  invalid_header,
  no_recognition,
};

std::string to_string(RoleTag t);
std::string to_string(MechKind k);
std::string to_string(OpKind k);
std::string to_string(ReasonCode r);

bool role_from_string(const std::string& s, RoleTag& out);
bool mech_kind_from_string(const std::string& s, MechKind& out);
bool op_kind_from_string(const std::string& s, OpKind& out);
bool reason_from_string(const std::string& s, ReasonCode& out);

}  // namespace dspace
