#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dspace/automaton.hpp"
#include "dspace/conditions.hpp"
#include "dspace/ids.hpp"
#include "dspace/rules.hpp"

namespace dspace {

struct Timestamp {
  std::int64_t value = 0;
  auto operator<=>(const Timestamp&) const = default;
};

// Typed header attribute value. Unknown attribute types are stored opaquely
// and never consulted by governance.
using AttributeValue =
    std::variant<std::string, std::int64_t, Timestamp, std::set<std::string>>;

// Logical object of typed attributes carrying control and governance
// metadata, separate from payload content. The `social` attribute is
// mandatory and must name a social mechanism of the same space.
struct Header {
  static constexpr const char* social_attribute = "social";
  static constexpr const char* timestamp_attribute = "timestamp";
  static constexpr const char* format_attribute = "format";

  std::map<std::string, AttributeValue> attributes;

  // The social-mechanism attribute, when present and string-typed.
  std::optional<SocialMechId> social() const;
  void set_social(const SocialMechId& s);

  bool operator==(const Header&) const = default;
};

// Opaque byte-content reference: a stable digest plus optional inline bytes.
// Governance acts on headers and conditions only, never on content.
struct Payload {
  std::string content_hash;
  std::optional<std::string> inline_bytes;
  bool structured = false;

  static Payload from_bytes(std::string bytes, bool structured = false);

  bool operator==(const Payload&) const = default;
};

struct DataUnit {
  DataId id;
  Header header;
  Payload payload;
  std::set<MechId> mechanisms;  // must be non-empty, all resolving in M
  bool operator==(const DataUnit&) const = default;
};

struct Organization {
  OrgId id;
  std::set<RoleTag> roles;  // non-empty
  std::set<SocialMechId> credentials;
  bool operator==(const Organization&) const = default;
};

struct SocialMechanism {
  SocialMechId id;
  std::string kind;  // free tag, e.g. identity-verification
  bool operator==(const SocialMechanism&) const = default;
};

struct DataProvisionMechanism {
  MechId id;
  MechKind kind = MechKind::other;
  bool operator==(const DataProvisionMechanism&) const = default;
};

struct Violation {
  std::string code;
  std::string subject;
  std::string detail;
  bool operator==(const Violation&) const = default;
};
using ValidationReport = std::vector<Violation>;

// The live data-space value: the five component sets plus provenance,
// provision bookkeeping, per-unit lifecycle states, and the logical clock.
//
// Immutable by convention: operations take a state and return a new one.
// provider_of and lifecycle entries are retained after stop_data (audit
// trail; re-provision of an id is reserved to its original provider), so
// they may hold ids no longer present in units.
struct DataSpaceState {
  std::map<OrgId, Organization> orgs;
  std::map<MechId, DataProvisionMechanism> mechs;
  std::map<DataId, DataUnit> units;
  std::map<SocialMechId, SocialMechanism> socials;
  std::map<RuleId, Rule> rules;

  std::map<DataId, Condition> provisions;  // active provision condition per unit
  std::map<DataId, OrgId> provider_of;
  std::map<RuleId, OrgId> issuer_of;
  std::map<DataId, AutomatonState> lifecycle;
  std::map<std::pair<OrgId, DataId>, std::uint64_t> use_counts;

  std::uint64_t clock = 0;

  bool operator==(const DataSpaceState&) const = default;
};

// Constructor for a fresh space: D and R start empty, clock at zero.
// Throws DanglingReference if any organization credential does not resolve.
DataSpaceState new_data_space(const std::vector<Organization>& orgs,
                              const std::vector<DataProvisionMechanism>& mechs,
                              const std::vector<SocialMechanism>& socials);

// Reports every broken structural invariant; an empty report means the
// state is well-formed. Violations are data, not errors.
ValidationReport validate_state(const DataSpaceState& state);

namespace detail {
// First structural problem of a header against a social-mechanism set, or
// nullopt. Shared by validate_state and the service operations.
std::optional<Violation> header_problem(
    const Header& h, const std::map<SocialMechId, SocialMechanism>& socials,
    const std::string& subject);
}  // namespace detail

}  // namespace dspace
