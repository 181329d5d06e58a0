#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dspace/model.hpp"
#include "dspace/operations.hpp"

namespace dspace {

// Symmetric trust relation between social mechanisms of two spaces. Pairs
// are stored as (id in A, id in B); recognition holds in both directions.
struct RecognitionMap {
  std::set<std::pair<SocialMechId, SocialMechId>> pairs;

  bool recognizes(const SocialMechId& in_a, const SocialMechId& in_b) const {
    return pairs.contains({in_a, in_b});
  }
  bool operator==(const RecognitionMap&) const = default;
};

// Immutable snapshots of two spaces plus the recognition relation between
// their social mechanisms. Credential translation is always derived from the
// recognition pairs, never stored.
struct FederationBridge {
  DataSpaceState space_a;
  DataSpaceState space_b;
  RecognitionMap recognition;
};

// Adds a recognized pair (idempotent). Throws DanglingReference when either
// id does not resolve in its space.
FederationBridge establish_recognition(FederationBridge bridge,
                                       const SocialMechId& in_a,
                                       const SocialMechId& in_b);

// Credentials an organization of one space holds in the other, through the
// recognized pairs.
std::set<SocialMechId> translate_credentials_a_to_b(const FederationBridge& b,
                                                    const OrgId& org_in_a);
std::set<SocialMechId> translate_credentials_b_to_a(const FederationBridge& b,
                                                    const OrgId& org_in_b);

// Whether space A would admit a Use_Data of one of its units by a space-B
// organization acting with its translated credentials. Pure: neither space
// changes; the returned state is space A's snapshot as-is.
OpResult federated_use_data(const FederationBridge& bridge,
                            const OrgId& actor_in_b, const DataId& data_in_a,
                            const Condition& cond_u,
                            const std::optional<std::string>& purpose);

struct InteropVerdict {
  bool interoperable = false;
  std::optional<std::pair<OrgId, Condition>> witness;
};

// The finite usage-condition lattice searched for witnesses: wildcard, the
// provision condition itself, and each of its single-clause restrictions.
std::vector<Condition> candidate_conditions(const DataSpaceState& space,
                                            const DataId& id);

// Existence check for cross-space usability of a unit provided in A. Throws
// PremiseViolation when nobody in A can use the unit natively.
InteropVerdict check_interoperability(const FederationBridge& bridge,
                                      const DataId& data_in_a);

}  // namespace dspace
