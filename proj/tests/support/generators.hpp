#pragma once

// Deterministic random generators for property tests and the acceptance
// suites. Seeded std::mt19937_64 keeps every run reproducible.

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dspace/governance.hpp"
#include "dspace/model.hpp"
#include "dspace/operations.hpp"

namespace dspace::testing {

struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }
};

inline const std::vector<std::string> purpose_pool{"analytics", "resale",
                                                   "audit"};

inline Condition random_condition(Gen& g, const std::vector<OrgId>& orgs,
                                  const std::vector<SocialMechId>& socials) {
  Condition c;
  if (!orgs.empty() && g.chance(0.35)) {
    std::set<OrgId> allowed;
    for (const auto& o : orgs)
      if (g.chance(0.6)) allowed.insert(o);
    c.allowed_orgs = std::move(allowed);
  }
  if (g.chance(0.35)) {
    std::set<std::string> ps;
    for (const auto& p : purpose_pool)
      if (g.chance(0.5)) ps.insert(p);
    c.purposes = std::move(ps);
  }
  if (g.chance(0.35)) {
    std::uint64_t a = g.between(0, 8);
    std::uint64_t b = g.between(a, 12);
    c.valid_window = ClockWindow{a, b};
  }
  if (!socials.empty() && g.chance(0.3))
    c.required_social = socials[g.index(socials.size())];
  if (g.chance(0.25)) c.max_uses = g.between(1, 4);
  return c;
}

inline DataSpaceState random_space(Gen& g, std::size_t max_orgs = 3,
                                   std::size_t n_socials = 2,
                                   std::size_t n_mechs = 2) {
  std::vector<SocialMechanism> socials;
  for (std::size_t i = 1; i <= n_socials; ++i)
    socials.push_back({SocialMechId{"s" + std::to_string(i)},
                       i == 1 ? "identity-verification" : "policy-enforcement"});
  std::vector<DataProvisionMechanism> mechs;
  for (std::size_t i = 1; i <= n_mechs; ++i)
    mechs.push_back({MechId{"m" + std::to_string(i)},
                     i == 1 ? MechKind::database : MechKind::api_endpoint});
  std::vector<Organization> orgs;
  std::size_t n_orgs = 1 + g.index(max_orgs);
  for (std::size_t i = 1; i <= n_orgs; ++i) {
    Organization o;
    o.id = OrgId{"o" + std::to_string(i)};
    o.roles = {i == 1 ? RoleTag::provider : RoleTag::user};
    for (const auto& s : socials)
      if (g.chance(0.7)) o.credentials.insert(s.id);
    orgs.push_back(std::move(o));
  }
  return new_data_space(orgs, mechs, socials);
}

inline std::vector<OrgId> org_ids(const DataSpaceState& s) {
  std::vector<OrgId> out;
  for (const auto& [id, o] : s.orgs) {
    (void)o;
    out.push_back(id);
  }
  return out;
}

inline std::vector<SocialMechId> social_ids(const DataSpaceState& s) {
  std::vector<SocialMechId> out;
  for (const auto& [id, o] : s.socials) {
    (void)o;
    out.push_back(id);
  }
  return out;
}

// A random data unit targeting ids d1..d<max>; occasionally structurally
// broken (missing social, dangling social, empty mechanisms).
inline DataUnit random_unit(Gen& g, const DataSpaceState& s,
                            std::size_t max_units = 3) {
  DataUnit d;
  d.id = DataId{"d" + std::to_string(1 + g.index(max_units))};
  double shape = std::uniform_real_distribution<double>(0, 1)(g.rng);
  if (shape < 0.08) {
    // no social attribute
  } else if (shape < 0.14) {
    d.header.set_social(SocialMechId{"s-missing"});
  } else {
    auto socials = social_ids(s);
    d.header.set_social(socials[g.index(socials.size())]);
  }
  d.payload = Payload::from_bytes(g.chance(0.5) ? "alpha" : "beta");
  if (!g.chance(0.06)) {
    for (const auto& [id, m] : s.mechs) {
      (void)m;
      if (d.mechanisms.empty() || g.chance(0.4)) d.mechanisms.insert(id);
    }
  }
  return d;
}

inline Rule random_rule(Gen& g, const DataSpaceState& s,
                        std::size_t max_rules = 3,
                        std::size_t max_units = 3) {
  Rule r;
  r.id = RuleId{"r" + std::to_string(1 + g.index(max_rules))};
  auto orgs = org_ids(s);
  r.issuer = orgs[g.index(orgs.size())];
  r.selector.op_kinds.insert(
      g.chance(0.8) ? OpKind::use_data
                    : all_op_kinds[g.index(std::size(all_op_kinds))]);
  if (g.chance(0.5))
    r.selector.data =
        std::set<DataId>{DataId{"d" + std::to_string(1 + g.index(max_units))}};
  if (g.chance(0.3)) r.selector.actors = std::set<OrgId>{g.pick(orgs)};
  r.guard = random_condition(g, orgs, social_ids(s));
  r.effect = g.chance(0.75) ? RuleEffect::permit : RuleEffect::deny;
  auto socials = social_ids(s);
  r.social = g.chance(0.92) ? socials[g.index(socials.size())]
                            : SocialMechId{"s-missing"};
  return r;
}

// One random operation call applied to the state. Returns the result and a
// description of the call for sovereignty bookkeeping.
struct RandomCall {
  OpKind kind;
  OrgId actor;
  std::string target;
  OpResult result;
};

inline RandomCall random_call(Gen& g, const DataSpaceState& s,
                              std::size_t max_units = 3,
                              std::size_t max_rules = 3) {
  RandomCall call{all_op_kinds[g.index(std::size(all_op_kinds))], OrgId{}, "",
                  {}};
  auto orgs = org_ids(s);
  call.actor = g.chance(0.92) ? g.pick(orgs) : OrgId{"o-missing"};
  auto socials = social_ids(s);
  Condition cond = random_condition(g, orgs, socials);
  auto unit_id = [&] {
    return DataId{"d" + std::to_string(1 + g.index(max_units))};
  };
  auto rule_id = [&] {
    return RuleId{"r" + std::to_string(1 + g.index(max_rules))};
  };
  std::optional<std::string> purpose;
  if (g.chance(0.5)) purpose = g.pick(purpose_pool);

  switch (call.kind) {
    case OpKind::provide_data: {
      DataUnit d = random_unit(g, s, max_units);
      call.target = d.id.value;
      call.result = provide_data(s, call.actor, d, cond);
      break;
    }
    case OpKind::modify_data: {
      DataId id = unit_id();
      call.target = id.value;
      DataUnit d_new;
      d_new.id = id;
      if (auto it = s.units.find(id); it != s.units.end()) {
        d_new = it->second;
        if (g.chance(0.15)) d_new.payload = Payload::from_bytes("tampered");
        if (g.chance(0.1)) d_new.header.attributes.erase(Header::social_attribute);
      } else {
        d_new = random_unit(g, s, max_units);
        d_new.id = id;
      }
      call.result = modify_data(s, call.actor, id, d_new, cond);
      break;
    }
    case OpKind::stop_data: {
      DataId id = unit_id();
      call.target = id.value;
      call.result = stop_data(s, call.actor, id, cond);
      break;
    }
    case OpKind::use_data: {
      DataId id = unit_id();
      call.target = id.value;
      call.result = use_data(s, call.actor, id, cond, purpose);
      break;
    }
    case OpKind::provide_rule: {
      Rule r = random_rule(g, s, max_rules, max_units);
      if (g.chance(0.8)) r.issuer = call.actor;
      call.target = r.id.value;
      call.result = provide_rule(s, call.actor, r, cond);
      break;
    }
    case OpKind::modify_rule: {
      RuleId id = rule_id();
      call.target = id.value;
      Rule r_new = random_rule(g, s, max_rules, max_units);
      r_new.id = id;
      if (g.chance(0.8)) r_new.issuer = call.actor;
      call.result = modify_rule(s, call.actor, id, r_new, cond);
      break;
    }
    case OpKind::stop_rule: {
      RuleId id = rule_id();
      call.target = id.value;
      call.result = stop_rule(s, call.actor, id, cond);
      break;
    }
  }
  return call;
}

}  // namespace dspace::testing
