#include "dspace/operations.hpp"

#include "dspace/governance.hpp"

namespace dspace {

namespace {

OpResult fail(const DataSpaceState& state, ReasonCode reason) {
  OpResult r;
  r.ret = 0;
  r.reason = reason;
  r.state = state;
  r.state.clock += 1;  // failed attempts consume a clock tick too
  return r;
}

AutomatonState lifecycle_of(const DataSpaceState& state, const DataId& id) {
  auto it = state.lifecycle.find(id);
  return it == state.lifecycle.end() ? AutomatonState::q0 : it->second;
}

void advance_lifecycle(DataSpaceState& state, const DataId& id, OpKind kind,
                       const OrgId& actor) {
  state.lifecycle[id] =
      step(lifecycle_of(state, id), OpEvent{kind, actor, id.value, 1});
}

std::set<SocialMechId> credentials_of(const DataSpaceState& state,
                                      const OrgId& org) {
  auto it = state.orgs.find(org);
  return it == state.orgs.end() ? std::set<SocialMechId>{} : it->second.credentials;
}

// Structural admission of a data unit: header must satisfy the mandatory
// attribute contract (invalid-header) and every mechanism reference must
// resolve (unknown-id). Empty mechanism sets are a structural defect.
std::optional<ReasonCode> unit_problem(const DataSpaceState& state,
                                       const DataUnit& unit) {
  if (detail::header_problem(unit.header, state.socials, unit.id.value))
    return ReasonCode::invalid_header;
  if (unit.mechanisms.empty()) return ReasonCode::invalid_header;
  for (const auto& m : unit.mechanisms)
    if (!state.mechs.contains(m)) return ReasonCode::unknown_id;
  return std::nullopt;
}

}  // namespace

namespace detail {

RequestContext make_context(const DataSpaceState& state, const OrgId& actor,
                            const std::set<SocialMechId>& credentials,
                            const std::optional<DataId>& target,
                            const std::optional<std::string>& purpose) {
  RequestContext ctx;
  ctx.actor = actor;
  ctx.clock = state.clock;
  ctx.actor_credentials = credentials;
  ctx.purpose = purpose;
  if (target) {
    if (auto it = state.use_counts.find({actor, *target});
        it != state.use_counts.end())
      ctx.uses_so_far = it->second;
    if (auto unit = state.units.find(*target); unit != state.units.end()) {
      if (auto social = unit->second.header.social())
        ctx.subject_socials.insert(*social);
      if (auto prov = state.provider_of.find(*target);
          prov != state.provider_of.end())
        for (const auto& cred : credentials_of(state, prov->second))
          ctx.subject_socials.insert(cred);
    }
  }
  return ctx;
}

UseDecision decide_use(const DataSpaceState& state, const OrgId& actor,
                       const std::set<SocialMechId>& credentials,
                       const DataId& id, const Condition& cond_u,
                       const std::optional<std::string>& purpose) {
  if (!state.units.contains(id))
    return {0, ReasonCode::precedence_violation};
  RequestContext ctx = make_context(state, actor, credentials, id, purpose);
  if (!compatible(state.provisions.at(id), cond_u, ctx))
    return {0, ReasonCode::incompatible};
  // Usage requires an affirmative permit: no applicable rule means deny.
  if (evaluate(state, OpKind::use_data, actor, id, ctx) != Decision::permitted)
    return {0, ReasonCode::rule_denied};
  return {1, ReasonCode::ok};
}

}  // namespace detail

OpResult provide_data(const DataSpaceState& state, const OrgId& actor,
                      const DataUnit& unit, const Condition& cond) {
  if (!state.orgs.contains(actor)) return fail(state, ReasonCode::unknown_id);
  if (state.units.contains(unit.id))
    return fail(state, ReasonCode::duplicate_id);
  if (auto problem = unit_problem(state, unit)) return fail(state, *problem);
  // A stopped id may only be re-provided by its original provider.
  if (auto prev = state.provider_of.find(unit.id);
      prev != state.provider_of.end() && prev->second != actor)
    return fail(state, ReasonCode::not_provider);
  RequestContext ctx = detail::make_context(
      state, actor, credentials_of(state, actor), unit.id, std::nullopt);
  if (evaluate(state, OpKind::provide_data, actor, unit.id, ctx) ==
      Decision::denied)
    return fail(state, ReasonCode::rule_denied);

  OpResult r;
  r.ret = 1;
  r.state = state;
  r.state.clock += 1;
  r.state.units.emplace(unit.id, unit);
  r.state.provisions[unit.id] = cond;
  r.state.provider_of[unit.id] = actor;
  advance_lifecycle(r.state, unit.id, OpKind::provide_data, actor);
  return r;
}

OpResult modify_data(const DataSpaceState& state, const OrgId& actor,
                     const DataId& id, const DataUnit& d_new,
                     const Condition& cond) {
  if (!state.orgs.contains(actor)) return fail(state, ReasonCode::unknown_id);
  auto it = state.units.find(id);
  if (it == state.units.end()) return fail(state, ReasonCode::unknown_id);
  if (state.provider_of.at(id) != actor)
    return fail(state, ReasonCode::not_provider);
  if (d_new.id != id) return fail(state, ReasonCode::invalid_header);
  // Content immutability: modification reaches conditions, header, and
  // mechanisms only.
  if (d_new.payload != it->second.payload)
    return fail(state, ReasonCode::invalid_header);
  if (auto problem = unit_problem(state, d_new)) return fail(state, *problem);
  RequestContext ctx = detail::make_context(
      state, actor, credentials_of(state, actor), id, std::nullopt);
  if (evaluate(state, OpKind::modify_data, actor, id, ctx) == Decision::denied)
    return fail(state, ReasonCode::rule_denied);

  OpResult r;
  r.ret = 1;
  r.state = state;
  r.state.clock += 1;
  r.state.units[id] = d_new;
  r.state.provisions[id] = cond;
  advance_lifecycle(r.state, id, OpKind::modify_data, actor);
  return r;
}

OpResult stop_data(const DataSpaceState& state, const OrgId& actor,
                   const DataId& id, const Condition& cond) {
  (void)cond;
  if (!state.orgs.contains(actor)) return fail(state, ReasonCode::unknown_id);
  if (!state.units.contains(id)) return fail(state, ReasonCode::unknown_id);
  if (state.provider_of.at(id) != actor)
    return fail(state, ReasonCode::not_provider);
  RequestContext ctx = detail::make_context(
      state, actor, credentials_of(state, actor), id, std::nullopt);
  if (evaluate(state, OpKind::stop_data, actor, id, ctx) == Decision::denied)
    return fail(state, ReasonCode::rule_denied);

  OpResult r;
  r.ret = 1;
  r.state = state;
  r.state.clock += 1;
  r.state.units.erase(id);
  r.state.provisions.erase(id);
  // provider_of, lifecycle, and use counters stay behind as the audit trail.
  advance_lifecycle(r.state, id, OpKind::stop_data, actor);
  return r;
}

OpResult use_data(const DataSpaceState& state, const OrgId& actor,
                  const DataId& id, const Condition& cond_u,
                  const std::optional<std::string>& purpose) {
  if (!state.orgs.contains(actor)) return fail(state, ReasonCode::unknown_id);
  auto decision = detail::decide_use(state, actor, credentials_of(state, actor),
                                     id, cond_u, purpose);
  if (decision.ret != 1) return fail(state, decision.reason);

  OpResult r;
  r.ret = 1;
  r.state = state;
  r.state.clock += 1;
  r.state.use_counts[{actor, id}] += 1;
  advance_lifecycle(r.state, id, OpKind::use_data, actor);
  return r;
}

}  // namespace dspace
