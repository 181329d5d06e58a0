#include "dspace/governance.hpp"

namespace dspace {

namespace {

OpResult fail(const DataSpaceState& state, ReasonCode reason) {
  OpResult r;
  r.ret = 0;
  r.reason = reason;
  r.state = state;
  r.state.clock += 1;
  return r;
}

std::set<SocialMechId> credentials_of(const DataSpaceState& state,
                                      const OrgId& org) {
  auto it = state.orgs.find(org);
  return it == state.orgs.end() ? std::set<SocialMechId>{} : it->second.credentials;
}

// Dangling references inside a rule definition. Selector data filters may
// name historical (stopped) units.
std::optional<ReasonCode> rule_problem(const DataSpaceState& state,
                                       const Rule& rule) {
  if (rule.selector.op_kinds.empty()) return ReasonCode::invalid_header;
  if (!state.socials.contains(rule.social)) return ReasonCode::unknown_id;
  if (rule.selector.data)
    for (const auto& d : *rule.selector.data)
      if (!state.units.contains(d) && !state.provider_of.contains(d))
        return ReasonCode::unknown_id;
  if (rule.selector.actors)
    for (const auto& a : *rule.selector.actors)
      if (!state.orgs.contains(a)) return ReasonCode::unknown_id;
  return std::nullopt;
}

bool selector_covers_unit(const OperationSelector& sel, const DataId& id) {
  return !sel.data || sel.data->contains(id);
}

// Rules that affirmatively permit usage of a unit, with any actor scope.
bool permits_use_of(const Rule& rule, const DataId& id) {
  return rule.effect == RuleEffect::permit &&
         rule.selector.op_kinds.contains(OpKind::use_data) &&
         selector_covers_unit(rule.selector, id);
}

}  // namespace

std::string to_string(RuleEffect e) {
  return e == RuleEffect::permit ? "permit" : "deny";
}

bool rule_effect_from_string(const std::string& s, RuleEffect& out) {
  if (s == "permit") out = RuleEffect::permit;
  else if (s == "deny") out = RuleEffect::deny;
  else return false;
  return true;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::permitted: return "permitted";
    case Decision::denied: return "denied";
    case Decision::no_applicable_rule: return "no-applicable-rule";
  }
  return "?";
}

Decision evaluate(const DataSpaceState& state, OpKind op, const OrgId& actor,
                  const std::optional<DataId>& target,
                  const RequestContext& ctx) {
  bool permit = false;
  bool deny = false;
  for (const auto& [id, rule] : state.rules) {
    (void)id;
    if (!rule.selector.matches(op, target, actor)) continue;
    if (!satisfies(rule.guard, ctx)) continue;
    (rule.effect == RuleEffect::deny ? deny : permit) = true;
  }
  if (deny) return Decision::denied;
  if (permit) return Decision::permitted;
  return Decision::no_applicable_rule;
}

OpResult provide_rule(const DataSpaceState& state, const OrgId& actor,
                      const Rule& rule, const Condition& cond) {
  (void)cond;  // call condition carried but given no semantics
  if (!state.orgs.contains(actor)) return fail(state, ReasonCode::unknown_id);
  if (state.rules.contains(rule.id))
    return fail(state, ReasonCode::duplicate_id);
  if (rule.issuer != actor) return fail(state, ReasonCode::not_issuer);
  if (auto problem = rule_problem(state, rule)) return fail(state, *problem);
  RequestContext ctx = detail::make_context(
      state, actor, credentials_of(state, actor), std::nullopt, std::nullopt);
  if (evaluate(state, OpKind::provide_rule, actor, std::nullopt, ctx) ==
      Decision::denied)
    return fail(state, ReasonCode::rule_denied);

  OpResult r;
  r.ret = 1;
  r.state = state;
  r.state.clock += 1;
  r.state.rules.emplace(rule.id, rule);
  r.state.issuer_of[rule.id] = actor;
  // Establishing a rule advances every selector-matched unit's lifecycle
  // (q1 -> q2; other states self-loop).
  for (const auto& [id, unit] : state.units) {
    (void)unit;
    if (!selector_covers_unit(rule.selector, id)) continue;
    r.state.lifecycle[id] = step(r.state.lifecycle.contains(id)
                                     ? r.state.lifecycle.at(id)
                                     : AutomatonState::q0,
                                 OpEvent{OpKind::provide_rule, actor,
                                         rule.id.value, 1});
    r.rule_scope.push_back(id);
  }
  return r;
}

OpResult modify_rule(const DataSpaceState& state, const OrgId& actor,
                     const RuleId& id, const Rule& r_new,
                     const Condition& cond) {
  (void)cond;
  if (!state.orgs.contains(actor)) return fail(state, ReasonCode::unknown_id);
  if (!state.rules.contains(id)) return fail(state, ReasonCode::unknown_id);
  if (state.issuer_of.at(id) != actor)
    return fail(state, ReasonCode::not_issuer);
  if (r_new.id != id) return fail(state, ReasonCode::invalid_header);
  if (r_new.issuer != actor) return fail(state, ReasonCode::not_issuer);
  if (auto problem = rule_problem(state, r_new)) return fail(state, *problem);
  RequestContext ctx = detail::make_context(
      state, actor, credentials_of(state, actor), std::nullopt, std::nullopt);
  if (evaluate(state, OpKind::modify_rule, actor, std::nullopt, ctx) ==
      Decision::denied)
    return fail(state, ReasonCode::rule_denied);

  OpResult r;
  r.ret = 1;
  r.state = state;
  r.state.clock += 1;
  r.state.rules[id] = r_new;
  // Rule modification has no lifecycle transition.
  return r;
}

OpResult stop_rule(const DataSpaceState& state, const OrgId& actor,
                   const RuleId& id, const Condition& cond) {
  (void)cond;
  if (!state.orgs.contains(actor)) return fail(state, ReasonCode::unknown_id);
  auto it = state.rules.find(id);
  if (it == state.rules.end()) return fail(state, ReasonCode::unknown_id);
  if (state.issuer_of.at(id) != actor)
    return fail(state, ReasonCode::not_issuer);
  RequestContext ctx = detail::make_context(
      state, actor, credentials_of(state, actor), std::nullopt, std::nullopt);
  if (evaluate(state, OpKind::stop_rule, actor, std::nullopt, ctx) ==
      Decision::denied)
    return fail(state, ReasonCode::rule_denied);

  const Rule stopped = it->second;
  OpResult r;
  r.ret = 1;
  r.state = state;
  r.state.clock += 1;
  r.state.rules.erase(id);
  r.state.issuer_of.erase(id);
  // Units whose only permitting rule disappeared: q_mod -> q_stop (other
  // states self-loop under the automaton).
  for (const auto& [unit_id, unit] : state.units) {
    (void)unit;
    if (!permits_use_of(stopped, unit_id)) continue;
    bool another_permit = false;
    for (const auto& [other_id, other] : r.state.rules) {
      (void)other_id;
      if (permits_use_of(other, unit_id)) {
        another_permit = true;
        break;
      }
    }
    if (another_permit) continue;
    r.state.lifecycle[unit_id] =
        step(r.state.lifecycle.contains(unit_id) ? r.state.lifecycle.at(unit_id)
                                                 : AutomatonState::q0,
             OpEvent{OpKind::stop_rule, actor, id.value, 1});
    r.rule_scope.push_back(unit_id);
  }
  return r;
}

bool check_precedence(std::span<const TraceEvent> history,
                      const OpCall& proposed) {
  // Active provisions implied by the history's successful events.
  std::map<std::string, OrgId> provided;
  for (const auto& e : history) {
    if (e.ret != 1) continue;
    if (e.op == OpKind::provide_data) provided[e.target] = e.actor;
    else if (e.op == OpKind::stop_data) provided.erase(e.target);
  }
  switch (proposed.kind) {
    case OpKind::use_data:
      return provided.contains(proposed.target);
    case OpKind::modify_data:
    case OpKind::stop_data: {
      auto it = provided.find(proposed.target);
      return it != provided.end() && it->second == proposed.actor;
    }
    default:
      return true;  // no precedence constraint on the remaining operations
  }
}

}  // namespace dspace
