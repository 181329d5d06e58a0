#include "dspace/refinement.hpp"

#include <algorithm>
#include <sstream>

#include "dspace/errors.hpp"
#include "dspace/hash.hpp"
#include "json_codec.hpp"

namespace dspace {

namespace {

template <class T>
bool subset(const std::set<T>& inner, const std::set<T>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

template <class IdT>
std::set<IdT> mapped_or_self(const std::map<IdT, std::set<IdT>>& m,
                             const IdT& id) {
  auto it = m.find(id);
  if (it == m.end()) return {id};
  return it->second;
}

template <class IdT>
IdT representative(const std::map<IdT, std::set<IdT>>& m, const IdT& id) {
  auto it = m.find(id);
  if (it == m.end() || it->second.empty()) return id;
  return *it->second.begin();  // canonically first child
}

// ---- union properties ------------------------------------------------------

std::optional<std::string> org_union_problem(
    const Organization& parent, const std::vector<Organization>& children) {
  std::set<RoleTag> roles;
  std::set<SocialMechId> creds;
  for (const auto& c : children) {
    roles.insert(c.roles.begin(), c.roles.end());
    creds.insert(c.credentials.begin(), c.credentials.end());
  }
  if (!subset(parent.roles, roles))
    return "children do not cover the roles of organization " + parent.id.value;
  if (!subset(parent.credentials, creds))
    return "children do not cover the credentials of organization " +
           parent.id.value;
  return std::nullopt;
}

std::optional<std::string> mech_union_problem(
    const DataProvisionMechanism& parent,
    const std::vector<DataProvisionMechanism>& children) {
  for (const auto& c : children)
    if (c.kind == parent.kind) return std::nullopt;
  return "children do not cover capability tag '" + to_string(parent.kind) +
         "' of mechanism " + parent.id.value;
}

std::optional<std::string> social_union_problem(
    const SocialMechanism& parent,
    const std::vector<SocialMechanism>& children) {
  for (const auto& c : children)
    if (c.kind == parent.kind) return std::nullopt;
  return "children do not cover capability tag '" + parent.kind +
         "' of social mechanism " + parent.id.value;
}

// Children must inherit the mandatory social attribute and partition the
// parent's payload bytes (concatenated in canonical child-id order).
std::optional<std::string> data_union_problem(
    const DataUnit& parent, const std::vector<DataUnit>& children,
    const DataSpaceState& refined) {
  auto parent_social = parent.header.social();
  if (!parent_social)
    return "parent unit " + parent.id.value + " has no social attribute";
  for (const auto& c : children) {
    auto social = c.header.social();
    if (!social || *social != *parent_social)
      return "child " + c.id.value +
             " does not inherit the social attribute of " + parent.id.value;
    if (c.mechanisms.empty())
      return "child " + c.id.value + " has an empty mechanism set";
    for (const auto& m : c.mechanisms)
      if (!refined.mechs.contains(m))
        return "child " + c.id.value + " references unknown mechanism " +
               m.value;
    if (!c.payload.inline_bytes)
      return "child " + c.id.value +
             " has no inline payload bytes; partition is unverifiable";
    if (c.payload.content_hash != digest(*c.payload.inline_bytes))
      return "child " + c.id.value + " payload hash does not match its bytes";
  }
  if (!parent.payload.inline_bytes)
    return "parent unit " + parent.id.value +
           " has no inline payload bytes; partition is unverifiable";

  std::vector<const DataUnit*> ordered;
  for (const auto& c : children) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(),
            [](const DataUnit* a, const DataUnit* b) { return a->id < b->id; });
  std::string combined;
  for (const auto* c : ordered) combined += *c->payload.inline_bytes;
  if (combined != *parent.payload.inline_bytes)
    return "children payloads do not partition the content of " +
           parent.id.value;
  return std::nullopt;
}

// ---- reference re-targeting ------------------------------------------------

void retarget_social_refs(DataSpaceState& s, const SocialMechId& parent,
                          const std::set<SocialMechId>& children) {
  const SocialMechId rep = *children.begin();
  for (auto& [id, org] : s.orgs) {
    (void)id;
    if (org.credentials.erase(parent))
      org.credentials.insert(children.begin(), children.end());
  }
  for (auto& [id, unit] : s.units) {
    (void)id;
    if (auto social = unit.header.social(); social && *social == parent)
      unit.header.set_social(rep);
  }
  for (auto& [id, rule] : s.rules) {
    (void)id;
    if (rule.social == parent) rule.social = rep;
    if (rule.guard.required_social && *rule.guard.required_social == parent)
      rule.guard.required_social = rep;
  }
  for (auto& [id, cond] : s.provisions) {
    (void)id;
    if (cond.required_social && *cond.required_social == parent)
      cond.required_social = rep;
  }
}

void retarget_org_refs(DataSpaceState& s, const OrgId& parent,
                       const std::set<OrgId>& children) {
  const OrgId rep = *children.begin();
  for (auto& [id, org] : s.provider_of) {
    (void)id;
    if (org == parent) org = rep;
  }
  for (auto& [id, org] : s.issuer_of) {
    (void)id;
    if (org == parent) org = rep;
  }
  for (auto& [id, rule] : s.rules) {
    (void)id;
    if (rule.issuer == parent) rule.issuer = rep;
    if (rule.selector.actors && rule.selector.actors->erase(parent))
      rule.selector.actors->insert(children.begin(), children.end());
    if (rule.guard.allowed_orgs && rule.guard.allowed_orgs->erase(parent))
      rule.guard.allowed_orgs->insert(children.begin(), children.end());
  }
  for (auto& [id, cond] : s.provisions) {
    (void)id;
    if (cond.allowed_orgs && cond.allowed_orgs->erase(parent))
      cond.allowed_orgs->insert(children.begin(), children.end());
  }
  std::map<std::pair<OrgId, DataId>, std::uint64_t> counts;
  for (const auto& [key, n] : s.use_counts) {
    if (key.first == parent)
      counts[{rep, key.second}] += n;
    else
      counts[key] += n;
  }
  s.use_counts = std::move(counts);
}

template <class IdT, class ElementT>
void check_child_ids(const std::map<IdT, ElementT>& existing, const IdT& parent,
                     const std::vector<IdT>& child_ids) {
  if (child_ids.empty()) throw UnionViolation("decomposition has no children");
  std::set<IdT> seen;
  for (const auto& id : child_ids) {
    if (!seen.insert(id).second)
      throw UnionViolation("duplicate child id " + id.value);
    if (id != parent && existing.contains(id))
      throw UnionViolation("child id " + id.value +
                           " collides with an existing element");
  }
}

}  // namespace

std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::organization: return "organization";
    case ComponentKind::mechanism: return "mechanism";
    case ComponentKind::data_unit: return "data-unit";
    case ComponentKind::social: return "social";
  }
  return "?";
}

RefinedSpacePair decompose_data(const DataSpaceState& state,
                                const DataId& parent,
                                const std::vector<DataUnit>& children) {
  auto it = state.units.find(parent);
  if (it == state.units.end()) throw DanglingReference(parent.value);
  std::vector<DataId> ids;
  for (const auto& c : children) ids.push_back(c.id);
  check_child_ids(state.units, parent, ids);
  if (auto problem = data_union_problem(it->second, children, state))
    throw UnionViolation(*problem);

  RefinedSpacePair pair;
  pair.abstract_space = state;
  DataSpaceState refined = state;

  const Condition provision = refined.provisions.at(parent);
  const OrgId provider = refined.provider_of.at(parent);
  const AutomatonState life = refined.lifecycle.at(parent);

  refined.units.erase(parent);
  refined.provisions.erase(parent);
  refined.provider_of.erase(parent);
  refined.lifecycle.erase(parent);
  std::map<OrgId, std::uint64_t> parent_counts;
  for (auto count = refined.use_counts.begin();
       count != refined.use_counts.end();) {
    if (count->first.second == parent) {
      parent_counts[count->first.first] = count->second;
      count = refined.use_counts.erase(count);
    } else {
      ++count;
    }
  }

  std::set<DataId> child_ids(ids.begin(), ids.end());
  for (const auto& c : children) {
    refined.units.emplace(c.id, c);
    refined.provisions[c.id] = provision;
    refined.provider_of[c.id] = provider;
    refined.lifecycle[c.id] = life;
    for (const auto& [org, n] : parent_counts)
      refined.use_counts[{org, c.id}] = n;
  }
  for (auto& [id, rule] : refined.rules) {
    (void)id;
    if (rule.selector.data && rule.selector.data->erase(parent))
      rule.selector.data->insert(child_ids.begin(), child_ids.end());
  }

  pair.refined_space = std::move(refined);
  pair.mapping.data[parent] = child_ids;
  return pair;
}

RefinedSpacePair decompose_mech(
    const DataSpaceState& state, const MechId& parent,
    const std::vector<DataProvisionMechanism>& children) {
  auto it = state.mechs.find(parent);
  if (it == state.mechs.end()) throw DanglingReference(parent.value);
  std::vector<MechId> ids;
  for (const auto& c : children) ids.push_back(c.id);
  check_child_ids(state.mechs, parent, ids);
  if (auto problem = mech_union_problem(it->second, children))
    throw UnionViolation(*problem);

  RefinedSpacePair pair;
  pair.abstract_space = state;
  DataSpaceState refined = state;
  refined.mechs.erase(parent);
  std::set<MechId> child_ids(ids.begin(), ids.end());
  for (const auto& c : children) refined.mechs.emplace(c.id, c);
  for (auto& [id, unit] : refined.units) {
    (void)id;
    if (unit.mechanisms.erase(parent))
      unit.mechanisms.insert(child_ids.begin(), child_ids.end());
  }
  pair.refined_space = std::move(refined);
  pair.mapping.mechs[parent] = child_ids;
  return pair;
}

RefinedSpacePair decompose_social(const DataSpaceState& state,
                                  const SocialMechId& parent,
                                  const std::vector<SocialMechanism>& children) {
  auto it = state.socials.find(parent);
  if (it == state.socials.end()) throw DanglingReference(parent.value);
  std::vector<SocialMechId> ids;
  for (const auto& c : children) ids.push_back(c.id);
  check_child_ids(state.socials, parent, ids);
  if (auto problem = social_union_problem(it->second, children))
    throw UnionViolation(*problem);

  RefinedSpacePair pair;
  pair.abstract_space = state;
  DataSpaceState refined = state;
  refined.socials.erase(parent);
  std::set<SocialMechId> child_ids(ids.begin(), ids.end());
  for (const auto& c : children) refined.socials.emplace(c.id, c);
  retarget_social_refs(refined, parent, child_ids);
  pair.refined_space = std::move(refined);
  pair.mapping.socials[parent] = child_ids;
  return pair;
}

RefinedSpacePair decompose_org(const DataSpaceState& state, const OrgId& parent,
                               const std::vector<Organization>& children) {
  auto it = state.orgs.find(parent);
  if (it == state.orgs.end()) throw DanglingReference(parent.value);
  std::vector<OrgId> ids;
  for (const auto& c : children) ids.push_back(c.id);
  check_child_ids(state.orgs, parent, ids);
  if (auto problem = org_union_problem(it->second, children))
    throw UnionViolation(*problem);
  for (const auto& c : children)
    for (const auto& cred : c.credentials)
      if (!state.socials.contains(cred)) throw DanglingReference(cred.value);

  RefinedSpacePair pair;
  pair.abstract_space = state;
  DataSpaceState refined = state;
  refined.orgs.erase(parent);
  std::set<OrgId> child_ids(ids.begin(), ids.end());
  for (const auto& c : children) refined.orgs.emplace(c.id, c);
  retarget_org_refs(refined, parent, child_ids);
  pair.refined_space = std::move(refined);
  pair.mapping.orgs[parent] = child_ids;
  return pair;
}

namespace {

template <class IdT>
std::map<IdT, std::set<IdT>> compose(const std::map<IdT, std::set<IdT>>& first,
                                     const std::map<IdT, std::set<IdT>>& second) {
  std::map<IdT, std::set<IdT>> out;
  for (const auto& [parent, mids] : first) {
    std::set<IdT> result;
    for (const auto& mid : mids) {
      auto mapped = mapped_or_self(second, mid);
      result.insert(mapped.begin(), mapped.end());
    }
    out[parent] = std::move(result);
  }
  for (const auto& [parent, kids] : second)
    if (!out.contains(parent)) out[parent] = kids;
  return out;
}

}  // namespace

RefinedSpacePair chain(const RefinedSpacePair& first,
                       const RefinedSpacePair& second) {
  if (!(first.refined_space == second.abstract_space))
    throw TranslationFailure("stages do not compose: intermediate spaces differ");
  RefinedSpacePair out;
  out.abstract_space = first.abstract_space;
  out.refined_space = second.refined_space;
  out.mapping.orgs = compose(first.mapping.orgs, second.mapping.orgs);
  out.mapping.mechs = compose(first.mapping.mechs, second.mapping.mechs);
  out.mapping.data = compose(first.mapping.data, second.mapping.data);
  out.mapping.socials = compose(first.mapping.socials, second.mapping.socials);
  return out;
}

namespace {

// ---- translation -----------------------------------------------------------

Condition translate_condition(const Condition& c, const ElementMapping& m) {
  Condition out = c;
  if (out.allowed_orgs) {
    std::set<OrgId> orgs;
    for (const auto& o : *out.allowed_orgs) {
      auto mapped = mapped_or_self(m.orgs, o);
      orgs.insert(mapped.begin(), mapped.end());
    }
    out.allowed_orgs = std::move(orgs);
  }
  if (out.required_social)
    out.required_social = representative(m.socials, *out.required_social);
  return out;
}

Header translate_header(const Header& h, const ElementMapping& m) {
  Header out = h;
  if (auto social = out.social())
    out.set_social(representative(m.socials, *social));
  return out;
}

std::set<MechId> translate_mechs(const std::set<MechId>& mechs,
                                 const ElementMapping& m) {
  std::set<MechId> out;
  for (const auto& mech : mechs) {
    auto mapped = mapped_or_self(m.mechs, mech);
    out.insert(mapped.begin(), mapped.end());
  }
  return out;
}

Rule translate_rule(const Rule& r, const ElementMapping& m) {
  Rule out = r;
  out.issuer = representative(m.orgs, out.issuer);
  out.social = representative(m.socials, out.social);
  out.guard = translate_condition(out.guard, m);
  if (out.selector.data) {
    std::set<DataId> data;
    for (const auto& d : *out.selector.data) {
      auto mapped = mapped_or_self(m.data, d);
      data.insert(mapped.begin(), mapped.end());
    }
    out.selector.data = std::move(data);
  }
  if (out.selector.actors) {
    std::set<OrgId> actors;
    for (const auto& a : *out.selector.actors) {
      auto mapped = mapped_or_self(m.orgs, a);
      actors.insert(mapped.begin(), mapped.end());
    }
    out.selector.actors = std::move(actors);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Step>> translate_steps(std::span<const Step> steps,
                                               const ElementMapping& mapping,
                                               const DataSpaceState& refined) {
  (void)refined;
  std::vector<std::vector<Step>> groups;
  for (const auto& step : steps) {
    std::vector<Step> group;
    std::visit(
        [&](const auto& call) {
          using T = std::decay_t<decltype(call)>;
          if constexpr (std::is_same_v<T, ProvideDataStep>) {
            if (mapping.data.contains(call.unit.id))
              throw TranslationFailure(
                  "cannot provide decomposed unit " + call.unit.id.value +
                  ": the mapping carries no child payload partition");
            ProvideDataStep t = call;
            t.actor = representative(mapping.orgs, t.actor);
            t.unit.header = translate_header(t.unit.header, mapping);
            t.unit.mechanisms = translate_mechs(t.unit.mechanisms, mapping);
            t.cond = translate_condition(t.cond, mapping);
            group.push_back(Step{std::move(t), std::nullopt});
          } else if constexpr (std::is_same_v<T, ModifyDataStep>) {
            for (const auto& child : mapped_or_self(mapping.data, call.id)) {
              ModifyDataStep t = call;
              t.actor = representative(mapping.orgs, t.actor);
              t.id = child;
              if (t.header) t.header = translate_header(*t.header, mapping);
              if (t.mechanisms)
                t.mechanisms = translate_mechs(*t.mechanisms, mapping);
              t.cond = translate_condition(t.cond, mapping);
              group.push_back(Step{std::move(t), std::nullopt});
            }
          } else if constexpr (std::is_same_v<T, StopDataStep>) {
            for (const auto& child : mapped_or_self(mapping.data, call.id)) {
              StopDataStep t = call;
              t.actor = representative(mapping.orgs, t.actor);
              t.id = child;
              t.cond = translate_condition(t.cond, mapping);
              group.push_back(Step{std::move(t), std::nullopt});
            }
          } else if constexpr (std::is_same_v<T, UseDataStep>) {
            for (const auto& child : mapped_or_self(mapping.data, call.id)) {
              UseDataStep t = call;
              t.actor = representative(mapping.orgs, t.actor);
              t.id = child;
              t.cond = translate_condition(t.cond, mapping);
              group.push_back(Step{std::move(t), std::nullopt});
            }
          } else if constexpr (std::is_same_v<T, ProvideRuleStep>) {
            ProvideRuleStep t = call;
            t.actor = representative(mapping.orgs, t.actor);
            t.rule = translate_rule(t.rule, mapping);
            t.cond = translate_condition(t.cond, mapping);
            group.push_back(Step{std::move(t), std::nullopt});
          } else if constexpr (std::is_same_v<T, ModifyRuleStep>) {
            ModifyRuleStep t = call;
            t.actor = representative(mapping.orgs, t.actor);
            t.rule = translate_rule(t.rule, mapping);
            t.cond = translate_condition(t.cond, mapping);
            group.push_back(Step{std::move(t), std::nullopt});
          } else {
            StopRuleStep t = call;
            t.actor = representative(mapping.orgs, t.actor);
            t.cond = translate_condition(t.cond, mapping);
            group.push_back(Step{std::move(t), std::nullopt});
          }
        },
        step.call);
    groups.push_back(std::move(group));
  }
  return groups;
}

namespace {

// Structural verification of a pair (the same union properties decompose
// enforces), for pairs that arrive from files or tests rather than through
// decompose(). Mechanism kinds are invisible to engine behavior, so losing a
// capability tag can only be caught here.
std::vector<Counterexample> verify_mapping_structure(
    const RefinedSpacePair& pair) {
  std::vector<Counterexample> out;
  const auto& a = pair.abstract_space;
  const auto& r = pair.refined_space;
  auto structural = [&](const std::string& element, std::string detail) {
    Counterexample ce;
    ce.kind = "structural";
    ce.scenario = element;
    ce.detail = std::move(detail);
    out.push_back(std::move(ce));
  };

  for (const auto& [parent, kids] : pair.mapping.orgs) {
    auto it = a.orgs.find(parent);
    if (it == a.orgs.end()) {
      structural(parent.value, "mapped organization missing from abstract space");
      continue;
    }
    std::vector<Organization> children;
    bool missing = false;
    for (const auto& kid : kids) {
      auto k = r.orgs.find(kid);
      if (k == r.orgs.end()) {
        structural(kid.value, "mapped child organization missing from refined space");
        missing = true;
        break;
      }
      children.push_back(k->second);
    }
    if (missing || children.empty()) {
      if (children.empty() && !missing)
        structural(parent.value, "organization maps to no children");
      continue;
    }
    if (auto problem = org_union_problem(it->second, children))
      structural(parent.value, *problem);
  }

  for (const auto& [parent, kids] : pair.mapping.mechs) {
    auto it = a.mechs.find(parent);
    if (it == a.mechs.end()) {
      structural(parent.value, "mapped mechanism missing from abstract space");
      continue;
    }
    std::vector<DataProvisionMechanism> children;
    bool missing = false;
    for (const auto& kid : kids) {
      auto k = r.mechs.find(kid);
      if (k == r.mechs.end()) {
        structural(kid.value, "mapped child mechanism missing from refined space");
        missing = true;
        break;
      }
      children.push_back(k->second);
    }
    if (missing || children.empty()) {
      if (children.empty() && !missing)
        structural(parent.value, "mechanism maps to no children");
      continue;
    }
    if (auto problem = mech_union_problem(it->second, children))
      structural(parent.value, *problem);
  }

  for (const auto& [parent, kids] : pair.mapping.socials) {
    auto it = a.socials.find(parent);
    if (it == a.socials.end()) {
      structural(parent.value, "mapped social missing from abstract space");
      continue;
    }
    std::vector<SocialMechanism> children;
    bool missing = false;
    for (const auto& kid : kids) {
      auto k = r.socials.find(kid);
      if (k == r.socials.end()) {
        structural(kid.value, "mapped child social missing from refined space");
        missing = true;
        break;
      }
      children.push_back(k->second);
    }
    if (missing || children.empty()) {
      if (children.empty() && !missing)
        structural(parent.value, "social maps to no children");
      continue;
    }
    if (auto problem = social_union_problem(it->second, children))
      structural(parent.value, *problem);
  }

  for (const auto& [parent, kids] : pair.mapping.data) {
    auto it = a.units.find(parent);
    if (it == a.units.end()) {
      structural(parent.value, "mapped data unit missing from abstract space");
      continue;
    }
    std::vector<DataUnit> children;
    bool missing = false;
    for (const auto& kid : kids) {
      auto k = r.units.find(kid);
      if (k == r.units.end()) {
        structural(kid.value, "mapped child unit missing from refined space");
        missing = true;
        break;
      }
      children.push_back(k->second);
    }
    if (missing || children.empty()) {
      if (children.empty() && !missing)
        structural(parent.value, "data unit maps to no children");
      continue;
    }
    if (auto problem = data_union_problem(it->second, children, r))
      structural(parent.value, *problem);
  }

  // Undecomposed elements map to themselves and must survive refinement.
  for (const auto& [id, org] : a.orgs) {
    (void)org;
    if (!pair.mapping.orgs.contains(id) && !r.orgs.contains(id))
      structural(id.value, "undecomposed organization missing from refined space");
  }
  for (const auto& [id, mech] : a.mechs) {
    (void)mech;
    if (!pair.mapping.mechs.contains(id) && !r.mechs.contains(id))
      structural(id.value, "undecomposed mechanism missing from refined space");
  }
  for (const auto& [id, social] : a.socials) {
    (void)social;
    if (!pair.mapping.socials.contains(id) && !r.socials.contains(id))
      structural(id.value, "undecomposed social missing from refined space");
  }
  for (const auto& [id, unit] : a.units) {
    (void)unit;
    if (!pair.mapping.data.contains(id) && !r.units.contains(id))
      structural(id.value, "undecomposed data unit missing from refined space");
  }
  return out;
}

DataSpaceState with_declarations(const DataSpaceState& base,
                                 const Scenario& s,
                                 const ElementMapping* mapping) {
  DataSpaceState out = base;
  for (const auto& social : s.socials)
    if (!out.socials.contains(social.id)) out.socials.emplace(social.id, social);
  for (const auto& mech : s.mechs)
    if (!out.mechs.contains(mech.id)) out.mechs.emplace(mech.id, mech);
  for (auto org : s.orgs) {
    if (mapping) {
      std::set<SocialMechId> creds;
      for (const auto& c : org.credentials) {
        auto mapped = mapped_or_self(mapping->socials, c);
        creds.insert(mapped.begin(), mapped.end());
      }
      org.credentials = std::move(creds);
    }
    if (!out.orgs.contains(org.id)) out.orgs.emplace(org.id, org);
  }
  return out;
}

}  // namespace

PreservationReport check_constraint_preserving(const RefinedSpacePair& pair,
                                               std::span<const Scenario> suite) {
  PreservationReport report;
  report.counterexamples = verify_mapping_structure(pair);

  for (const auto& scenario : suite) {
    DataSpaceState abstract_state =
        with_declarations(pair.abstract_space, scenario, nullptr);
    DataSpaceState refined_state =
        with_declarations(pair.refined_space, scenario, &pair.mapping);

    auto groups =
        translate_steps(scenario.steps, pair.mapping, pair.refined_space);

    std::vector<TraceEvent> abstract_trace;
    std::vector<TraceEvent> refined_trace;
    std::optional<Counterexample> divergence;

    for (std::size_t i = 0; i < scenario.steps.size(); ++i) {
      const Step& astep = scenario.steps[i];
      std::uint64_t at = abstract_state.clock;
      OpResult ares = apply_step(abstract_state, astep);
      abstract_trace.push_back(TraceEvent{at, step_kind(astep),
                                          step_actor(astep), step_target(astep),
                                          ares.ret, ares.reason, "",
                                          ares.rule_scope});
      abstract_state = std::move(ares.state);

      int conj = 1;
      std::string failed_child;
      ReasonCode failed_reason = ReasonCode::ok;
      for (const Step& rstep : groups[i]) {
        std::uint64_t rt = refined_state.clock;
        OpResult rres = apply_step(refined_state, rstep);
        refined_trace.push_back(
            TraceEvent{rt, step_kind(rstep), step_actor(rstep),
                       step_target(rstep), rres.ret, rres.reason, "",
                       rres.rule_scope});
        if (rres.ret == 0 && conj == 1) {
          conj = 0;
          failed_child = step_target(rstep);
          failed_reason = rres.reason;
        }
        refined_state = std::move(rres.state);
      }

      if (!divergence && ares.ret != conj) {
        Counterexample ce;
        ce.kind = "behavioral";
        ce.scenario = scenario.name;
        std::ostringstream detail;
        detail << "step " << i << " " << to_string(step_kind(astep)) << "("
               << step_target(astep) << "): abstract ret=" << ares.ret
               << ", refined ret=" << conj;
        if (conj == 0 && ares.ret == 1)
          detail << " (child " << failed_child << ": "
                 << to_string(failed_reason) << ")";
        ce.detail = detail.str();
        divergence = std::move(ce);
      }
    }

    if (divergence) {
      for (const auto& e : abstract_trace)
        divergence->abstract_trace.push_back(render_trace_line(e));
      for (const auto& e : refined_trace)
        divergence->refined_trace.push_back(render_trace_line(e));
      report.counterexamples.push_back(std::move(*divergence));
    }
  }

  report.preserving = report.counterexamples.empty();
  return report;
}

std::vector<Scenario> default_suite(const RefinedSpacePair& pair) {
  const DataSpaceState& a = pair.abstract_space;
  std::vector<Scenario> suite;

  int fresh_counter = 0;
  auto fresh_data_id = [&]() {
    for (;;) {
      DataId candidate{"probe_u" + std::to_string(fresh_counter++)};
      if (!a.units.contains(candidate) && !a.provider_of.contains(candidate) &&
          !pair.refined_space.units.contains(candidate) &&
          !pair.refined_space.provider_of.contains(candidate))
        return candidate;
    }
  };
  auto fresh_rule_id = [&]() {
    for (;;) {
      RuleId candidate{"probe_r" + std::to_string(fresh_counter++)};
      if (!a.rules.contains(candidate) &&
          !pair.refined_space.rules.contains(candidate))
        return candidate;
    }
  };
  auto permit_rule = [&](const OrgId& issuer, const DataId& target,
                         const SocialMechId& social) {
    Rule r;
    r.id = fresh_rule_id();
    r.issuer = issuer;
    r.selector.op_kinds = {OpKind::use_data};
    r.selector.data = std::set<DataId>{target};
    r.effect = RuleEffect::permit;
    r.social = social;
    return r;
  };

  for (const auto& [d, unit] : a.units) {
    auto provider_it = a.provider_of.find(d);
    auto provision_it = a.provisions.find(d);
    auto social = unit.header.social();
    if (provider_it == a.provider_of.end() ||
        provision_it == a.provisions.end() || !social)
      continue;
    const OrgId provider = provider_it->second;
    const Condition& provision = provision_it->second;

    std::optional<std::string> declared_purpose;
    if (provision.purposes && !provision.purposes->empty())
      declared_purpose = *provision.purposes->begin();

    // Capability family: the provided unit stays usable through repeated
    // exchanges, for every organization, across a run of clock ticks.
    for (const auto& [o, org] : a.orgs) {
      (void)org;
      Scenario s;
      s.name = "capability:" + d.value + ":" + o.value;
      s.steps.push_back(
          Step{ProvideRuleStep{provider, permit_rule(provider, d, *social),
                               Condition{}},
               std::nullopt});
      for (int k = 0; k < 6; ++k)
        s.steps.push_back(
            Step{UseDataStep{o, d, Condition{}, declared_purpose},
                 std::nullopt});
      suite.push_back(std::move(s));
    }

    // Security family: purpose and user-side social requirements.
    for (const auto& [o, org] : a.orgs) {
      (void)org;
      Scenario s;
      s.name = "security:" + d.value + ":" + o.value;
      s.steps.push_back(
          Step{ProvideRuleStep{provider, permit_rule(provider, d, *social),
                               Condition{}},
               std::nullopt});
      s.steps.push_back(
          Step{UseDataStep{o, d, Condition{}, std::string("__probe__")},
               std::nullopt});
      Condition requires_social;
      requires_social.required_social = *social;
      s.steps.push_back(
          Step{UseDataStep{o, d, requires_social, declared_purpose},
               std::nullopt});
      suite.push_back(std::move(s));
    }

    // Operational-context family: sovereignty probes plus the full
    // modify/stop lifecycle driven by the provider.
    for (const auto& [o, org] : a.orgs) {
      (void)org;
      if (o == provider) continue;
      Scenario s;
      s.name = "sovereignty:" + d.value + ":" + o.value;
      s.steps.push_back(Step{ModifyDataStep{o, d, std::nullopt, std::nullopt,
                                            std::nullopt, provision},
                             std::nullopt});
      s.steps.push_back(Step{StopDataStep{o, d, Condition{}}, std::nullopt});
      suite.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "lifecycle:" + d.value;
      const OrgId user = a.orgs.begin()->first;
      s.steps.push_back(
          Step{ProvideRuleStep{provider, permit_rule(provider, d, *social),
                               Condition{}},
               std::nullopt});
      s.steps.push_back(
          Step{UseDataStep{user, d, Condition{}, declared_purpose},
               std::nullopt});
      s.steps.push_back(Step{ModifyDataStep{provider, d, std::nullopt,
                                            std::nullopt, std::nullopt,
                                            provision},
                             std::nullopt});
      s.steps.push_back(
          Step{UseDataStep{user, d, Condition{}, declared_purpose},
               std::nullopt});
      s.steps.push_back(Step{StopDataStep{provider, d, Condition{}},
                             std::nullopt});
      s.steps.push_back(
          Step{UseDataStep{user, d, Condition{}, declared_purpose},
               std::nullopt});
      suite.push_back(std::move(s));
    }
  }

  // Fresh-provision family: the refined space must host the same new flows
  // the abstract space does.
  if (!a.orgs.empty() && !a.mechs.empty() && !a.socials.empty()) {
    Scenario s;
    s.name = "fresh-exchange";
    const OrgId provider = a.orgs.begin()->first;
    const OrgId user = a.orgs.rbegin()->first;
    const MechId mech = a.mechs.begin()->first;
    const SocialMechId social = a.socials.begin()->first;
    DataUnit unit;
    unit.id = fresh_data_id();
    unit.header.set_social(social);
    unit.payload = Payload::from_bytes("probe-content");
    unit.mechanisms = {mech};
    s.steps.push_back(
        Step{ProvideDataStep{provider, unit, Condition{}}, std::nullopt});
    s.steps.push_back(
        Step{ProvideRuleStep{provider, permit_rule(provider, unit.id, social),
                             Condition{}},
             std::nullopt});
    s.steps.push_back(
        Step{UseDataStep{user, unit.id, Condition{}, std::nullopt},
             std::nullopt});
    suite.push_back(std::move(s));
  }

  return suite;
}

std::vector<DecompositionTree> decomposition_trees(const ElementMapping& m) {
  std::vector<DecompositionTree> out;
  auto add = [&](ComponentKind kind, const std::string& root,
                 const auto& children) {
    DecompositionTree tree;
    tree.kind = kind;
    tree.root = root;
    for (const auto& child : children)
      tree.children.push_back(DecompositionTree{kind, child.value, {}});
    out.push_back(std::move(tree));
  };
  for (const auto& [parent, kids] : m.orgs)
    add(ComponentKind::organization, parent.value, kids);
  for (const auto& [parent, kids] : m.mechs)
    add(ComponentKind::mechanism, parent.value, kids);
  for (const auto& [parent, kids] : m.data)
    add(ComponentKind::data_unit, parent.value, kids);
  for (const auto& [parent, kids] : m.socials)
    add(ComponentKind::social, parent.value, kids);
  return out;
}

std::string preservation_report_json(const PreservationReport& report,
                                     const ElementMapping& mapping) {
  nlohmann::json j;
  j["preserving"] = report.preserving;
  nlohmann::json ces = nlohmann::json::array();
  for (const auto& ce : report.counterexamples) {
    nlohmann::json c;
    c["kind"] = ce.kind;
    c["scenario"] = ce.scenario;
    c["detail"] = ce.detail;
    c["abstract_trace"] = ce.abstract_trace;
    c["refined_trace"] = ce.refined_trace;
    ces.push_back(std::move(c));
  }
  j["counterexamples"] = std::move(ces);
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : decomposition_trees(mapping)) {
    nlohmann::json t;
    t["kind"] = to_string(tree.kind);
    t["root"] = tree.root;
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& child : tree.children) kids.push_back(child.root);
    t["children"] = std::move(kids);
    trees.push_back(std::move(t));
  }
  j["decompositions"] = std::move(trees);
  return j.dump(2) + "\n";
}

}  // namespace dspace
