#include "dspace/snapshot.hpp"

#include <utility>

#include "dspace/hash.hpp"
#include "json_codec.hpp"

namespace dspace {

namespace codec {

namespace {

json attr_to_json(const AttributeValue& v) {
  json j;
  if (const auto* s = std::get_if<std::string>(&v)) {
    j["type"] = "string";
    j["value"] = *s;
  } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
    j["type"] = "integer";
    j["value"] = *i;
  } else if (const auto* t = std::get_if<Timestamp>(&v)) {
    j["type"] = "timestamp";
    j["value"] = t->value;
  } else {
    j["type"] = "set";
    j["value"] = std::get<std::set<std::string>>(v);
  }
  return j;
}

AttributeValue attr_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "string") return j.at("value").get<std::string>();
  if (type == "integer") return j.at("value").get<std::int64_t>();
  if (type == "timestamp") return Timestamp{j.at("value").get<std::int64_t>()};
  if (type == "set") return j.at("value").get<std::set<std::string>>();
  throw CorruptSnapshot("unknown attribute type " + type);
}

template <class IdT>
json id_set_to_json(const std::set<IdT>& ids) {
  json arr = json::array();
  for (const auto& id : ids) arr.push_back(id.value);
  return arr;
}

template <class IdT>
std::set<IdT> id_set_from_json(const json& arr) {
  std::set<IdT> out;
  for (const auto& v : arr) out.insert(IdT{v.get<std::string>()});
  return out;
}

}  // namespace

json condition_to_json(const Condition& c) {
  json j = json::object();
  if (c.allowed_orgs) j["orgs"] = id_set_to_json(*c.allowed_orgs);
  if (c.purposes) j["purposes"] = *c.purposes;
  if (c.valid_window)
    j["window"] = json::array({c.valid_window->start, c.valid_window->end});
  if (c.required_social) j["social"] = c.required_social->value;
  if (c.max_uses) j["max_uses"] = *c.max_uses;
  return j;
}

Condition condition_from_json(const json& j) {
  Condition c;
  if (j.contains("orgs")) c.allowed_orgs = id_set_from_json<OrgId>(j.at("orgs"));
  if (j.contains("purposes"))
    c.purposes = j.at("purposes").get<std::set<std::string>>();
  if (j.contains("window"))
    c.valid_window = ClockWindow{j.at("window").at(0).get<std::uint64_t>(),
                                 j.at("window").at(1).get<std::uint64_t>()};
  if (j.contains("social"))
    c.required_social = SocialMechId{j.at("social").get<std::string>()};
  if (j.contains("max_uses")) c.max_uses = j.at("max_uses").get<std::uint64_t>();
  return c;
}

json rule_to_json(const Rule& r) {
  json j;
  j["id"] = r.id.value;
  j["issuer"] = r.issuer.value;
  json kinds = json::array();
  for (OpKind k : r.selector.op_kinds) kinds.push_back(to_string(k));
  j["on"] = kinds;
  j["data"] = r.selector.data ? id_set_to_json(*r.selector.data) : json();
  j["actor"] = r.selector.actors ? id_set_to_json(*r.selector.actors) : json();
  j["guard"] = condition_to_json(r.guard);
  j["effect"] = to_string(r.effect);
  j["social"] = r.social.value;
  return j;
}

Rule rule_from_json(const json& j) {
  Rule r;
  r.id = RuleId{j.at("id").get<std::string>()};
  r.issuer = OrgId{j.at("issuer").get<std::string>()};
  for (const auto& name : j.at("on")) {
    OpKind k;
    if (!op_kind_from_string(name.get<std::string>(), k))
      throw CorruptSnapshot("unknown operation " + name.get<std::string>());
    r.selector.op_kinds.insert(k);
  }
  if (!j.at("data").is_null())
    r.selector.data = id_set_from_json<DataId>(j.at("data"));
  if (!j.at("actor").is_null())
    r.selector.actors = id_set_from_json<OrgId>(j.at("actor"));
  r.guard = condition_from_json(j.at("guard"));
  RuleEffect effect;
  if (!rule_effect_from_string(j.at("effect").get<std::string>(), effect))
    throw CorruptSnapshot("unknown rule effect");
  r.effect = effect;
  r.social = SocialMechId{j.at("social").get<std::string>()};
  return r;
}

json state_to_json(const DataSpaceState& s) {
  json j;
  j["clock"] = s.clock;

  json orgs = json::array();
  for (const auto& [id, org] : s.orgs) {
    json o;
    o["id"] = id.value;
    json roles = json::array();
    for (RoleTag t : org.roles) roles.push_back(to_string(t));
    o["roles"] = roles;
    o["credentials"] = id_set_to_json(org.credentials);
    orgs.push_back(std::move(o));
  }
  j["organizations"] = std::move(orgs);

  json mechs = json::array();
  for (const auto& [id, mech] : s.mechs)
    mechs.push_back(json{{"id", id.value}, {"kind", to_string(mech.kind)}});
  j["mechanisms"] = std::move(mechs);

  json socials = json::array();
  for (const auto& [id, social] : s.socials)
    socials.push_back(json{{"id", id.value}, {"kind", social.kind}});
  j["socials"] = std::move(socials);

  json units = json::array();
  for (const auto& [id, unit] : s.units) {
    json u;
    u["id"] = id.value;
    json attrs = json::object();
    for (const auto& [name, value] : unit.header.attributes)
      attrs[name] = attr_to_json(value);
    u["header"] = std::move(attrs);
    json p;
    p["hash"] = unit.payload.content_hash;
    p["inline"] = unit.payload.inline_bytes ? json(*unit.payload.inline_bytes)
                                            : json();
    p["structured"] = unit.payload.structured;
    u["payload"] = std::move(p);
    u["mechanisms"] = id_set_to_json(unit.mechanisms);
    units.push_back(std::move(u));
  }
  j["units"] = std::move(units);

  json rules = json::array();
  for (const auto& [id, rule] : s.rules) {
    (void)id;
    rules.push_back(rule_to_json(rule));
  }
  j["rules"] = std::move(rules);

  json provisions = json::object();
  for (const auto& [id, cond] : s.provisions)
    provisions[id.value] = condition_to_json(cond);
  j["provisions"] = std::move(provisions);

  json provider_of = json::object();
  for (const auto& [id, org] : s.provider_of) provider_of[id.value] = org.value;
  j["provider_of"] = std::move(provider_of);

  json issuer_of = json::object();
  for (const auto& [id, org] : s.issuer_of) issuer_of[id.value] = org.value;
  j["issuer_of"] = std::move(issuer_of);

  json lifecycle = json::object();
  for (const auto& [id, st] : s.lifecycle) lifecycle[id.value] = to_string(st);
  j["lifecycle"] = std::move(lifecycle);

  json counts = json::array();
  for (const auto& [key, n] : s.use_counts)
    counts.push_back(json{{"org", key.first.value},
                          {"data", key.second.value},
                          {"count", n}});
  j["use_counts"] = std::move(counts);

  return j;
}

DataSpaceState state_from_json(const json& j) {
  DataSpaceState s;
  s.clock = j.at("clock").get<std::uint64_t>();

  for (const auto& o : j.at("organizations")) {
    Organization org;
    org.id = OrgId{o.at("id").get<std::string>()};
    for (const auto& r : o.at("roles")) {
      RoleTag t;
      if (!role_from_string(r.get<std::string>(), t))
        throw CorruptSnapshot("unknown role " + r.get<std::string>());
      org.roles.insert(t);
    }
    org.credentials = id_set_from_json<SocialMechId>(o.at("credentials"));
    s.orgs.emplace(org.id, org);
  }

  for (const auto& m : j.at("mechanisms")) {
    DataProvisionMechanism mech;
    mech.id = MechId{m.at("id").get<std::string>()};
    MechKind kind;
    if (!mech_kind_from_string(m.at("kind").get<std::string>(), kind))
      throw CorruptSnapshot("unknown mechanism kind");
    mech.kind = kind;
    s.mechs.emplace(mech.id, mech);
  }

  for (const auto& soc : j.at("socials")) {
    SocialMechanism social;
    social.id = SocialMechId{soc.at("id").get<std::string>()};
    social.kind = soc.at("kind").get<std::string>();
    s.socials.emplace(social.id, social);
  }

  for (const auto& u : j.at("units")) {
    DataUnit unit;
    unit.id = DataId{u.at("id").get<std::string>()};
    for (const auto& [name, value] : u.at("header").items())
      unit.header.attributes[name] = attr_from_json(value);
    const auto& p = u.at("payload");
    unit.payload.content_hash = p.at("hash").get<std::string>();
    if (!p.at("inline").is_null())
      unit.payload.inline_bytes = p.at("inline").get<std::string>();
    unit.payload.structured = p.at("structured").get<bool>();
    unit.mechanisms = id_set_from_json<MechId>(u.at("mechanisms"));
    s.units.emplace(unit.id, unit);
  }

  for (const auto& r : j.at("rules")) {
    Rule rule = rule_from_json(r);
    s.rules.emplace(rule.id, rule);
  }

  for (const auto& [id, cond] : j.at("provisions").items())
    s.provisions[DataId{id}] = condition_from_json(cond);
  for (const auto& [id, org] : j.at("provider_of").items())
    s.provider_of[DataId{id}] = OrgId{org.get<std::string>()};
  for (const auto& [id, org] : j.at("issuer_of").items())
    s.issuer_of[RuleId{id}] = OrgId{org.get<std::string>()};
  for (const auto& [id, st] : j.at("lifecycle").items()) {
    AutomatonState a;
    if (!automaton_state_from_string(st.get<std::string>(), a))
      throw CorruptSnapshot("unknown lifecycle state " + st.get<std::string>());
    s.lifecycle[DataId{id}] = a;
  }
  for (const auto& c : j.at("use_counts"))
    s.use_counts[{OrgId{c.at("org").get<std::string>()},
                  DataId{c.at("data").get<std::string>()}}] =
        c.at("count").get<std::uint64_t>();

  return s;
}

}  // namespace codec

std::string snapshot(const DataSpaceState& state) {
  return codec::state_to_json(state).dump(2) + "\n";
}

DataSpaceState restore(std::string_view document) {
  try {
    return codec::state_from_json(
        nlohmann::json::parse(document.begin(), document.end()));
  } catch (const CorruptSnapshot&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptSnapshot(e.what());
  }
}

std::string state_hash(const DataSpaceState& state) {
  return digest(snapshot(state));
}

}  // namespace dspace
