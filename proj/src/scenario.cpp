#include "dspace/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "dspace/errors.hpp"
#include "dspace/snapshot.hpp"

namespace dspace {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Split at top nesting level of (), {}, [].
std::vector<std::string> split_top(std::string_view s, char delim) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c == delim && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_uint(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
  throw ScenarioSyntaxError(line, 1, what);
}

// "key=value" -> pair; empty key on failure.
std::pair<std::string, std::string> key_value(const std::string& token) {
  auto pos = token.find('=');
  if (pos == std::string::npos) return {"", ""};
  return {trim(token.substr(0, pos)), trim(token.substr(pos + 1))};
}

std::vector<std::string> parse_list(const std::string& value,
                                    std::size_t line) {
  std::string inner = value;
  if (!inner.empty() && inner.front() == '[') {
    if (inner.back() != ']') syntax_error(line, "unterminated list " + value);
    inner = inner.substr(1, inner.size() - 2);
  }
  std::vector<std::string> out;
  if (trim(inner).empty()) return out;
  for (const auto& item : split_top(inner, ',')) {
    std::string t = trim(item);
    if (t.empty()) syntax_error(line, "empty list element in " + value);
    out.push_back(t);
  }
  return out;
}

Condition parse_condition_at(const std::string& text, std::size_t line) {
  std::string t = trim(text);
  if (t.rfind("cond{", 0) != 0 || t.back() != '}')
    syntax_error(line, "expected cond{...}, got " + t);
  std::string inner = t.substr(5, t.size() - 6);
  Condition c;
  if (trim(inner).empty()) return c;
  for (const auto& clause : split_top(inner, ';')) {
    std::string cl = trim(clause);
    if (cl.empty()) continue;
    auto [key, value] = key_value(cl);
    if (key == "orgs") {
      std::set<OrgId> orgs;
      for (const auto& o : parse_list(value, line)) orgs.insert(OrgId{o});
      c.allowed_orgs = std::move(orgs);
    } else if (key == "purposes") {
      std::set<std::string> ps;
      for (const auto& p : parse_list(value, line)) ps.insert(p);
      c.purposes = std::move(ps);
    } else if (key == "window") {
      auto bounds = parse_list(value, line);
      std::uint64_t a = 0, b = 0;
      if (bounds.size() != 2 || !parse_uint(bounds[0], a) ||
          !parse_uint(bounds[1], b))
        syntax_error(line, "window expects [start,end]");
      if (a > b) syntax_error(line, "window start exceeds end");
      c.valid_window = ClockWindow{a, b};
    } else if (key == "social") {
      c.required_social = SocialMechId{value};
    } else if (key == "max_uses") {
      std::uint64_t n = 0;
      if (!parse_uint(value, n) || n == 0)
        syntax_error(line, "max_uses expects a positive integer");
      c.max_uses = n;
    } else {
      // Unknown clause kinds are rejected, not silently ignored.
      syntax_error(line, "unknown condition clause '" + key +
                             "' (known: orgs, purposes, window, social, "
                             "max_uses)");
    }
  }
  return c;
}

std::string op_vocabulary() {
  std::string out;
  for (OpKind k : all_op_kinds) {
    if (!out.empty()) out += ", ";
    out += to_string(k);
  }
  return out;
}

Rule parse_rule_at(const std::string& text, std::size_t line) {
  std::string t = trim(text);
  if (t.rfind("rule{", 0) != 0 || t.back() != '}')
    syntax_error(line, "expected rule{...}, got " + t);
  std::string inner = t.substr(5, t.size() - 6);
  Rule r;
  bool have_id = false, have_issuer = false, have_on = false,
       have_effect = false, have_social = false;
  for (const auto& clause : split_top(inner, ';')) {
    std::string cl = trim(clause);
    if (cl.empty()) continue;
    auto [key, value] = key_value(cl);
    if (key == "id") {
      r.id = RuleId{value};
      have_id = true;
    } else if (key == "issuer") {
      r.issuer = OrgId{value};
      have_issuer = true;
    } else if (key == "on") {
      if (value != "*") {
        for (const auto& name : parse_list(value, line)) {
          OpKind k;
          if (!op_kind_from_string(name, k))
            syntax_error(line, "unknown operation '" + name +
                                   "' (valid: " + op_vocabulary() + ")");
          r.selector.op_kinds.insert(k);
        }
      } else {
        r.selector.op_kinds.insert(all_op_kinds,
                                   all_op_kinds + std::size(all_op_kinds));
      }
      have_on = true;
    } else if (key == "data") {
      if (value != "*") {
        std::set<DataId> ids;
        for (const auto& d : parse_list(value, line)) ids.insert(DataId{d});
        r.selector.data = std::move(ids);
      }
    } else if (key == "actor") {
      if (value != "*") {
        std::set<OrgId> ids;
        for (const auto& a : parse_list(value, line)) ids.insert(OrgId{a});
        r.selector.actors = std::move(ids);
      }
    } else if (key == "guard") {
      r.guard = parse_condition_at(value, line);
    } else if (key == "effect") {
      RuleEffect e;
      if (!rule_effect_from_string(value, e))
        syntax_error(line, "effect must be permit or deny");
      r.effect = e;
      have_effect = true;
    } else if (key == "social") {
      r.social = SocialMechId{value};
      have_social = true;
    } else {
      syntax_error(line, "unknown rule field '" + key + "'");
    }
  }
  if (!have_id || !have_issuer || !have_on || !have_effect || !have_social)
    syntax_error(line, "rule requires id, issuer, on, effect, and social");
  if (r.selector.op_kinds.empty())
    syntax_error(line, "rule selector matches no operation kind");
  return r;
}

Header parse_header_at(const std::string& text, std::size_t line) {
  std::string t = trim(text);
  if (t.rfind("header{", 0) != 0 || t.back() != '}')
    syntax_error(line, "expected header{...}, got " + t);
  std::string inner = t.substr(7, t.size() - 8);
  Header h;
  for (const auto& clause : split_top(inner, ';')) {
    std::string cl = trim(clause);
    if (cl.empty()) continue;
    auto [key, value] = key_value(cl);
    if (key.empty()) syntax_error(line, "header attribute expects key=value");
    if (!value.empty() && value.front() == '[') {
      std::set<std::string> items;
      for (const auto& i : parse_list(value, line)) items.insert(i);
      h.attributes[key] = std::move(items);
    } else if (std::int64_t n = 0; parse_int(value, n)) {
      if (key == Header::timestamp_attribute)
        h.attributes[key] = Timestamp{n};
      else
        h.attributes[key] = n;
    } else {
      h.attributes[key] = value;
    }
  }
  return h;
}

Payload parse_payload_at(const std::string& text, std::size_t line) {
  std::string t = trim(text);
  if (t.rfind("payload{", 0) != 0 || t.back() != '}')
    syntax_error(line, "expected payload{...}, got " + t);
  std::string inner = t.substr(8, t.size() - 9);
  std::string bytes;
  bool structured = false;
  for (const auto& clause : split_top(inner, ';')) {
    std::string cl = trim(clause);
    if (cl.empty()) continue;
    auto [key, value] = key_value(cl);
    if (key == "bytes") {
      bytes = value;
    } else if (key == "structured") {
      if (value == "true") structured = true;
      else if (value == "false") structured = false;
      else syntax_error(line, "structured expects true or false");
    } else {
      syntax_error(line, "unknown payload field '" + key + "'");
    }
  }
  return Payload::from_bytes(bytes, structured);
}

std::set<MechId> parse_mechs_value(const std::string& value,
                                   std::size_t line) {
  std::set<MechId> out;
  for (const auto& m : parse_list(value, line)) out.insert(MechId{m});
  return out;
}

struct DeclaredIds {
  std::set<std::string> orgs, mechs, socials;
};

void check_org(const DeclaredIds& ids, const OrgId& o, std::size_t line) {
  if (!ids.orgs.contains(o.value))
    syntax_error(line, "reference to undeclared org '" + o.value + "'");
}
void check_social(const DeclaredIds& ids, const SocialMechId& s,
                  std::size_t line) {
  if (!ids.socials.contains(s.value))
    syntax_error(line, "reference to undeclared social '" + s.value + "'");
}
void check_condition_refs(const DeclaredIds& ids, const Condition& c,
                          std::size_t line) {
  if (c.allowed_orgs)
    for (const auto& o : *c.allowed_orgs) check_org(ids, o, line);
  if (c.required_social) check_social(ids, *c.required_social, line);
}
void check_header_refs(const DeclaredIds& ids, const Header& h,
                       std::size_t line) {
  if (auto social = h.social()) check_social(ids, *social, line);
}
void check_mech_refs(const DeclaredIds& ids, const std::set<MechId>& mechs,
                     std::size_t line) {
  for (const auto& m : mechs)
    if (!ids.mechs.contains(m.value))
      syntax_error(line, "reference to undeclared mech '" + m.value + "'");
}

}  // namespace

OpKind step_kind(const Step& s) {
  return std::visit(
      [](const auto& call) -> OpKind {
        using T = std::decay_t<decltype(call)>;
        if constexpr (std::is_same_v<T, ProvideDataStep>)
          return OpKind::provide_data;
        else if constexpr (std::is_same_v<T, ModifyDataStep>)
          return OpKind::modify_data;
        else if constexpr (std::is_same_v<T, StopDataStep>)
          return OpKind::stop_data;
        else if constexpr (std::is_same_v<T, UseDataStep>)
          return OpKind::use_data;
        else if constexpr (std::is_same_v<T, ProvideRuleStep>)
          return OpKind::provide_rule;
        else if constexpr (std::is_same_v<T, ModifyRuleStep>)
          return OpKind::modify_rule;
        else
          return OpKind::stop_rule;
      },
      s.call);
}

OrgId step_actor(const Step& s) {
  return std::visit([](const auto& call) { return call.actor; }, s.call);
}

std::string step_target(const Step& s) {
  return std::visit(
      [](const auto& call) -> std::string {
        using T = std::decay_t<decltype(call)>;
        if constexpr (std::is_same_v<T, ProvideDataStep>)
          return call.unit.id.value;
        else if constexpr (std::is_same_v<T, ProvideRuleStep>)
          return call.rule.id.value;
        else
          return call.id.value;
      },
      s.call);
}

Scenario parse_scenario(std::string_view text, std::string name) {
  Scenario sc;
  sc.name = std::move(name);
  DeclaredIds ids;
  bool steps_started = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line = trim(text.substr(
        start, nl == std::string_view::npos ? text.size() - start : nl - start));
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;

    std::istringstream words(line);
    std::string head;
    words >> head;

    if (head == "org" || head == "mech" || head == "social") {
      if (steps_started)
        syntax_error(line_no, "declarations must precede steps");
      std::string id;
      words >> id;
      if (id.empty()) syntax_error(line_no, "declaration requires an id");
      std::map<std::string, std::string> fields;
      std::string tok;
      while (words >> tok) {
        auto [k, v] = key_value(tok);
        if (k.empty()) syntax_error(line_no, "expected key=value, got " + tok);
        fields[k] = v;
      }
      if (head == "org") {
        if (ids.orgs.contains(id)) syntax_error(line_no, "duplicate org " + id);
        Organization org;
        org.id = OrgId{id};
        if (!fields.contains("roles"))
          syntax_error(line_no, "org requires roles=...");
        for (const auto& r : parse_list(fields["roles"], line_no)) {
          RoleTag t;
          if (!role_from_string(r, t))
            syntax_error(line_no, "unknown role '" + r + "'");
          org.roles.insert(t);
        }
        if (org.roles.empty()) syntax_error(line_no, "org requires a role");
        if (fields.contains("credentials"))
          for (const auto& c : parse_list(fields["credentials"], line_no)) {
            check_social(ids, SocialMechId{c}, line_no);
            org.credentials.insert(SocialMechId{c});
          }
        ids.orgs.insert(id);
        sc.orgs.push_back(std::move(org));
      } else if (head == "mech") {
        if (ids.mechs.contains(id))
          syntax_error(line_no, "duplicate mech " + id);
        DataProvisionMechanism mech;
        mech.id = MechId{id};
        if (fields.contains("kind")) {
          MechKind k;
          if (!mech_kind_from_string(fields["kind"], k))
            syntax_error(line_no, "unknown mech kind '" + fields["kind"] + "'");
          mech.kind = k;
        }
        ids.mechs.insert(id);
        sc.mechs.push_back(mech);
      } else {
        if (ids.socials.contains(id))
          syntax_error(line_no, "duplicate social " + id);
        SocialMechanism social;
        social.id = SocialMechId{id};
        social.kind = fields.contains("kind") ? fields["kind"] : "unspecified";
        ids.socials.insert(id);
        sc.socials.push_back(std::move(social));
      }
      continue;
    }

    if (head == "assert") {
      std::string kind;
      words >> kind;
      if (kind == "lifecycle") {
        std::string id, state;
        words >> id >> state;
        AutomatonState st;
        if (id.empty() || !automaton_state_from_string(state, st))
          syntax_error(line_no, "assert lifecycle <data-id> <q-state>");
        sc.asserts.push_back(LifecycleAssert{DataId{id}, st});
      } else if (kind == "count") {
        std::string comp, num;
        words >> comp >> num;
        std::uint64_t n = 0;
        if (comp.size() != 1 ||
            std::string("OMDSR").find(comp[0]) == std::string::npos ||
            !parse_uint(num, n))
          syntax_error(line_no, "assert count <O|M|D|S|R> <n>");
        sc.asserts.push_back(CountAssert{comp[0], static_cast<std::size_t>(n)});
      } else {
        syntax_error(line_no, "assert expects lifecycle or count");
      }
      continue;
    }

    // Operation step: Op_Name(args) [expect 0|1]
    auto paren = line.find('(');
    if (paren == std::string::npos)
      syntax_error(line_no,
                   "expected declaration, operation, or assert; got '" + head +
                       "'");
    std::string op_name = trim(line.substr(0, paren));
    OpKind op;
    if (!op_kind_from_string(op_name, op))
      syntax_error(line_no, "unknown operation '" + op_name +
                                "' (valid: " + op_vocabulary() + ")");
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = paren; i < line.size(); ++i) {
      if (line[i] == '(') ++depth;
      if (line[i] == ')' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string::npos)
      syntax_error(line_no, "unterminated argument list");
    std::string args_text = line.substr(paren + 1, close - paren - 1);
    std::vector<std::string> args;
    if (!trim(args_text).empty())
      for (const auto& a : split_top(args_text, ','))
        args.push_back(trim(a));

    std::optional<int> expect;
    {
      std::istringstream rest(line.substr(close + 1));
      std::string tok;
      if (rest >> tok) {
        std::string v;
        if (tok != "expect" || !(rest >> v) || (v != "0" && v != "1"))
          syntax_error(line_no, "expected 'expect 0|1' after arguments");
        expect = v == "1" ? 1 : 0;
        if (rest >> tok) syntax_error(line_no, "trailing tokens after expect");
      }
    }

    steps_started = true;
    auto need_args = [&](std::size_t n) {
      if (args.size() < n)
        syntax_error(line_no, to_string(op) + " expects at least " +
                                  std::to_string(n) + " arguments");
    };
    auto is_group = [](const std::string& a, const char* tag) {
      return a.rfind(std::string(tag) + "{", 0) == 0;
    };

    Step st;
    st.expect = expect;
    switch (op) {
      case OpKind::provide_data: {
        need_args(3);
        ProvideDataStep call;
        call.actor = OrgId{args[0]};
        check_org(ids, call.actor, line_no);
        call.unit.id = DataId{args[1]};
        bool have_cond = false, have_header = false;
        for (std::size_t i = 2; i < args.size(); ++i) {
          const auto& a = args[i];
          if (is_group(a, "cond")) {
            call.cond = parse_condition_at(a, line_no);
            have_cond = true;
          } else if (is_group(a, "header")) {
            call.unit.header = parse_header_at(a, line_no);
            have_header = true;
          } else if (is_group(a, "payload")) {
            call.unit.payload = parse_payload_at(a, line_no);
          } else if (a.rfind("mechs=", 0) == 0) {
            call.unit.mechanisms = parse_mechs_value(a.substr(6), line_no);
          } else {
            syntax_error(line_no, "unexpected argument '" + a + "'");
          }
        }
        if (!have_cond)
          syntax_error(line_no, "Provide_Data requires a cond{...} argument");
        if (!have_header)
          syntax_error(line_no, "Provide_Data requires a header{...} argument");
        if (!call.unit.payload.inline_bytes)
          call.unit.payload = Payload::from_bytes("");
        check_condition_refs(ids, call.cond, line_no);
        check_header_refs(ids, call.unit.header, line_no);
        check_mech_refs(ids, call.unit.mechanisms, line_no);
        st.call = std::move(call);
        break;
      }
      case OpKind::modify_data: {
        need_args(3);
        ModifyDataStep call;
        call.actor = OrgId{args[0]};
        check_org(ids, call.actor, line_no);
        call.id = DataId{args[1]};
        bool have_cond = false;
        for (std::size_t i = 2; i < args.size(); ++i) {
          const auto& a = args[i];
          if (is_group(a, "cond")) {
            call.cond = parse_condition_at(a, line_no);
            have_cond = true;
          } else if (is_group(a, "header")) {
            call.header = parse_header_at(a, line_no);
            check_header_refs(ids, *call.header, line_no);
          } else if (is_group(a, "payload")) {
            call.payload = parse_payload_at(a, line_no);
          } else if (a.rfind("mechs=", 0) == 0) {
            call.mechanisms = parse_mechs_value(a.substr(6), line_no);
            check_mech_refs(ids, *call.mechanisms, line_no);
          } else {
            syntax_error(line_no, "unexpected argument '" + a + "'");
          }
        }
        if (!have_cond)
          syntax_error(line_no, "Modify_Data requires a cond{...} argument");
        check_condition_refs(ids, call.cond, line_no);
        st.call = std::move(call);
        break;
      }
      case OpKind::stop_data: {
        need_args(2);
        StopDataStep call;
        call.actor = OrgId{args[0]};
        check_org(ids, call.actor, line_no);
        call.id = DataId{args[1]};
        if (args.size() > 2) {
          call.cond = parse_condition_at(args[2], line_no);
          check_condition_refs(ids, call.cond, line_no);
        }
        st.call = std::move(call);
        break;
      }
      case OpKind::use_data: {
        need_args(2);
        UseDataStep call;
        call.actor = OrgId{args[0]};
        check_org(ids, call.actor, line_no);
        call.id = DataId{args[1]};
        for (std::size_t i = 2; i < args.size(); ++i) {
          const auto& a = args[i];
          if (is_group(a, "cond")) {
            call.cond = parse_condition_at(a, line_no);
          } else if (a.rfind("purpose=", 0) == 0) {
            call.purpose = a.substr(8);
          } else {
            syntax_error(line_no, "unexpected argument '" + a + "'");
          }
        }
        check_condition_refs(ids, call.cond, line_no);
        st.call = std::move(call);
        break;
      }
      case OpKind::provide_rule: {
        need_args(2);
        ProvideRuleStep call;
        call.actor = OrgId{args[0]};
        check_org(ids, call.actor, line_no);
        if (!is_group(args[1], "rule"))
          syntax_error(line_no, "Provide_Rule requires a rule{...} argument");
        call.rule = parse_rule_at(args[1], line_no);
        if (args.size() > 2) call.cond = parse_condition_at(args[2], line_no);
        check_org(ids, call.rule.issuer, line_no);
        check_social(ids, call.rule.social, line_no);
        if (call.rule.selector.actors)
          for (const auto& a : *call.rule.selector.actors)
            check_org(ids, a, line_no);
        check_condition_refs(ids, call.rule.guard, line_no);
        check_condition_refs(ids, call.cond, line_no);
        st.call = std::move(call);
        break;
      }
      case OpKind::modify_rule: {
        need_args(3);
        ModifyRuleStep call;
        call.actor = OrgId{args[0]};
        check_org(ids, call.actor, line_no);
        call.id = RuleId{args[1]};
        if (!is_group(args[2], "rule"))
          syntax_error(line_no, "Modify_Rule requires a rule{...} argument");
        call.rule = parse_rule_at(args[2], line_no);
        if (args.size() > 3) call.cond = parse_condition_at(args[3], line_no);
        check_org(ids, call.rule.issuer, line_no);
        check_social(ids, call.rule.social, line_no);
        check_condition_refs(ids, call.rule.guard, line_no);
        st.call = std::move(call);
        break;
      }
      case OpKind::stop_rule: {
        need_args(2);
        StopRuleStep call;
        call.actor = OrgId{args[0]};
        check_org(ids, call.actor, line_no);
        call.id = RuleId{args[1]};
        if (args.size() > 2) call.cond = parse_condition_at(args[2], line_no);
        st.call = std::move(call);
        break;
      }
    }
    sc.steps.push_back(std::move(st));
  }
  return sc;
}

bool AssertionReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const AssertionOutcome& e) { return e.pass; });
}

OpResult apply_step(const DataSpaceState& state, const Step& step) {
  return std::visit(
      [&](const auto& call) -> OpResult {
        using T = std::decay_t<decltype(call)>;
        if constexpr (std::is_same_v<T, ProvideDataStep>) {
          return provide_data(state, call.actor, call.unit, call.cond);
        } else if constexpr (std::is_same_v<T, ModifyDataStep>) {
          DataUnit d_new;
          d_new.id = call.id;
          if (auto it = state.units.find(call.id); it != state.units.end())
            d_new = it->second;
          if (call.header) d_new.header = *call.header;
          if (call.payload) d_new.payload = *call.payload;
          if (call.mechanisms) d_new.mechanisms = *call.mechanisms;
          return modify_data(state, call.actor, call.id, d_new, call.cond);
        } else if constexpr (std::is_same_v<T, StopDataStep>) {
          return stop_data(state, call.actor, call.id, call.cond);
        } else if constexpr (std::is_same_v<T, UseDataStep>) {
          return use_data(state, call.actor, call.id, call.cond, call.purpose);
        } else if constexpr (std::is_same_v<T, ProvideRuleStep>) {
          return provide_rule(state, call.actor, call.rule, call.cond);
        } else if constexpr (std::is_same_v<T, ModifyRuleStep>) {
          return modify_rule(state, call.actor, call.id, call.rule, call.cond);
        } else {
          return stop_rule(state, call.actor, call.id, call.cond);
        }
      },
      step.call);
}

namespace {

RunResult run_steps_impl(DataSpaceState state, std::span<const Step> steps,
                         std::span<const ScenarioAssert> asserts) {
  RunResult result;
  std::size_t idx = 0;
  for (const auto& step : steps) {
    std::uint64_t at = state.clock;
    OpResult r = apply_step(state, step);
    TraceEvent e;
    e.clock = at;
    e.op = step_kind(step);
    e.actor = step_actor(step);
    e.target = step_target(step);
    e.ret = r.ret;
    e.reason = r.reason;
    e.scope = r.rule_scope;
    e.state_hash_after = state_hash(r.state);
    result.trace.push_back(std::move(e));
    if (step.expect) {
      AssertionOutcome out;
      out.what = "step " + std::to_string(idx) + " " + to_string(step_kind(step)) +
                 "(" + step_target(step) + ")";
      out.expected = "ret=" + std::to_string(*step.expect);
      out.actual =
          "ret=" + std::to_string(r.ret) + " (" + to_string(r.reason) + ")";
      out.pass = r.ret == *step.expect;
      result.report.entries.push_back(std::move(out));
    }
    state = std::move(r.state);
    ++idx;
  }

  for (const auto& a : asserts) {
    AssertionOutcome out;
    if (const auto* lc = std::get_if<LifecycleAssert>(&a)) {
      out.what = "lifecycle " + lc->id.value;
      out.expected = to_string(lc->state);
      auto it = state.lifecycle.find(lc->id);
      out.actual = it == state.lifecycle.end() ? "none" : to_string(it->second);
      out.pass = out.actual == out.expected;
    } else {
      const auto& ct = std::get<CountAssert>(a);
      std::size_t actual = 0;
      switch (ct.component) {
        case 'O': actual = state.orgs.size(); break;
        case 'M': actual = state.mechs.size(); break;
        case 'D': actual = state.units.size(); break;
        case 'S': actual = state.socials.size(); break;
        case 'R': actual = state.rules.size(); break;
      }
      out.what = std::string("count ") + ct.component;
      out.expected = std::to_string(ct.expected);
      out.actual = std::to_string(actual);
      out.pass = actual == ct.expected;
    }
    result.report.entries.push_back(std::move(out));
  }

  result.state = std::move(state);
  return result;
}

}  // namespace

RunResult run_scenario(const Scenario& s) {
  DataSpaceState initial = new_data_space(s.orgs, s.mechs, s.socials);
  return run_steps_impl(std::move(initial), s.steps, s.asserts);
}

RunResult run_steps(const DataSpaceState& initial,
                    std::span<const Step> steps) {
  return run_steps_impl(initial, steps, {});
}

std::string render_condition(const Condition& c) {
  std::vector<std::string> clauses;
  auto join_ids = [](const auto& ids) {
    std::string out;
    for (const auto& id : ids) {
      if (!out.empty()) out += ",";
      out += id.value;
    }
    return out;
  };
  if (c.allowed_orgs)
    clauses.push_back("orgs=[" + join_ids(*c.allowed_orgs) + "]");
  if (c.purposes) {
    std::string ps;
    for (const auto& p : *c.purposes) {
      if (!ps.empty()) ps += ",";
      ps += p;
    }
    clauses.push_back("purposes=[" + ps + "]");
  }
  if (c.valid_window)
    clauses.push_back("window=[" + std::to_string(c.valid_window->start) + "," +
                      std::to_string(c.valid_window->end) + "]");
  if (c.required_social) clauses.push_back("social=" + c.required_social->value);
  if (c.max_uses) clauses.push_back("max_uses=" + std::to_string(*c.max_uses));
  std::string out = "cond{";
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (i) out += "; ";
    out += clauses[i];
  }
  out += "}";
  return out;
}

Condition parse_condition(std::string_view text) {
  return parse_condition_at(std::string(text), 1);
}

std::string render_rule(const Rule& r) {
  std::string out = "rule{id=" + r.id.value + "; issuer=" + r.issuer.value;
  std::string ops;
  for (OpKind k : r.selector.op_kinds) {
    if (!ops.empty()) ops += ",";
    ops += to_string(k);
  }
  out += "; on=" + ops;
  auto join_ids = [](const auto& ids) {
    std::string s;
    for (const auto& id : ids) {
      if (!s.empty()) s += ",";
      s += id.value;
    }
    return s;
  };
  out += "; data=" + (r.selector.data ? join_ids(*r.selector.data) : "*");
  out += "; actor=" + (r.selector.actors ? join_ids(*r.selector.actors) : "*");
  out += "; guard=" + render_condition(r.guard);
  out += "; effect=" + to_string(r.effect);
  out += "; social=" + r.social.value + "}";
  return out;
}

Rule parse_rule(std::string_view text) {
  return parse_rule_at(std::string(text), 1);
}

}  // namespace dspace
