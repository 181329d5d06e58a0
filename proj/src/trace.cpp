#include "dspace/trace.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "dspace/errors.hpp"

namespace dspace {

namespace {

bool is_rule_op(OpKind k) {
  return k == OpKind::provide_rule || k == OpKind::modify_rule ||
         k == OpKind::stop_rule;
}

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string expect_field(const std::string& token, const char* key,
                         std::size_t line_no) {
  std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0)
    throw MalformedTrace(line_no, "expected " + prefix + "..., got " + token);
  return token.substr(prefix.size());
}

}  // namespace

std::string render_trace_line(const TraceEvent& e) {
  std::ostringstream out;
  out << "t=" << e.clock << " op=" << to_string(e.op)
      << " actor=" << e.actor.value << " target=" << e.target
      << " ret=" << e.ret << " reason=" << to_string(e.reason);
  if (e.ret == 1 && is_rule_op(e.op) && !e.scope.empty()) {
    out << " scope=";
    bool first = true;
    for (const auto& d : e.scope) {
      if (!first) out << ",";
      out << d.value;
      first = false;
    }
  }
  return out.str();
}

std::string render_trace(std::span<const TraceEvent> events) {
  std::string out;
  for (const auto& e : events) {
    out += render_trace_line(e);
    out += "\n";
  }
  return out;
}

std::vector<TraceEvent> parse_trace(std::string_view text) {
  std::vector<TraceEvent> events;
  std::size_t line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> tokens;
    for (const auto& t : split(line, ' '))
      if (!t.empty()) tokens.push_back(t);
    if (tokens.size() < 6)
      throw MalformedTrace(line_no, "expected at least 6 fields");

    TraceEvent e;
    std::string clock_s = expect_field(tokens[0], "t", line_no);
    auto [p, ec] = std::from_chars(clock_s.data(),
                                   clock_s.data() + clock_s.size(), e.clock);
    if (ec != std::errc{} || p != clock_s.data() + clock_s.size())
      throw MalformedTrace(line_no, "bad clock value " + clock_s);
    if (!op_kind_from_string(expect_field(tokens[1], "op", line_no), e.op))
      throw MalformedTrace(line_no, "unknown operation");
    e.actor = OrgId{expect_field(tokens[2], "actor", line_no)};
    e.target = expect_field(tokens[3], "target", line_no);
    std::string ret = expect_field(tokens[4], "ret", line_no);
    if (ret != "0" && ret != "1")
      throw MalformedTrace(line_no, "ret must be 0 or 1");
    e.ret = ret == "1" ? 1 : 0;
    if (!reason_from_string(expect_field(tokens[5], "reason", line_no),
                            e.reason))
      throw MalformedTrace(line_no, "unknown reason code");
    if (tokens.size() > 6) {
      std::string scope = expect_field(tokens[6], "scope", line_no);
      for (const auto& d : split(scope, ','))
        if (!d.empty()) e.scope.push_back(DataId{d});
      if (tokens.size() > 7) throw MalformedTrace(line_no, "trailing tokens");
    }

    if (!events.empty() && e.clock != events.back().clock + 1)
      throw MalformedTrace(line_no, "clock must increase by exactly 1");
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<OpEvent> project_events(std::span<const TraceEvent> events,
                                    const DataId& id) {
  std::vector<OpEvent> out;
  for (const auto& e : events) {
    if (is_rule_op(e.op)) {
      for (const auto& d : e.scope)
        if (d == id) {
          out.push_back(OpEvent{e.op, e.actor, e.target, e.ret});
          break;
        }
    } else if (e.target == id.value) {
      out.push_back(OpEvent{e.op, e.actor, e.target, e.ret});
    }
  }
  return out;
}

VerdictReport validate_trace(std::span<const TraceEvent> events) {
  VerdictReport report;

  // Precedence over successful events: usage needs an active provision,
  // modification/termination need the providing organization.
  std::map<std::string, OrgId> provided;
  std::size_t idx = 0;
  for (const auto& e : events) {
    if (e.ret == 1) {
      switch (e.op) {
        case OpKind::use_data:
          if (!provided.contains(e.target))
            report.violations.push_back(
                "event " + std::to_string(idx) + ": Use_Data(" + e.target +
                ")=1 without an active provision");
          break;
        case OpKind::modify_data:
        case OpKind::stop_data: {
          auto it = provided.find(e.target);
          if (it == provided.end())
            report.violations.push_back(
                "event " + std::to_string(idx) + ": " + to_string(e.op) + "(" +
                e.target + ")=1 without an active provision");
          else if (it->second != e.actor)
            report.violations.push_back(
                "event " + std::to_string(idx) + ": " + to_string(e.op) + "(" +
                e.target + ")=1 by " + e.actor.value + ", provider is " +
                it->second.value);
          break;
        }
        default:
          break;
      }
      if (e.op == OpKind::provide_data) provided[e.target] = e.actor;
      if (e.op == OpKind::stop_data) provided.erase(e.target);
    }
    ++idx;
  }

  // Per-unit lifecycle replay.
  std::set<DataId> unit_ids;
  for (const auto& e : events) {
    if (is_rule_op(e.op))
      for (const auto& d : e.scope) unit_ids.insert(d);
    else
      unit_ids.insert(DataId{e.target});
  }
  for (const auto& id : unit_ids) {
    UnitReplay replay;
    AutomatonState s = AutomatonState::q0;
    idx = 0;
    for (const auto& e : events) {
      bool relevant = false;
      if (is_rule_op(e.op)) {
        for (const auto& d : e.scope) relevant = relevant || d == id;
      } else {
        relevant = e.target == id.value;
      }
      if (relevant) {
        AutomatonState next =
            step(s, OpEvent{e.op, e.actor, e.target, e.ret});
        replay.transitions.push_back(
            std::to_string(idx) + " " + to_string(s) + " --" +
            to_string(e.op) + "=" + std::to_string(e.ret) + "--> " +
            to_string(next));
        s = next;
      }
      ++idx;
    }
    replay.final_state = s;
    replay.success = s == AutomatonState::q_f;
    report.units.emplace(id, std::move(replay));
  }
  return report;
}

}  // namespace dspace
