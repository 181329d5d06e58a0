#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dspace/automaton.hpp"
#include "dspace/ids.hpp"

namespace dspace {

// Serialized form of one attempted operation. clock is the logical time at
// which the operation executed (pre-increment). scope lists the data units a
// successful rule operation touched; it is what makes per-unit lifecycle
// replay from a trace file exact.
struct TraceEvent {
  std::uint64_t clock = 0;
  OpKind op = OpKind::provide_data;
  OrgId actor;
  std::string target;
  int ret = 0;
  ReasonCode reason = ReasonCode::ok;
  std::string state_hash_after;
  std::vector<DataId> scope;

  bool operator==(const TraceEvent&) const = default;
};

// Line format:
//   t=<clock> op=<name> actor=<org> target=<id> ret=<0|1> reason=<code>
// plus a trailing ` scope=<d1,d2>` on successful rule operations with a
// non-empty scope. state hashes are in-memory only.
std::string render_trace_line(const TraceEvent& e);
std::string render_trace(std::span<const TraceEvent> events);

// Throws MalformedTrace on unparseable lines or non-contiguous clocks.
std::vector<TraceEvent> parse_trace(std::string_view text);

// Events relevant to one data unit: data operations targeting it plus rule
// operations whose scope includes it.
std::vector<OpEvent> project_events(std::span<const TraceEvent> events,
                                    const DataId& id);

struct UnitReplay {
  std::vector<std::string> transitions;  // "<idx> <before> --<event>--> <after>"
  AutomatonState final_state = AutomatonState::q0;
  bool success = false;
};

struct VerdictReport {
  std::map<DataId, UnitReplay> units;
  std::vector<std::string> violations;  // precedence violations among ret=1 events
  bool ok() const { return violations.empty(); }
};

// Replays a trace through the lifecycle automaton and the precedence
// constraints; reports per-event transitions and a per-unit verdict.
VerdictReport validate_trace(std::span<const TraceEvent> events);

}  // namespace dspace
