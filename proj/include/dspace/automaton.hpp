#pragma once

#include <span>
#include <string>
#include <vector>

#include "dspace/ids.hpp"

namespace dspace {

// Transaction lifecycle states. q_stop is absorbing.
enum class AutomatonState {
  q0,      // Initial: no data provision active
  q1,      // Data Provided
  q2,      // Rules Established
  q_f,     // Active Collaboration
  q_mod,   // Under Modification
  q_stop,  // Terminated
};

std::string to_string(AutomatonState s);
bool automaton_state_from_string(const std::string& s, AutomatonState& out);

// One attempted operation as seen by the lifecycle automaton. target is the
// data-unit or rule id the call addressed; step() only inspects kind and ret.
struct OpEvent {
  OpKind kind = OpKind::provide_data;
  OrgId actor;
  std::string target;
  int ret = 0;
  bool operator==(const OpEvent&) const = default;
};

// Total transition function. Events with ret=0, and ret=1 events with no
// defined transition from s, leave s unchanged.
AutomatonState step(AutomatonState s, const OpEvent& e);

// Left fold of step() from q0.
AutomatonState run(std::span<const OpEvent> trace);

// True iff run(trace) reaches the active-collaboration state.
bool success(std::span<const OpEvent> trace);

// Graph reachability of q_f over the ret=1 transition relation.
bool reachable_qf(AutomatonState from);

}  // namespace dspace
