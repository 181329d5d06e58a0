#include "dspace/automaton.hpp"

#include <array>
#include <utility>

namespace dspace {

namespace {

constexpr std::array<std::pair<AutomatonState, const char*>, 6> state_names{{
    {AutomatonState::q0, "q0"},
    {AutomatonState::q1, "q1"},
    {AutomatonState::q2, "q2"},
    {AutomatonState::q_f, "q_f"},
    {AutomatonState::q_mod, "q_mod"},
    {AutomatonState::q_stop, "q_stop"},
}};

}  // namespace

std::string to_string(AutomatonState s) {
  for (const auto& [e, name] : state_names)
    if (e == s) return name;
  return "?";
}

bool automaton_state_from_string(const std::string& s, AutomatonState& out) {
  for (const auto& [e, name] : state_names)
    if (s == name) {
      out = e;
      return true;
    }
  return false;
}

AutomatonState step(AutomatonState s, const OpEvent& e) {
  if (e.ret != 1) return s;
  switch (e.kind) {
    case OpKind::provide_data:
      return s == AutomatonState::q0 ? AutomatonState::q1 : s;
    case OpKind::provide_rule:
      return s == AutomatonState::q1 ? AutomatonState::q2 : s;
    case OpKind::use_data:
      return (s == AutomatonState::q2 || s == AutomatonState::q_mod)
                 ? AutomatonState::q_f
                 : s;
    case OpKind::modify_data:
      return s == AutomatonState::q_f ? AutomatonState::q_mod : s;
    case OpKind::stop_data:
      return AutomatonState::q_stop;  // q_* -> q_stop
    case OpKind::stop_rule:
      return s == AutomatonState::q_mod ? AutomatonState::q_stop : s;
    case OpKind::modify_rule:
      return s;  // no transition defined for rule modification
  }
  return s;
}

AutomatonState run(std::span<const OpEvent> trace) {
  AutomatonState s = AutomatonState::q0;
  for (const auto& e : trace) s = step(s, e);
  return s;
}

bool success(std::span<const OpEvent> trace) {
  return run(trace) == AutomatonState::q_f;
}

bool reachable_qf(AutomatonState from) {
  // BFS over the ret=1 transition relation.
  bool visited[6] = {};
  AutomatonState queue[6];
  std::size_t head = 0, tail = 0;
  queue[tail++] = from;
  visited[static_cast<int>(from)] = true;
  while (head < tail) {
    AutomatonState s = queue[head++];
    if (s == AutomatonState::q_f) return true;
    for (OpKind k : all_op_kinds) {
      AutomatonState next = step(s, OpEvent{k, OrgId{}, "", 1});
      if (!visited[static_cast<int>(next)]) {
        visited[static_cast<int>(next)] = true;
        queue[tail++] = next;
      }
    }
  }
  return false;
}

}  // namespace dspace
