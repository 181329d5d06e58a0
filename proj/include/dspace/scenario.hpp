#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dspace/governance.hpp"
#include "dspace/model.hpp"
#include "dspace/operations.hpp"
#include "dspace/trace.hpp"

namespace dspace {

// One parsed operation call. Modify_Data carries overrides; omitted parts
// keep the unit's current header/payload/mechanisms.
struct ProvideDataStep {
  OrgId actor;
  DataUnit unit;
  Condition cond;
};
struct ModifyDataStep {
  OrgId actor;
  DataId id;
  std::optional<Header> header;
  std::optional<Payload> payload;
  std::optional<std::set<MechId>> mechanisms;
  Condition cond;
};
struct StopDataStep {
  OrgId actor;
  DataId id;
  Condition cond;
};
struct UseDataStep {
  OrgId actor;
  DataId id;
  Condition cond;
  std::optional<std::string> purpose;
};
struct ProvideRuleStep {
  OrgId actor;
  Rule rule;
  Condition cond;
};
struct ModifyRuleStep {
  OrgId actor;
  RuleId id;
  Rule rule;
  Condition cond;
};
struct StopRuleStep {
  OrgId actor;
  RuleId id;
  Condition cond;
};

using StepCall =
    std::variant<ProvideDataStep, ModifyDataStep, StopDataStep, UseDataStep,
                 ProvideRuleStep, ModifyRuleStep, StopRuleStep>;

struct Step {
  StepCall call;
  std::optional<int> expect;  // expected ret, when declared
};

OpKind step_kind(const Step& s);
OrgId step_actor(const Step& s);
std::string step_target(const Step& s);

struct LifecycleAssert {
  DataId id;
  AutomatonState state = AutomatonState::q0;
};
struct CountAssert {
  char component = 'D';  // one of O M D S R
  std::size_t expected = 0;
};
using ScenarioAssert = std::variant<LifecycleAssert, CountAssert>;

// A replayable experiment: setup declarations, ordered operation calls with
// optional expected outcomes, and terminal checks.
struct Scenario {
  std::string name;
  std::vector<Organization> orgs;
  std::vector<DataProvisionMechanism> mechs;
  std::vector<SocialMechanism> socials;
  std::vector<Step> steps;
  std::vector<ScenarioAssert> asserts;
};

// Line-oriented scenario grammar; see README. Throws ScenarioSyntaxError
// with line/column on rejection. Organization, mechanism, and social ids
// must be declared before use; data and rule ids are created by steps and
// may be targeted before creation (the engine answers with a reason code).
Scenario parse_scenario(std::string_view text, std::string name = "scenario");

struct AssertionOutcome {
  std::string what;
  std::string expected;
  std::string actual;
  bool pass = false;
};
struct AssertionReport {
  std::vector<AssertionOutcome> entries;
  bool all_pass() const;
};

struct RunResult {
  DataSpaceState state;
  std::vector<TraceEvent> trace;
  AssertionReport report;
};

// Deterministic execution: same scenario text, same trace, byte for byte.
RunResult run_scenario(const Scenario& s);

// Runs steps against an existing state (used by refinement dual execution).
RunResult run_steps(const DataSpaceState& initial, std::span<const Step> steps);

// Applies one step; the uniform entry point behind run_scenario.
OpResult apply_step(const DataSpaceState& state, const Step& step);

// Textual forms used inside scenario and bridge files.
std::string render_condition(const Condition& c);
Condition parse_condition(std::string_view text);  // "cond{...}"
std::string render_rule(const Rule& r);
Rule parse_rule(std::string_view text);  // "rule{...}"

}  // namespace dspace
