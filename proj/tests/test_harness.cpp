#include <doctest.h>

#include "dspace/errors.hpp"
#include "dspace/scenario.hpp"
#include "dspace/snapshot.hpp"
#include "dspace/trace.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace dspace;
using namespace dspace::testing;

namespace {

const char* kBasicExchange = R"(# basic exchange
social s1 kind=identity-verification
org o1 roles=provider credentials=s1
org o2 roles=user credentials=s1
mech m1 kind=database
Provide_Data(o1, d1, cond{orgs=[o1,o2]}, header{social=s1}, payload{bytes=alpha}, mechs=[m1]) expect 1
Provide_Rule(o1, rule{id=r1; issuer=o1; on=Use_Data; data=d1; actor=*; guard=cond{}; effect=permit; social=s1}) expect 1
Use_Data(o2, d1, cond{}) expect 1
assert lifecycle d1 q_f
assert count D 1
)";

}  // namespace

TEST_CASE("a minimal scenario parses into one step") {
  const char* text = R"(social s1
org o1 roles=provider
mech m1
Provide_Data(o1, d1, cond{}, header{social=s1}, mechs=[m1])
)";
  Scenario s = parse_scenario(text, "minimal");
  CHECK(s.steps.size() == 1);
  CHECK(s.orgs.size() == 1);
  CHECK(step_kind(s.steps[0]) == OpKind::provide_data);
}

TEST_CASE("an unknown operation is rejected naming the seven valid ones") {
  const char* text = R"(social s1
org o1 roles=provider
Share_Data(o1, d1)
)";
  try {
    parse_scenario(text);
    FAIL("expected a syntax error");
  } catch (const ScenarioSyntaxError& e) {
    CHECK(e.line() == 3);
    std::string what = e.what();
    CHECK(what.find("Share_Data") != std::string::npos);
    CHECK(what.find("Provide_Data") != std::string::npos);
    CHECK(what.find("Stop_Rule") != std::string::npos);
  }
}

TEST_CASE("a forward reference to an undeclared org is rejected") {
  const char* text = R"(social s1
org o1 roles=provider
mech m1
Provide_Data(o9, d1, cond{}, header{social=s1}, mechs=[m1])
)";
  CHECK_THROWS_AS(parse_scenario(text), ScenarioSyntaxError);
}

TEST_CASE("unknown condition clauses are rejected, not ignored") {
  CHECK_THROWS_AS(parse_condition("cond{obligation=erase-after-use}"),
                  ScenarioSyntaxError);
}

TEST_CASE("an inverted window is rejected at parse time") {
  CHECK_THROWS_AS(parse_condition("cond{window=[7,3]}"), ScenarioSyntaxError);
}

TEST_CASE("declarations after the first step are rejected") {
  const char* text = R"(social s1
org o1 roles=provider
mech m1
Provide_Data(o1, d1, cond{}, header{social=s1}, mechs=[m1])
org o2 roles=user
)";
  CHECK_THROWS_AS(parse_scenario(text), ScenarioSyntaxError);
}

TEST_CASE("the basic-exchange scenario runs to active collaboration") {
  Scenario s = parse_scenario(kBasicExchange, "basic");
  RunResult result = run_scenario(s);
  CHECK(result.report.all_pass());
  CHECK(result.state.lifecycle.at(DataId{"d1"}) == AutomatonState::q_f);
  CHECK(result.trace.size() == 3);
}

TEST_CASE("use before provide runs and matches its expected failure") {
  const char* text = R"(social s1
org o1 roles=provider
org o2 roles=user
mech m1
Use_Data(o2, d1, cond{}) expect 0
assert count D 0
)";
  RunResult result = run_scenario(parse_scenario(text, "early-use"));
  CHECK(result.report.all_pass());
  CHECK(result.trace[0].reason == ReasonCode::precedence_violation);
}

TEST_CASE("identical scenario text yields identical traces and hashes") {
  RunResult a = run_scenario(parse_scenario(kBasicExchange, "basic"));
  RunResult b = run_scenario(parse_scenario(kBasicExchange, "basic"));
  CHECK(render_trace(a.trace) == render_trace(b.trace));
  CHECK(state_hash(a.state) == state_hash(b.state));
  CHECK(snapshot(a.state) == snapshot(b.state));
}

TEST_CASE("an expectation mismatch is reported, not thrown") {
  const char* text = R"(social s1
org o1 roles=provider
mech m1
Provide_Data(o1, d1, cond{}, header{social=s1}, mechs=[m1]) expect 0
)";
  RunResult result = run_scenario(parse_scenario(text, "mismatch"));
  CHECK_FALSE(result.report.all_pass());
  REQUIRE(result.report.entries.size() == 1);
  CHECK(result.report.entries[0].expected == "ret=0");
  CHECK(result.report.entries[0].actual == "ret=1 (ok)");
}

TEST_CASE("engine-produced traces validate cleanly") {
  RunResult result = run_scenario(parse_scenario(kBasicExchange, "basic"));
  VerdictReport report = validate_trace(result.trace);
  CHECK(report.violations.empty());
  CHECK(report.units.at(DataId{"d1"}).success);
}

TEST_CASE("trace text round-trips through parse_trace") {
  RunResult result = run_scenario(parse_scenario(kBasicExchange, "basic"));
  std::string text = render_trace(result.trace);
  auto parsed = parse_trace(text);
  REQUIRE(parsed.size() == result.trace.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].clock == result.trace[i].clock);
    CHECK(parsed[i].op == result.trace[i].op);
    CHECK(parsed[i].ret == result.trace[i].ret);
    CHECK(parsed[i].scope == result.trace[i].scope);
  }
}

TEST_CASE("a hand-edited trace with use before provide is flagged") {
  const char* text =
      "t=0 op=Use_Data actor=o2 target=d1 ret=1 reason=ok\n"
      "t=1 op=Provide_Data actor=o1 target=d1 ret=1 reason=ok\n";
  VerdictReport report = validate_trace(parse_trace(text));
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].find("Use_Data") != std::string::npos);
}

TEST_CASE("a trace ending in active collaboration gets the success verdict") {
  const char* text =
      "t=0 op=Provide_Data actor=o1 target=d1 ret=1 reason=ok\n"
      "t=1 op=Provide_Rule actor=o1 target=r1 ret=1 reason=ok scope=d1\n"
      "t=2 op=Use_Data actor=o2 target=d1 ret=1 reason=ok\n";
  VerdictReport report = validate_trace(parse_trace(text));
  CHECK(report.violations.empty());
  const UnitReplay& replay = report.units.at(DataId{"d1"});
  CHECK(replay.success);
  REQUIRE(replay.transitions.size() == 3);
  CHECK(replay.transitions[0] == "0 q0 --Provide_Data=1--> q1");
  CHECK(replay.transitions[2] == "2 q2 --Use_Data=1--> q_f");
}

TEST_CASE("malformed traces are rejected with the offending line") {
  CHECK_THROWS_AS(parse_trace("t=0 op=Nope actor=o target=d ret=1 reason=ok\n"),
                  MalformedTrace);
  CHECK_THROWS_AS(
      parse_trace("t=0 op=Use_Data actor=o target=d ret=1 reason=ok\n"
                  "t=5 op=Use_Data actor=o target=d ret=1 reason=ok\n"),
      MalformedTrace);
}

TEST_CASE("snapshot round-trips to an identical state") {
  RunResult result = run_scenario(parse_scenario(kBasicExchange, "basic"));
  std::string doc = snapshot(result.state);
  DataSpaceState restored = restore(doc);
  CHECK(restored == result.state);
  CHECK(snapshot(restored) == doc);
  CHECK(state_hash(restored) == state_hash(result.state));
}

TEST_CASE("truncated snapshots raise CorruptSnapshot") {
  RunResult result = run_scenario(parse_scenario(kBasicExchange, "basic"));
  std::string doc = snapshot(result.state);
  CHECK_THROWS_AS(restore(doc.substr(0, doc.size() / 2)), CorruptSnapshot);
  CHECK_THROWS_AS(restore("{}"), CorruptSnapshot);
}

TEST_CASE("states differing only in clock hash differently") {
  DataSpaceState a = small_space();
  DataSpaceState b = a;
  b.clock += 1;
  CHECK(state_hash(a) != state_hash(b));
}

TEST_CASE("every engine-produced trace validates cleanly") {
  Gen g(0x5eed0c);
  for (int round = 0; round < 30; ++round) {
    DataSpaceState s = random_space(g);
    std::vector<TraceEvent> trace;
    for (int i = 0; i < 25; ++i) {
      std::uint64_t at = s.clock;
      RandomCall call = random_call(g, s);
      trace.push_back(TraceEvent{at, call.kind, call.actor, call.target,
                                 call.result.ret, call.result.reason, "",
                                 call.result.rule_scope});
      s = call.result.state;
    }
    auto reparsed = parse_trace(render_trace(trace));
    VerdictReport report = validate_trace(reparsed);
    CAPTURE(round);
    CHECK(report.violations.empty());
  }
}

TEST_CASE("condition text round-trips") {
  Gen g(0x5eed0b);
  std::vector<OrgId> orgs{OrgId{"o1"}, OrgId{"o2"}};
  std::vector<SocialMechId> socials{SocialMechId{"s1"}};
  for (int i = 0; i < 200; ++i) {
    Condition c = random_condition(g, orgs, socials);
    CHECK(parse_condition(render_condition(c)) == c);
  }
  CHECK(render_condition(Condition{}) == "cond{}");
}

TEST_CASE("rule text round-trips") {
  Rule r = parse_rule(
      "rule{id=r1; issuer=o1; on=Use_Data; data=d1; actor=*; guard=cond{}; "
      "effect=permit; social=s1}");
  CHECK(r.selector.data == std::set<DataId>{DataId{"d1"}});
  CHECK_FALSE(r.selector.actors.has_value());
  CHECK(parse_rule(render_rule(r)) == r);
}
