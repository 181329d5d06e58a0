// Acceptance suite: one pass/fail line per criterion. Exit code 0 iff all
// criteria hold.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "dspace/federation.hpp"
#include "dspace/governance.hpp"
#include "dspace/operations.hpp"
#include "dspace/refinement.hpp"
#include "dspace/scenario.hpp"
#include "dspace/snapshot.hpp"
#include "dspace/trace.hpp"
#include "../support/fixtures.hpp"
#include "../support/generators.hpp"

namespace fs = std::filesystem;
using namespace dspace;
using namespace dspace::testing;

namespace {

std::string g_scenario_dir = "scenarios";

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool unchanged_modulo_clock(const DataSpaceState& pre,
                            const DataSpaceState& post) {
  DataSpaceState adjusted = post;
  adjusted.clock = pre.clock;
  return state_hash(adjusted) == state_hash(pre);
}

// --- criterion 1: atomicity of failure branches -----------------------------

Outcome atomicity() {
  Gen g(0xAC01);
  std::size_t calls = 0;
  std::size_t failures = 0;
  while (calls < 10000) {
    DataSpaceState s = random_space(g);
    for (int i = 0; i < 50 && calls < 10000; ++i) {
      RandomCall call = random_call(g, s);
      ++calls;
      if (call.result.ret == 0) {
        ++failures;
        if (!unchanged_modulo_clock(s, call.result.state))
          return {false, "state delta on failed " + to_string(call.kind) +
                             " at call " + std::to_string(calls)};
      }
      if (call.result.state.clock != s.clock + 1)
        return {false, "clock did not advance by exactly 1"};
      s = call.result.state;
    }
  }
  return {true, std::to_string(calls) + " calls, " + std::to_string(failures) +
                    " failures, every failure unchanged modulo clock"};
}

// --- criterion 2: exhaustive precedence against the history oracle ----------

Outcome precedence_exhaustive() {
  // Universe: one org, one unit, one match-all permit rule, wildcard
  // conditions everywhere.
  const OrgId o1{"o1"};
  const DataId d1{"d1"};
  const RuleId r1{"r1"};
  DataSpaceState base = new_data_space(
      {org("o1", {RoleTag::provider, RoleTag::user}, {"s1"})}, {mech("m1")},
      {social("s1")});

  auto make_unit = [&] { return unit("d1", "s1", "payload"); };
  auto make_rule = [&] { return permit_use("r1", "o1", "", "s1"); };

  enum Call { PD, MD, SD, UD, PR, MR, SR };
  const std::vector<Call> all_calls{PD, MD, SD, UD, PR, MR, SR};

  // Independent oracle over the history: current provision and rule
  // presence fully determine admissibility in this universe.
  struct Oracle {
    bool d_in_D = false;
    bool r_in_R = false;
    int ret(Call c) const {
      switch (c) {
        case PD: return d_in_D ? 0 : 1;
        case MD: return d_in_D ? 1 : 0;
        case SD: return d_in_D ? 1 : 0;
        case UD: return d_in_D && r_in_R ? 1 : 0;
        case PR: return r_in_R ? 0 : 1;
        case MR: return r_in_R ? 1 : 0;
        case SR: return r_in_R ? 1 : 0;
      }
      return 0;
    }
    void advance(Call c, int r) {
      if (r != 1) return;
      if (c == PD) d_in_D = true;
      if (c == SD) d_in_D = false;
      if (c == PR) r_in_R = true;
      if (c == SR) r_in_R = false;
    }
  };

  auto apply = [&](const DataSpaceState& s, Call c) -> OpResult {
    switch (c) {
      case PD: return provide_data(s, o1, make_unit(), {});
      case MD: {
        DataUnit d_new = s.units.contains(d1) ? s.units.at(d1) : make_unit();
        return modify_data(s, o1, d1, d_new, {});
      }
      case SD: return stop_data(s, o1, d1, {});
      case UD: return use_data(s, o1, d1, {}, std::nullopt);
      case PR: return provide_rule(s, o1, make_rule(), {});
      case MR: return modify_rule(s, o1, r1, make_rule(), {});
      case SR: return stop_rule(s, o1, r1, {});
    }
    return {};
  };

  std::size_t sequences = 0;
  std::size_t ops = 0;
  std::string failure;
  std::function<bool(const DataSpaceState&, const Oracle&, std::size_t)> walk =
      [&](const DataSpaceState& s, const Oracle& oracle, std::size_t depth) {
        ++sequences;
        if (depth == 4) return true;
        for (Call c : all_calls) {
          OpResult res = apply(s, c);
          ++ops;
          int expected = oracle.ret(c);
          if (res.ret != expected) {
            failure = "divergence at depth " + std::to_string(depth) +
                      " call " + std::to_string(static_cast<int>(c)) +
                      ": engine " + std::to_string(res.ret) + ", oracle " +
                      std::to_string(expected);
            return false;
          }
          Oracle next = oracle;
          next.advance(c, res.ret);
          if (!walk(res.state, next, depth + 1)) return false;
        }
        return true;
      };
  if (!walk(base, Oracle{}, 0)) return {false, failure};
  return {true, std::to_string(sequences) + " sequences (" +
                    std::to_string(ops) + " operations), zero divergences"};
}

// --- criterion 3: automaton success against reachability oracle -------------

Outcome automaton_exhaustive() {
  using S = AutomatonState;
  static const std::vector<std::tuple<S, OpKind, S>> edges{
      {S::q0, OpKind::provide_data, S::q1},
      {S::q1, OpKind::provide_rule, S::q2},
      {S::q2, OpKind::use_data, S::q_f},
      {S::q_f, OpKind::modify_data, S::q_mod},
      {S::q_mod, OpKind::use_data, S::q_f},
      {S::q0, OpKind::stop_data, S::q_stop},
      {S::q1, OpKind::stop_data, S::q_stop},
      {S::q2, OpKind::stop_data, S::q_stop},
      {S::q_f, OpKind::stop_data, S::q_stop},
      {S::q_mod, OpKind::stop_data, S::q_stop},
      {S::q_stop, OpKind::stop_data, S::q_stop},
      {S::q_mod, OpKind::stop_rule, S::q_stop},
  };
  auto oracle_step = [&](S s, OpKind k, int ret) {
    if (ret != 1) return s;
    for (const auto& [from, kind, to] : edges)
      if (from == s && kind == k) return to;
    return s;
  };

  // 14 event symbols: 7 operations x ret in {0,1}.
  struct Symbol {
    OpKind kind;
    int ret;
  };
  std::vector<Symbol> symbols;
  for (OpKind k : all_op_kinds)
    for (int ret : {0, 1}) symbols.push_back({k, ret});

  std::size_t sequences = 0;
  std::string failure;
  std::vector<OpEvent> trace;
  std::function<bool(S, std::size_t)> walk = [&](S folded, std::size_t depth) {
    ++sequences;
    if (success(trace) != (folded == S::q_f)) {
      failure = "success divergence on a sequence of length " +
                std::to_string(trace.size());
      return false;
    }
    if (depth == 4) return true;
    for (const Symbol& sym : symbols) {
      trace.push_back(OpEvent{sym.kind, OrgId{"o"}, "d", sym.ret});
      if (!walk(oracle_step(folded, sym.kind, sym.ret), depth + 1))
        return false;
      trace.pop_back();
    }
    return true;
  };
  if (!walk(S::q0, 0)) return {false, failure};

  // reachable_qf against BFS over the same edge list.
  for (S s : {S::q0, S::q1, S::q2, S::q_f, S::q_mod, S::q_stop}) {
    std::set<S> seen{s};
    std::vector<S> queue{s};
    bool reach = false;
    while (!queue.empty()) {
      S cur = queue.back();
      queue.pop_back();
      if (cur == S::q_f) {
        reach = true;
        break;
      }
      for (const auto& [from, kind, to] : edges) {
        (void)kind;
        if (from == cur && !seen.contains(to)) {
          seen.insert(to);
          queue.push_back(to);
        }
      }
    }
    if (reachable_qf(s) != reach)
      return {false, "reachable_qf divergence at " + to_string(s)};
  }
  return {true, std::to_string(sequences) +
                    " event sequences checked, zero divergences"};
}

// --- criterion 4: basic-exchange conjunction vs automaton -------------------

Outcome basic_exchange_coherence() {
  Gen g(0xAC04);
  std::size_t runs = 0;
  std::size_t successes = 0;
  for (int i = 0; i < 1200; ++i) {
    DataSpaceState s = random_space(g);
    auto orgs = org_ids(s);
    auto socials = social_ids(s);
    const OrgId provider = orgs.front();
    const OrgId user = g.pick(orgs);

    Condition cond_p = random_condition(g, orgs, socials);
    Condition cond_u = random_condition(g, orgs, socials);
    DataUnit d = random_unit(g, s, 1);
    std::optional<std::string> purpose;
    if (g.chance(0.6)) purpose = g.pick(purpose_pool);

    std::vector<OpEvent> events;
    auto provide = provide_data(s, provider, d, cond_p);
    events.push_back(
        OpEvent{OpKind::provide_data, provider, d.id.value, provide.ret});
    s = provide.state;

    bool rule_matched = false;
    if (g.chance(0.85)) {
      Rule rule = permit_use("r1", provider.value,
                             g.chance(0.7) ? d.id.value : "", socials[0].value);
      if (g.chance(0.15)) rule.effect = RuleEffect::deny;
      auto ruled = provide_rule(s, provider, rule, {});
      for (const auto& in_scope : ruled.rule_scope)
        rule_matched |= in_scope == d.id;
      if (ruled.ret == 1 && rule_matched)
        events.push_back(OpEvent{OpKind::provide_rule, provider, "r1", 1});
      s = ruled.state;
    }

    RequestContext ctx = detail::make_context(
        s, user, s.orgs.at(user).credentials, d.id, purpose);
    bool compat = s.provisions.contains(d.id) &&
                  compatible(s.provisions.at(d.id), cond_u, ctx);
    auto use = use_data(s, user, d.id, cond_u, purpose);
    events.push_back(OpEvent{OpKind::use_data, user, d.id.value, use.ret});

    bool success_basic = provide.ret == 1 && use.ret == 1 && compat;
    if (success_basic != success(events))
      return {false, "divergence at scenario " + std::to_string(i)};
    ++runs;
    if (success_basic) ++successes;
  }
  if (successes < 50 || successes == runs)
    return {false, "degenerate sample: " + std::to_string(successes) + "/" +
                       std::to_string(runs) + " successes"};
  return {true, std::to_string(runs) + " scenarios, " +
                    std::to_string(successes) +
                    " successful exchanges, zero divergences"};
}

// --- criterion 5: cross-space success equivalence ----------------------------

Outcome mutual_recognition() {
  Gen g(0xAC05);
  std::size_t runs = 0;
  std::size_t recognized_equal = 0;
  std::size_t divergences_expected = 0;
  bool non_interop_reported = false;
  bool interop_reported = false;

  for (int i = 0; i < 520; ++i) {
    // Space A and its transaction.
    std::vector<SocialMechanism> socials_a{social("sA1"), social("sA2")};
    Organization pa = org("pa", {RoleTag::provider}, {"sA1", "sA2"});
    Organization ua = org("ua", {RoleTag::user}, {"sA1", "sA2"});
    DataSpaceState a = new_data_space({pa, ua}, {mech("mA")}, socials_a);

    bool partial = g.chance(0.25);
    const SocialMechId dropped{"sA2"};

    Condition cond_p;
    if (g.chance(0.5)) cond_p.purposes = std::set<std::string>{"analytics"};
    if (g.chance(0.4)) cond_p.valid_window = ClockWindow{0, 20};
    if (partial || g.chance(0.4)) cond_p.required_social = dropped;

    Condition cond_u;
    if (g.chance(0.3)) cond_u.purposes = std::set<std::string>{"analytics"};

    DataUnit d = unit("d", "sA1", "content", {"mA"});
    std::optional<std::string> purpose;
    if (cond_p.purposes && g.chance(0.8)) purpose = "analytics";

    auto pd_a = provide_data(a, pa.id, d, cond_p);
    a = pd_a.state;
    auto pr_a = provide_rule(a, pa.id, permit_use("r", "pa", "d", "sA1"), {});
    a = pr_a.state;
    auto ud_a = use_data(a, ua.id, DataId{"d"}, cond_u, purpose);
    a = ud_a.state;
    bool success_a = pd_a.ret == 1 && pr_a.ret == 1 && ud_a.ret == 1;

    // Recognition: sA1<->sB1 always; sA2<->sB2 unless this is a partial run.
    std::set<SocialMechId> recognized{SocialMechId{"sA1"}};
    if (!partial) recognized.insert(SocialMechId{"sA2"});

    // Space B mirrors A's structure; org credentials are derived through
    // the recognition relation (sAk -> sBk).
    auto translate_social = [&](const SocialMechId& s) {
      return SocialMechId{"sB" + s.value.substr(2)};
    };
    auto derive_creds = [&](const Organization& o) {
      std::set<std::string> out;
      for (const auto& c : o.credentials)
        if (recognized.contains(c)) out.insert(translate_social(c).value);
      return out;
    };
    DataSpaceState b = new_data_space(
        {org("pb", {RoleTag::provider}, derive_creds(pa)),
         org("ub", {RoleTag::user}, derive_creds(ua))},
        {mech("mB")}, {social("sB1"), social("sB2")});

    auto translate_cond = [&](Condition c) {
      if (c.allowed_orgs) {
        std::set<OrgId> orgs;
        for (const auto& o : *c.allowed_orgs)
          orgs.insert(o == pa.id ? OrgId{"pb"} : OrgId{"ub"});
        c.allowed_orgs = std::move(orgs);
      }
      if (c.required_social)
        c.required_social = translate_social(*c.required_social);
      return c;
    };

    DataUnit d_b = unit("d_b", "sB1", "content", {"mB"});
    auto pd_b = provide_data(b, OrgId{"pb"}, d_b, translate_cond(cond_p));
    b = pd_b.state;
    auto pr_b = provide_rule(b, OrgId{"pb"},
                             permit_use("r", "pb", "d_b", "sB1"), {});
    b = pr_b.state;
    auto ud_b = use_data(b, OrgId{"ub"}, DataId{"d_b"}, translate_cond(cond_u),
                         purpose);
    b = ud_b.state;
    bool success_b = pd_b.ret == 1 && pr_b.ret == 1 && ud_b.ret == 1;

    ++runs;
    if (!partial) {
      if (success_a != success_b)
        return {false, "recognized run " + std::to_string(i) +
                           " diverged: A=" + std::to_string(success_a) +
                           " B=" + std::to_string(success_b)};
      ++recognized_equal;
    } else if (success_a) {
      // The transaction requires the unrecognized social mechanism, so the
      // translated run must fail.
      if (success_b)
        return {false, "partial-recognition run " + std::to_string(i) +
                           " did not diverge"};
      ++divergences_expected;
    }

    // Federated verdicts over the bridge built from the evolved states.
    FederationBridge bridge{a, b, {}};
    bridge = establish_recognition(std::move(bridge), SocialMechId{"sA1"},
                                   SocialMechId{"sB1"});
    if (!partial)
      bridge = establish_recognition(std::move(bridge), SocialMechId{"sA2"},
                                     SocialMechId{"sB2"});
    if (success_a && a.units.contains(DataId{"d"})) {
      InteropVerdict v = check_interoperability(bridge, DataId{"d"});
      if (partial && cond_p.required_social == dropped) {
        if (v.interoperable)
          return {false, "non-recognized case reported interoperable"};
        non_interop_reported = true;
      }
      if (!partial && v.interoperable) {
        interop_reported = true;
        auto replay = federated_use_data(bridge, v.witness->first, DataId{"d"},
                                         v.witness->second, std::nullopt);
        if (replay.ret != 1) return {false, "witness replay failed"};
      }
    }
  }

  if (divergences_expected == 0 || !non_interop_reported || !interop_reported)
    return {false, "sample did not exercise both recognition outcomes"};
  return {true,
          std::to_string(runs) + " bridge transactions; " +
              std::to_string(recognized_equal) +
              " recognized runs success-equal; " +
              std::to_string(divergences_expected) +
              " non-recognized divergences, all reported non-interoperable"};
}

// --- criterion 6: curated decomposition classification -----------------------

Outcome decomposition_classification() {
  auto base = [] {
    DataSpaceState s = new_data_space(
        {org("o1", {RoleTag::provider}, {"s1"}),
         org("o2", {RoleTag::user}, {"s1"}),
         org("o3", {RoleTag::user}, {"s1"})},
        {mech("m1", MechKind::database), mech("m2", MechKind::file)},
        {social("s1"), social("s2", "policy-enforcement")});
    Condition prov;
    prov.allowed_orgs = std::set<OrgId>{OrgId{"o1"}, OrgId{"o2"}};
    prov.purposes = std::set<std::string>{"analytics"};
    prov.valid_window = ClockWindow{0, 40};
    s = provide_data(s, OrgId{"o1"}, unit("d1", "s1", "alphabeta"), prov).state;
    s = provide_rule(s, OrgId{"o1"}, permit_use("r1", "o1", "d1"), {}).state;
    return s;
  }();

  auto children = [] {
    return std::vector<DataUnit>{unit("d1a", "s1", "alpha"),
                                 unit("d1b", "s1", "beta")};
  };

  struct Case {
    std::string name;
    bool expect_preserving;
    RefinedSpacePair pair;
  };
  std::vector<Case> cases;

  {  // P1: identity
    RefinedSpacePair p;
    p.abstract_space = base;
    p.refined_space = base;
    cases.push_back({"identity", true, std::move(p)});
  }
  {  // P2: payload partition
    cases.push_back({"payload-partition", true,
                     decompose_data(base, DataId{"d1"}, children())});
  }
  {  // P3: mechanism split keeping the capability tag
    cases.push_back({"mechanism-split", true,
                     decompose_mech(base, MechId{"m1"},
                                    {mech("m1a", MechKind::database),
                                     mech("m1b", MechKind::api_endpoint)})});
  }
  {  // P4: social split with re-targeted references
    cases.push_back({"social-split", true,
                     decompose_social(base, SocialMechId{"s1"},
                                      {social("s1a"), social("s1b")})});
  }
  {  // P5: two composed stages
    RefinedSpacePair first = decompose_data(base, DataId{"d1"}, children());
    RefinedSpacePair second =
        decompose_mech(first.refined_space, MechId{"m1"},
                       {mech("m1a", MechKind::database),
                        mech("m1b", MechKind::stream)});
    cases.push_back({"two-stage", true, chain(first, second)});
  }
  {  // V1: dropped social attribute
    RefinedSpacePair p = decompose_data(base, DataId{"d1"}, children());
    p.refined_space.units.at(DataId{"d1a"})
        .header.attributes.erase(Header::social_attribute);
    p.refined_space.units.at(DataId{"d1b"})
        .header.attributes.erase(Header::social_attribute);
    cases.push_back({"dropped-social", false, std::move(p)});
  }
  {  // V2: weakened allowed_orgs
    RefinedSpacePair p = decompose_data(base, DataId{"d1"}, children());
    p.refined_space.provisions.at(DataId{"d1a"}).allowed_orgs.reset();
    p.refined_space.provisions.at(DataId{"d1b"}).allowed_orgs.reset();
    cases.push_back({"weakened-orgs", false, std::move(p)});
  }
  {  // V3: lost capability tag
    RefinedSpacePair p;
    p.abstract_space = base;
    DataSpaceState refined = base;
    refined.mechs.erase(MechId{"m1"});
    refined.mechs.emplace(MechId{"m1a"}, mech("m1a", MechKind::api_endpoint));
    refined.mechs.emplace(MechId{"m1b"}, mech("m1b", MechKind::stream));
    auto& unit_mechs = refined.units.at(DataId{"d1"}).mechanisms;
    unit_mechs.erase(MechId{"m1"});
    unit_mechs.insert(MechId{"m1a"});
    unit_mechs.insert(MechId{"m1b"});
    p.refined_space = std::move(refined);
    p.mapping.mechs[MechId{"m1"}] = {MechId{"m1a"}, MechId{"m1b"}};
    cases.push_back({"lost-capability", false, std::move(p)});
  }
  {  // V4: narrowed window
    RefinedSpacePair p = decompose_data(base, DataId{"d1"}, children());
    p.refined_space.provisions.at(DataId{"d1a"}).valid_window =
        ClockWindow{0, 2};
    p.refined_space.provisions.at(DataId{"d1b"}).valid_window =
        ClockWindow{0, 2};
    cases.push_back({"narrowed-window", false, std::move(p)});
  }
  {  // V5: broken payload partition
    RefinedSpacePair p = decompose_data(base, DataId{"d1"}, children());
    p.refined_space.units.at(DataId{"d1b"}).payload =
        Payload::from_bytes("banana");
    cases.push_back({"broken-partition", false, std::move(p)});
  }

  std::size_t correct = 0;
  std::string misses;
  for (const auto& c : cases) {
    PreservationReport report =
        check_constraint_preserving(c.pair, default_suite(c.pair));
    if (report.preserving == c.expect_preserving) {
      ++correct;
    } else {
      misses += " " + c.name;
    }
  }
  if (correct != cases.size())
    return {false,
            std::to_string(correct) + "/10 classified; missed:" + misses};
  return {true, "10/10 decompositions classified correctly"};
}

// --- criterion 7: determinism and persistence --------------------------------

Outcome determinism_persistence() {
  fs::path dir(g_scenario_dir);
  if (!fs::exists(dir))
    return {false, "scenario directory missing: " + dir.string()};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".dss")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.size() < 5)
    return {false, "scenario corpus too small: " + std::to_string(files.size())};

  auto read_file = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };

  for (const auto& f : files) {
    std::string text = read_file(f);
    RunResult first = run_scenario(parse_scenario(text, f.stem().string()));
    RunResult second = run_scenario(parse_scenario(text, f.stem().string()));
    if (render_trace(first.trace) != render_trace(second.trace))
      return {false, "trace not reproducible for " + f.filename().string()};
    if (snapshot(first.state) != snapshot(second.state))
      return {false, "snapshot not reproducible for " + f.filename().string()};
    fs::path golden = dir / "golden" / (f.stem().string() + ".trace");
    if (!fs::exists(golden))
      return {false, "missing golden trace for " + f.filename().string()};
    if (read_file(golden) != render_trace(first.trace))
      return {false, "golden trace mismatch for " + f.filename().string()};
  }

  Gen g(0xAC07);
  for (int i = 0; i < 100; ++i) {
    DataSpaceState s = random_space(g);
    for (int k = 0; k < 12; ++k) s = random_call(g, s).result.state;
    DataSpaceState restored = restore(snapshot(s));
    if (state_hash(restored) != state_hash(s) || !(restored == s))
      return {false,
              "snapshot round trip diverged at state " + std::to_string(i)};
  }
  return {true, std::to_string(files.size()) +
                    " golden scenarios byte-stable; 100 round trips hash-equal"};
}

// --- criterion 8: sovereignty across randomized suites -----------------------

Outcome sovereignty() {
  Gen g(0xAC08);
  std::size_t checked = 0;
  for (int round = 0; round < 200; ++round) {
    DataSpaceState s = random_space(g);
    for (int i = 0; i < 60; ++i) {
      RandomCall call = random_call(g, s);
      if (call.result.ret == 1) {
        if (call.kind == OpKind::modify_data ||
            call.kind == OpKind::stop_data) {
          ++checked;
          auto it = s.provider_of.find(DataId{call.target});
          if (it == s.provider_of.end() || it->second != call.actor)
            return {false, to_string(call.kind) +
                               " succeeded for non-provider " +
                               call.actor.value};
        }
        if (call.kind == OpKind::modify_rule ||
            call.kind == OpKind::stop_rule) {
          ++checked;
          auto it = s.issuer_of.find(RuleId{call.target});
          if (it == s.issuer_of.end() || it->second != call.actor)
            return {false, to_string(call.kind) +
                               " succeeded for non-issuer " + call.actor.value};
        }
      }
      s = call.result.state;
    }
  }
  if (checked < 500)
    return {false, "sample too small: only " + std::to_string(checked) +
                       " successful modify/stop calls"};
  return {true, std::to_string(checked) +
                    " successful modify/stop calls, all by the owning org"};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--scenario-dir") g_scenario_dir = argv[i + 1];

  struct Criterion {
    int number;
    std::string name;
    std::function<Outcome()> check;
  };
  std::vector<Criterion> criteria{
      {1, "atomicity of failure branches", atomicity},
      {2, "exhaustive precedence vs history oracle", precedence_exhaustive},
      {3, "automaton success vs reachability oracle", automaton_exhaustive},
      {4, "basic-exchange conjunction vs automaton", basic_exchange_coherence},
      {5, "cross-space success equivalence", mutual_recognition},
      {6, "decomposition classification", decomposition_classification},
      {7, "determinism and persistence", determinism_persistence},
      {8, "sovereignty of modify/stop", sovereignty},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion "
              << c.number << ": " << c.name << " — " << outcome.detail << " ("
              << ms << " ms)\n";
    if (!outcome.pass) ++failed;
  }
  std::cout << "SUMMARY: " << (criteria.size() - failed) << "/"
            << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
