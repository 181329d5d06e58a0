#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dspace/errors.hpp"
#include "dspace/federation.hpp"
#include "dspace/governance.hpp"
#include "dspace/refinement.hpp"
#include "dspace/scenario.hpp"
#include "dspace/snapshot.hpp"

namespace py = pybind11;
using namespace dspace;

namespace {

Condition condition_from_dict(const py::dict& d) {
  Condition c;
  for (auto item : d) {
    std::string key = py::cast<std::string>(item.first);
    if (key == "orgs") {
      std::set<OrgId> orgs;
      for (auto o : py::cast<py::list>(item.second))
        orgs.insert(OrgId{py::cast<std::string>(o)});
      c.allowed_orgs = std::move(orgs);
    } else if (key == "purposes") {
      std::set<std::string> ps;
      for (auto p : py::cast<py::list>(item.second))
        ps.insert(py::cast<std::string>(p));
      c.purposes = std::move(ps);
    } else if (key == "window") {
      auto pair = py::cast<py::sequence>(item.second);
      c.valid_window = ClockWindow{py::cast<std::uint64_t>(pair[0]),
                                   py::cast<std::uint64_t>(pair[1])};
    } else if (key == "social") {
      c.required_social = SocialMechId{py::cast<std::string>(item.second)};
    } else if (key == "max_uses") {
      c.max_uses = py::cast<std::uint64_t>(item.second);
    } else {
      throw py::value_error("unknown condition clause '" + key + "'");
    }
  }
  return c;
}

RequestContext context_from_dict(const py::dict& d) {
  RequestContext ctx;
  for (auto item : d) {
    std::string key = py::cast<std::string>(item.first);
    if (key == "actor") ctx.actor = OrgId{py::cast<std::string>(item.second)};
    else if (key == "clock") ctx.clock = py::cast<std::uint64_t>(item.second);
    else if (key == "credentials")
      for (auto s : py::cast<py::list>(item.second))
        ctx.actor_credentials.insert(SocialMechId{py::cast<std::string>(s)});
    else if (key == "uses_so_far")
      ctx.uses_so_far = py::cast<std::uint64_t>(item.second);
    else if (key == "purpose")
      ctx.purpose = py::cast<std::string>(item.second);
    else if (key == "subject_socials")
      for (auto s : py::cast<py::list>(item.second))
        ctx.subject_socials.insert(SocialMechId{py::cast<std::string>(s)});
    else
      throw py::value_error("unknown context field '" + key + "'");
  }
  return ctx;
}

py::tuple op_outcome(const OpResult& r) {
  return py::make_tuple(r.ret, to_string(r.reason));
}

// Mutable wrapper over the immutable state value: each operation rebinds
// the held state to the operation's post-state.
class Space {
 public:
  Space() = default;
  explicit Space(DataSpaceState state) : state_(std::move(state)) {}

  static Space from_snapshot(const std::string& text) {
    return Space(restore(text));
  }

  void add_org(const std::string& id, const std::vector<std::string>& roles,
               const std::vector<std::string>& credentials) {
    Organization org;
    org.id = OrgId{id};
    for (const auto& r : roles) {
      RoleTag t;
      if (!role_from_string(r, t)) throw py::value_error("unknown role " + r);
      org.roles.insert(t);
    }
    for (const auto& c : credentials) {
      SocialMechId s{c};
      if (!state_.socials.contains(s)) throw DanglingReference(c);
      org.credentials.insert(s);
    }
    state_.orgs[org.id] = std::move(org);
  }

  void add_mech(const std::string& id, const std::string& kind) {
    DataProvisionMechanism mech;
    mech.id = MechId{id};
    if (!mech_kind_from_string(kind, mech.kind))
      throw py::value_error("unknown mechanism kind " + kind);
    state_.mechs[mech.id] = mech;
  }

  void add_social(const std::string& id, const std::string& kind) {
    state_.socials[SocialMechId{id}] = SocialMechanism{SocialMechId{id}, kind};
  }

  py::tuple provide_data(const std::string& actor, const std::string& id,
                         const py::dict& cond, const std::string& social,
                         const std::string& payload,
                         const std::vector<std::string>& mechanisms) {
    DataUnit unit;
    unit.id = DataId{id};
    unit.header.set_social(SocialMechId{social});
    unit.payload = Payload::from_bytes(payload);
    for (const auto& m : mechanisms) unit.mechanisms.insert(MechId{m});
    OpResult r = dspace::provide_data(state_, OrgId{actor}, unit,
                                      condition_from_dict(cond));
    state_ = r.state;
    return op_outcome(r);
  }

  py::tuple modify_data(const std::string& actor, const std::string& id,
                        const py::dict& cond) {
    DataUnit d_new;
    d_new.id = DataId{id};
    if (auto it = state_.units.find(d_new.id); it != state_.units.end())
      d_new = it->second;
    OpResult r = dspace::modify_data(state_, OrgId{actor}, DataId{id}, d_new,
                                     condition_from_dict(cond));
    state_ = r.state;
    return op_outcome(r);
  }

  py::tuple stop_data(const std::string& actor, const std::string& id) {
    OpResult r = dspace::stop_data(state_, OrgId{actor}, DataId{id}, {});
    state_ = r.state;
    return op_outcome(r);
  }

  py::tuple use_data(const std::string& actor, const std::string& id,
                     const py::dict& cond,
                     const std::optional<std::string>& purpose) {
    OpResult r = dspace::use_data(state_, OrgId{actor}, DataId{id},
                                  condition_from_dict(cond), purpose);
    state_ = r.state;
    return op_outcome(r);
  }

  py::tuple provide_rule(const std::string& actor, const std::string& rule_text) {
    OpResult r =
        dspace::provide_rule(state_, OrgId{actor}, parse_rule(rule_text), {});
    state_ = r.state;
    return op_outcome(r);
  }

  py::tuple modify_rule(const std::string& actor, const std::string& id,
                        const std::string& rule_text) {
    OpResult r = dspace::modify_rule(state_, OrgId{actor}, RuleId{id},
                                     parse_rule(rule_text), {});
    state_ = r.state;
    return op_outcome(r);
  }

  py::tuple stop_rule(const std::string& actor, const std::string& id) {
    OpResult r = dspace::stop_rule(state_, OrgId{actor}, RuleId{id}, {});
    state_ = r.state;
    return op_outcome(r);
  }

  std::string lifecycle(const std::string& id) const {
    auto it = state_.lifecycle.find(DataId{id});
    return it == state_.lifecycle.end() ? "none" : to_string(it->second);
  }

  std::uint64_t clock() const { return state_.clock; }
  std::string to_snapshot() const { return snapshot(state_); }
  std::string hash() const { return state_hash(state_); }

  py::list validate() const {
    py::list out;
    for (const auto& v : validate_state(state_)) {
      py::dict d;
      d["code"] = v.code;
      d["subject"] = v.subject;
      d["detail"] = v.detail;
      out.append(std::move(d));
    }
    return out;
  }

  const DataSpaceState& state() const { return state_; }

 private:
  DataSpaceState state_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "data-space collaboration engine";

  py::register_exception<DanglingReference>(m, "DanglingReferenceError");
  py::register_exception<UnionViolation>(m, "UnionViolationError");
  py::register_exception<TranslationFailure>(m, "TranslationFailureError");
  py::register_exception<PremiseViolation>(m, "PremiseViolationError");
  py::register_exception<CorruptSnapshot>(m, "CorruptSnapshotError");
  py::register_exception<MalformedTrace>(m, "MalformedTraceError");
  py::register_exception<ScenarioSyntaxError>(m, "ScenarioSyntaxErrorError");

  py::class_<Space>(m, "Space")
      .def(py::init<>())
      .def_static("from_snapshot", &Space::from_snapshot)
      .def("add_org", &Space::add_org, py::arg("id"), py::arg("roles"),
           py::arg("credentials") = std::vector<std::string>{})
      .def("add_mech", &Space::add_mech, py::arg("id"),
           py::arg("kind") = "other")
      .def("add_social", &Space::add_social, py::arg("id"),
           py::arg("kind") = "unspecified")
      .def("provide_data", &Space::provide_data, py::arg("actor"),
           py::arg("id"), py::arg("cond") = py::dict(), py::arg("social"),
           py::arg("payload") = "", py::arg("mechanisms"))
      .def("modify_data", &Space::modify_data, py::arg("actor"), py::arg("id"),
           py::arg("cond") = py::dict())
      .def("stop_data", &Space::stop_data, py::arg("actor"), py::arg("id"))
      .def("use_data", &Space::use_data, py::arg("actor"), py::arg("id"),
           py::arg("cond") = py::dict(),
           py::arg("purpose") = std::optional<std::string>{})
      .def("provide_rule", &Space::provide_rule, py::arg("actor"),
           py::arg("rule"))
      .def("modify_rule", &Space::modify_rule, py::arg("actor"), py::arg("id"),
           py::arg("rule"))
      .def("stop_rule", &Space::stop_rule, py::arg("actor"), py::arg("id"))
      .def("lifecycle", &Space::lifecycle, py::arg("id"))
      .def_property_readonly("clock", &Space::clock)
      .def("snapshot", &Space::to_snapshot)
      .def("hash", &Space::hash)
      .def("validate", &Space::validate);

  m.def(
      "satisfies",
      [](const py::dict& cond, const py::dict& ctx) {
        return satisfies(condition_from_dict(cond), context_from_dict(ctx));
      },
      py::arg("cond"), py::arg("ctx"));
  m.def(
      "compatible",
      [](const py::dict& provider, const py::dict& user, const py::dict& ctx) {
        return compatible(condition_from_dict(provider),
                          condition_from_dict(user), context_from_dict(ctx));
      },
      py::arg("provider"), py::arg("user"), py::arg("ctx"));

  m.def(
      "automaton_run",
      [](const std::vector<std::pair<std::string, int>>& events) {
        std::vector<OpEvent> trace;
        for (const auto& [name, ret] : events) {
          OpEvent e;
          if (!op_kind_from_string(name, e.kind))
            throw py::value_error("unknown operation " + name);
          e.ret = ret;
          trace.push_back(e);
        }
        return to_string(run(trace));
      },
      py::arg("events"));
  m.def(
      "automaton_success",
      [](const std::vector<std::pair<std::string, int>>& events) {
        std::vector<OpEvent> trace;
        for (const auto& [name, ret] : events) {
          OpEvent e;
          if (!op_kind_from_string(name, e.kind))
            throw py::value_error("unknown operation " + name);
          e.ret = ret;
          trace.push_back(e);
        }
        return success(trace);
      },
      py::arg("events"));

  m.def(
      "run_scenario",
      [](const std::string& text, const std::string& name) {
        RunResult result = run_scenario(parse_scenario(text, name));
        py::dict out;
        py::list trace;
        for (const auto& e : result.trace) trace.append(render_trace_line(e));
        out["trace"] = std::move(trace);
        py::list report;
        for (const auto& entry : result.report.entries) {
          py::dict d;
          d["what"] = entry.what;
          d["expected"] = entry.expected;
          d["actual"] = entry.actual;
          d["pass"] = entry.pass;
          report.append(std::move(d));
        }
        out["report"] = std::move(report);
        out["ok"] = result.report.all_pass();
        out["snapshot"] = snapshot(result.state);
        return out;
      },
      py::arg("text"), py::arg("name") = "scenario");

  m.def(
      "validate_trace",
      [](const std::string& text) {
        VerdictReport report = validate_trace(parse_trace(text));
        py::dict out;
        py::dict units;
        for (const auto& [id, replay] : report.units) {
          py::dict u;
          u["transitions"] = replay.transitions;
          u["final"] = to_string(replay.final_state);
          u["success"] = replay.success;
          units[py::str(id.value)] = std::move(u);
        }
        out["units"] = std::move(units);
        out["violations"] = report.violations;
        return out;
      },
      py::arg("text"));

  m.def(
      "check_interoperability",
      [](const std::string& snapshot_a, const std::string& snapshot_b,
         const std::vector<std::pair<std::string, std::string>>& recognized,
         const std::string& data_id) {
        FederationBridge bridge;
        bridge.space_a = restore(snapshot_a);
        bridge.space_b = restore(snapshot_b);
        for (const auto& [sa, sb] : recognized)
          bridge = establish_recognition(std::move(bridge), SocialMechId{sa},
                                         SocialMechId{sb});
        InteropVerdict v = check_interoperability(bridge, DataId{data_id});
        py::dict out;
        out["interoperable"] = v.interoperable;
        if (v.witness) {
          out["witness_org"] = v.witness->first.value;
          out["witness_cond"] = render_condition(v.witness->second);
        }
        return out;
      },
      py::arg("snapshot_a"), py::arg("snapshot_b"), py::arg("recognized"),
      py::arg("data_id"));

  m.def(
      "check_preserving",
      [](const std::string& abstract_snapshot,
         const std::string& refined_snapshot,
         const std::map<std::string, std::map<std::string, std::vector<std::string>>>&
             mapping) {
        RefinedSpacePair pair;
        pair.abstract_space = restore(abstract_snapshot);
        pair.refined_space = restore(refined_snapshot);
        for (const auto& [kind, entries] : mapping) {
          for (const auto& [parent, children] : entries) {
            if (kind == "org")
              for (const auto& c : children)
                pair.mapping.orgs[OrgId{parent}].insert(OrgId{c});
            else if (kind == "mech")
              for (const auto& c : children)
                pair.mapping.mechs[MechId{parent}].insert(MechId{c});
            else if (kind == "data")
              for (const auto& c : children)
                pair.mapping.data[DataId{parent}].insert(DataId{c});
            else if (kind == "social")
              for (const auto& c : children)
                pair.mapping.socials[SocialMechId{parent}].insert(
                    SocialMechId{c});
            else
              throw py::value_error("unknown component kind " + kind);
          }
        }
        auto suite = default_suite(pair);
        PreservationReport report = check_constraint_preserving(pair, suite);
        py::dict out;
        out["preserving"] = report.preserving;
        py::list ces;
        for (const auto& ce : report.counterexamples) {
          py::dict c;
          c["kind"] = ce.kind;
          c["scenario"] = ce.scenario;
          c["detail"] = ce.detail;
          ces.append(std::move(c));
        }
        out["counterexamples"] = std::move(ces);
        return out;
      },
      py::arg("abstract_snapshot"), py::arg("refined_snapshot"),
      py::arg("mapping"));
}
