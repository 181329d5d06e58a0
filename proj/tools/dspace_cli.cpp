// dspace — scenario replay, trace validation, interoperability and
// refinement checks over data-space snapshots.
//
// Exit codes: 0 all assertions/verdicts pass, 1 mismatch or violation,
// 2 input error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dspace/errors.hpp"
#include "dspace/federation.hpp"
#include "dspace/refinement.hpp"
#include "dspace/scenario.hpp"
#include "dspace/snapshot.hpp"
#include "dspace/trace.hpp"

namespace fs = std::filesystem;
using namespace dspace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInputError = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

int cmd_run(const std::string& scenario_path, const std::string& trace_out,
            const std::string& snapshot_out) {
  Scenario scenario = parse_scenario(read_file(scenario_path),
                                     fs::path(scenario_path).stem().string());
  RunResult result = run_scenario(scenario);
  for (const auto& e : result.trace)
    std::cout << render_trace_line(e) << "\n";
  for (const auto& entry : result.report.entries)
    std::cout << (entry.pass ? "PASS " : "FAIL ") << entry.what
              << " expected " << entry.expected << " actual " << entry.actual
              << "\n";
  if (!trace_out.empty()) write_file(trace_out, render_trace(result.trace));
  if (!snapshot_out.empty()) write_file(snapshot_out, snapshot(result.state));
  bool ok = result.report.all_pass();
  std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitMismatch;
}

int cmd_validate(const std::string& trace_path) {
  auto events = parse_trace(read_file(trace_path));
  VerdictReport report = validate_trace(events);
  for (const auto& [id, replay] : report.units) {
    std::cout << "unit " << id.value << "\n";
    for (const auto& t : replay.transitions) std::cout << "  " << t << "\n";
    std::cout << "  verdict " << (replay.success ? "SUCCESS" : "NOT-SUCCESS")
              << "\n";
  }
  if (report.violations.empty()) {
    std::cout << "violations: none\n";
    return kExitOk;
  }
  for (const auto& v : report.violations)
    std::cout << "violation: " << v << "\n";
  return kExitMismatch;
}

struct BridgeFile {
  FederationBridge bridge;
  // data id -> expected interoperability
  std::vector<std::pair<DataId, bool>> expectations;
};

BridgeFile load_bridge(const fs::path& path) {
  BridgeFile out;
  fs::path dir = path.parent_path();
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  bool have_a = false, have_b = false;
  std::vector<std::pair<std::string, std::string>> pending;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::string head;
    words >> head;
    if (head == "space") {
      std::string side, file;
      words >> side >> file;
      if ((side != "A" && side != "B") || file.empty())
        throw std::runtime_error("bridge line " + std::to_string(line_no) +
                                 ": expected 'space A|B <snapshot>'");
      DataSpaceState state = restore(read_file(dir / file));
      if (side == "A") {
        out.bridge.space_a = std::move(state);
        have_a = true;
      } else {
        out.bridge.space_b = std::move(state);
        have_b = true;
      }
    } else if (head == "recognize") {
      std::string sa, sb;
      words >> sa >> sb;
      auto strip = [&](std::string s, const char* suffix) {
        if (s.size() > 2 && s.substr(s.size() - 2) == suffix)
          return s.substr(0, s.size() - 2);
        return s;
      };
      if (sa.empty() || sb.empty())
        throw std::runtime_error("bridge line " + std::to_string(line_no) +
                                 ": expected 'recognize s1@A s2@B'");
      pending.emplace_back(strip(sa, "@A"), strip(sb, "@B"));
    } else if (head == "expect") {
      std::string what, id, verdict;
      words >> what >> id >> verdict;
      if (what != "interop" || id.empty() ||
          (verdict != "yes" && verdict != "no"))
        throw std::runtime_error("bridge line " + std::to_string(line_no) +
                                 ": expected 'expect interop <data-id> yes|no'");
      out.expectations.emplace_back(DataId{id}, verdict == "yes");
    } else {
      throw std::runtime_error("bridge line " + std::to_string(line_no) +
                               ": unknown directive '" + head + "'");
    }
  }
  if (!have_a || !have_b)
    throw std::runtime_error("bridge file must name both spaces");
  for (const auto& [sa, sb] : pending)
    out.bridge = establish_recognition(std::move(out.bridge), SocialMechId{sa},
                                       SocialMechId{sb});
  return out;
}

int cmd_interop(const std::string& bridge_path, const std::string& data_id) {
  BridgeFile loaded = load_bridge(bridge_path);
  std::vector<DataId> targets;
  if (!data_id.empty()) {
    targets.push_back(DataId{data_id});
  } else {
    for (const auto& [id, unit] : loaded.bridge.space_a.units) {
      (void)unit;
      targets.push_back(id);
    }
  }
  std::map<DataId, bool> verdicts;
  for (const auto& id : targets) {
    InteropVerdict v = check_interoperability(loaded.bridge, id);
    verdicts[id] = v.interoperable;
    std::cout << "INTEROP " << id.value << " " << (v.interoperable ? "yes" : "no");
    if (v.witness)
      std::cout << " witness " << v.witness->first.value << " "
                << render_condition(v.witness->second);
    std::cout << "\n";
  }
  bool ok = true;
  for (const auto& [id, expected] : loaded.expectations) {
    auto it = verdicts.find(id);
    if (it == verdicts.end()) {
      InteropVerdict v = check_interoperability(loaded.bridge, id);
      verdicts[id] = v.interoperable;
      it = verdicts.find(id);
    }
    bool pass = it->second == expected;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " expect interop " << id.value
              << " " << (expected ? "yes" : "no") << "\n";
  }
  return ok ? kExitOk : kExitMismatch;
}

struct PairFile {
  RefinedSpacePair pair;
};

PairFile load_pair(const fs::path& path) {
  PairFile out;
  fs::path dir = path.parent_path();
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  bool have_abstract = false, have_refined = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::string head;
    words >> head;
    if (head == "abstract" || head == "refined") {
      std::string file;
      words >> file;
      if (file.empty())
        throw std::runtime_error("pair line " + std::to_string(line_no) +
                                 ": expected '" + head + " <snapshot>'");
      DataSpaceState state = restore(read_file(dir / file));
      if (head == "abstract") {
        out.pair.abstract_space = std::move(state);
        have_abstract = true;
      } else {
        out.pair.refined_space = std::move(state);
        have_refined = true;
      }
    } else if (head == "map") {
      std::string kind, parent, arrow, kids;
      words >> kind >> parent >> arrow >> kids;
      if (arrow != "->" || parent.empty() || kids.empty())
        throw std::runtime_error(
            "pair line " + std::to_string(line_no) +
            ": expected 'map <org|mech|data|social> <id> -> <id,id>'");
      std::vector<std::string> children;
      std::istringstream ks(kids);
      std::string item;
      while (std::getline(ks, item, ','))
        if (!item.empty()) children.push_back(item);
      if (kind == "org") {
        auto& set = out.pair.mapping.orgs[OrgId{parent}];
        for (const auto& c : children) set.insert(OrgId{c});
      } else if (kind == "mech") {
        auto& set = out.pair.mapping.mechs[MechId{parent}];
        for (const auto& c : children) set.insert(MechId{c});
      } else if (kind == "data") {
        auto& set = out.pair.mapping.data[DataId{parent}];
        for (const auto& c : children) set.insert(DataId{c});
      } else if (kind == "social") {
        auto& set = out.pair.mapping.socials[SocialMechId{parent}];
        for (const auto& c : children) set.insert(SocialMechId{c});
      } else {
        throw std::runtime_error("pair line " + std::to_string(line_no) +
                                 ": unknown component '" + kind + "'");
      }
    } else {
      throw std::runtime_error("pair line " + std::to_string(line_no) +
                               ": unknown directive '" + head + "'");
    }
  }
  if (!have_abstract || !have_refined)
    throw std::runtime_error("pair file must name abstract and refined snapshots");
  return out;
}

int cmd_refine(const std::string& pair_path, const std::string& suite_dir,
               const std::string& report_out) {
  PairFile loaded = load_pair(pair_path);
  std::vector<Scenario> suite;
  if (suite_dir.empty()) {
    suite = default_suite(loaded.pair);
  } else {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(suite_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".dss")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      suite.push_back(parse_scenario(read_file(f), f.stem().string()));
  }
  PreservationReport report = check_constraint_preserving(loaded.pair, suite);
  std::cout << "PRESERVING " << (report.preserving ? "yes" : "no") << "\n";
  for (const auto& ce : report.counterexamples)
    std::cout << "counterexample [" << ce.kind << "] " << ce.scenario << ": "
              << ce.detail << "\n";
  if (!report_out.empty())
    write_file(report_out,
               preservation_report_json(report, loaded.pair.mapping));
  return report.preserving ? kExitOk : kExitMismatch;
}

int cmd_check(const std::string& snapshot_path) {
  DataSpaceState state = restore(read_file(snapshot_path));
  ValidationReport report = validate_state(state);
  if (report.empty()) {
    std::cout << "valid (hash " << state_hash(state) << ")\n";
    return kExitOk;
  }
  for (const auto& v : report)
    std::cout << v.code << " " << v.subject << ": " << v.detail << "\n";
  return kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data-space collaboration engine"};
  app.require_subcommand(1);

  std::string scenario_path, trace_out, snapshot_out;
  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("scenario", scenario_path)->required();
  run->add_option("--trace", trace_out, "write the trace to a file");
  run->add_option("--snapshot", snapshot_out, "write the final state snapshot");

  std::string trace_path;
  auto* validate = app.add_subcommand("validate", "replay and check a trace file");
  validate->add_option("trace", trace_path)->required();

  std::string bridge_path, interop_data;
  auto* interop =
      app.add_subcommand("interop", "check cross-space usability over a bridge");
  interop->add_option("bridge", bridge_path)->required();
  interop->add_option("--data", interop_data, "restrict to one data unit");

  std::string pair_path, suite_dir, report_out;
  auto* refine =
      app.add_subcommand("refine", "check a decomposition for preservation");
  refine->add_option("pair", pair_path)->required();
  refine->add_option("--suite", suite_dir, "directory of .dss scenarios");
  refine->add_option("--report", report_out, "write the JSON report");

  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a state snapshot");
  check->add_option("snapshot", check_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, trace_out, snapshot_out);
    if (validate->parsed()) return cmd_validate(trace_path);
    if (interop->parsed()) return cmd_interop(bridge_path, interop_data);
    if (refine->parsed()) return cmd_refine(pair_path, suite_dir, report_out);
    if (check->parsed()) return cmd_check(check_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
