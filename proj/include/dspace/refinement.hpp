#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dspace/model.hpp"
#include "dspace/scenario.hpp"

namespace dspace {

enum class ComponentKind { organization, mechanism, data_unit, social };

std::string to_string(ComponentKind k);

// Record of a hierarchical decomposition; leaves are atomic.
struct DecompositionTree {
  ComponentKind kind = ComponentKind::data_unit;
  std::string root;
  std::vector<DecompositionTree> children;
};

// abstract-element id -> refined-element ids, per component set.
// Elements absent from a map refine to themselves.
struct ElementMapping {
  std::map<OrgId, std::set<OrgId>> orgs;
  std::map<MechId, std::set<MechId>> mechs;
  std::map<DataId, std::set<DataId>> data;
  std::map<SocialMechId, std::set<SocialMechId>> socials;

  bool empty() const {
    return orgs.empty() && mechs.empty() && data.empty() && socials.empty();
  }
};

struct RefinedSpacePair {
  DataSpaceState abstract_space;
  DataSpaceState refined_space;
  ElementMapping mapping;
};

// Replace one element by children that jointly reconstruct it. Conditions,
// rules, credentials, and bookkeeping referencing the parent are re-targeted
// to the children. Throws UnionViolation / DanglingReference.
//
// Union property by component set: data units need inherited social header
// attributes and a payload byte partition in declared child order; the other
// sets need the children's capability tags (roles+credentials for
// organizations, kind for mechanisms and socials) to cover the parent's.
RefinedSpacePair decompose_data(const DataSpaceState& state, const DataId& parent,
                                const std::vector<DataUnit>& children);
RefinedSpacePair decompose_mech(const DataSpaceState& state, const MechId& parent,
                                const std::vector<DataProvisionMechanism>& children);
RefinedSpacePair decompose_social(const DataSpaceState& state,
                                  const SocialMechId& parent,
                                  const std::vector<SocialMechanism>& children);
RefinedSpacePair decompose_org(const DataSpaceState& state, const OrgId& parent,
                               const std::vector<Organization>& children);

// Composes two refinement stages (second.abstract_space must be
// first.refined_space) into one abstract->refined pair.
RefinedSpacePair chain(const RefinedSpacePair& first,
                       const RefinedSpacePair& second);

struct Counterexample {
  std::string kind;      // "structural" or "behavioral"
  std::string scenario;  // scenario name, or element id for structural findings
  std::string detail;
  std::vector<std::string> abstract_trace;
  std::vector<std::string> refined_trace;
};

struct PreservationReport {
  bool preserving = false;
  std::vector<Counterexample> counterexamples;
};

// Success-equivalence check over a finite scenario suite. Each abstract
// operation on a decomposed element translates to the conjunction of the
// corresponding operations on all mapped children; the pair is preserving
// iff the union property holds structurally and no suite scenario diverges
// between the two spaces. Makes no claim beyond the suite.
// Throws TranslationFailure when the mapping cannot express a step.
PreservationReport check_constraint_preserving(const RefinedSpacePair& pair,
                                               std::span<const Scenario> suite);

// Deterministic built-in suite generated from the abstract space: a
// capability family (fresh provide/rule/use flows), a security family
// (actor, purpose, and clock-window probes), and an operational-context
// family (modify/stop sequences and sovereignty probes).
std::vector<Scenario> default_suite(const RefinedSpacePair& pair);

// Scenario steps translated through the mapping, grouped per abstract step.
std::vector<std::vector<Step>> translate_steps(std::span<const Step> steps,
                                               const ElementMapping& mapping,
                                               const DataSpaceState& refined);

// One tree per mapping entry, children in canonical id order.
std::vector<DecompositionTree> decomposition_trees(const ElementMapping& m);

// Canonical JSON rendering with an ordered counterexample list and the
// decomposition trees of the checked pair.
std::string preservation_report_json(const PreservationReport& report,
                                     const ElementMapping& mapping = {});

}  // namespace dspace
