#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "psi/event_structure.hpp"
#include "psi/name.hpp"

namespace psi {

/// Dynamic condition response graph over five relations. Relation pairs
/// (a, b) read left to right: a is condition for b, a triggers response b,
/// a is milestone for b, a includes b, a excludes b.
struct DcrGraph {
  std::vector<Name> events;  // sorted
  PairSet conditions;
  PairSet responses;
  PairSet milestones;
  PairSet includes;
  PairSet excludes;
  std::map<Name, Label> labels;

  bool has_event(const Name& e) const;
  Label label_of(const Name& e) const;

  bool operator==(const DcrGraph&) const = default;
};

struct Marking {
  NameSet executed;
  NameSet responses;
  NameSet included;

  bool operator==(const Marking&) const = default;
  auto operator<=>(const Marking&) const = default;
};

std::string to_string(const Marking& m);

/// Sources of a relation targeting e.
NameSet rel_sources(const PairSet& rel, const Name& e);
/// Targets of a relation from e.
NameSet rel_targets(const PairSet& rel, const Name& e);

/// Marking must mention only declared events.
void validate_marking(const DcrGraph& g, const Marking& m);

/// e is included, its included conditions are executed, and none of its
/// included milestones awaits a response.
bool dcr_enabled(const DcrGraph& g, const Marking& m, const Name& e);

/// Executes an enabled event: records it, rotates responses, applies
/// exclusions then inclusions.
Marking dcr_execute(const DcrGraph& g, const Marking& m, const Name& e);

/// All enabled events with their successor markings, in event order.
std::vector<std::pair<Name, Marking>> dcr_transitions(const DcrGraph& g, const Marking& m);

/// Event structures as DCRs: causality becomes conditions, conflict plus
/// self-loops become exclusions, marking starts empty with all included.
std::pair<DcrGraph, Marking> es_to_dcr(const EventStructure& es);

}  // namespace psi
