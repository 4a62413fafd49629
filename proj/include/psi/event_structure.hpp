#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "psi/name.hpp"

namespace psi {

using Label = std::string;
using EventPair = std::pair<Name, Name>;
using PairSet = std::set<EventPair>;

/// Prime event structure with strict causality. Normalized form: causality
/// transitively closed, conflict symmetric and irreflexive, labels total.
struct EventStructure {
  std::vector<Name> events;  // sorted
  PairSet causality;         // strict precedence pairs (d, e) with d before e
  PairSet conflict;          // both orientations stored
  std::map<Name, Label> labels;

  bool has_event(const Name& e) const;
  Label label_of(const Name& e) const;

  bool operator==(const EventStructure&) const = default;
};

struct EsViolation {
  std::string axiom;
  std::vector<Name> witness;
  std::string message;
};

/// Checks the axioms on a candidate whose relations need not be normalized:
/// declared endpoints, acyclicity of causality, irreflexivity of conflict,
/// and conflict heredity along causality.
std::vector<EsViolation> validate_es(const EventStructure& candidate);

/// Transitively closes causality, symmetrizes conflict, defaults missing
/// labels to the event name. The candidate must validate.
EventStructure normalize_es(const EventStructure& candidate);

using Configuration = NameSet;

/// Strict causal predecessors of e.
NameSet preconditions(const EventStructure& es, const Name& e);

/// Events in conflict with e.
NameSet conflicts(const EventStructure& es, const Name& e);

bool is_configuration(const EventStructure& es, const Configuration& c);

/// Pending, all strict causes happened, nothing happened conflicts with it.
bool es_enabled(const EventStructure& es, const Configuration& c, const Name& e);

/// Extends a configuration by one enabled event.
Configuration es_step(const EventStructure& es, const Configuration& c, const Name& e);

/// All configurations, smallest first; refuses structures with more events
/// than the bound.
std::vector<Configuration> configurations(const EventStructure& es, std::size_t max_events = 16);

/// Neither causally ordered nor in conflict (and distinct).
bool concurrent(const EventStructure& es, const Name& d, const Name& e);

struct RecoveredRelations {
  PairSet causality;    // strict
  PairSet conflict;     // both orientations
  PairSet concurrency;  // both orientations
};

/// Reconstructs the relations of an event structure from its configuration
/// family alone.
RecoveredRelations recover_relations(const std::vector<Configuration>& configs,
                                     const std::vector<Name>& events);

/// Replacement of each label by a finite conflict-free event structure.
using RefinementFunction = std::map<Label, EventStructure>;

Name pair_name(const Name& outer, const Name& inner);

/// Action refinement: every event becomes a copy of the structure its label
/// maps to; refined events are named outer.inner.
EventStructure refine_es(const EventStructure& es, const RefinementFunction& ref);

}  // namespace psi
