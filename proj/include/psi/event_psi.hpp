#pragma once

#include <optional>

#include "psi/event_structure.hpp"
#include "psi/instance.hpp"
#include "psi/semantics.hpp"

namespace psi {

/// Instance whose assertions are sets of happened events and whose
/// conditions pair required causes with forbidden conflicts.
const Instance& event_psi_instance();

Assertion ev_assertion(const NameSet& executed);
Condition ev_condition(const NameSet& causes, const NameSet& conflicts);

/// The raw entailment: all causes happened, no conflict happened.
bool ev_entails(const NameSet& executed, const NameSet& causes, const NameSet& conflicts);

/// Encodes an event structure at a configuration: one assertion per
/// happened event, one guarded self-announcing output per pending event,
/// composed in event order.
ProcessPtr espsi(const EventStructure& es, const Configuration& c);

struct ShapeViolation {
  enum class Rule { Grammar, Conflict, Causality, Multiplicity };
  Rule rule = Rule::Grammar;
  std::string message;
};

const char* to_string(ShapeViolation::Rule rule);

struct ShapeError : std::runtime_error {
  ShapeViolation violation;
  explicit ShapeError(ShapeViolation v)
      : std::runtime_error(std::string(to_string(v.rule)) + ": " + v.message),
        violation(std::move(v)) {}
};

/// Checks that p is a parallel composition of event assertions and guarded
/// event outputs whose guards form consistent conflict and causality data.
std::optional<ShapeViolation> validate_es_shape(const ProcessPtr& p);

struct DecodedEs {
  EventStructure es;
  Configuration config;
};

/// Reconstructs the event structure and configuration a shape-valid process
/// denotes; re-encoding the result reproduces p exactly.
DecodedEs espsi_inverse(const ProcessPtr& p);

/// Action refinement on shape-valid processes: every event becomes one
/// process per event of the structure its label refines to, with guards
/// rebuilt over the dot-joined pair names.
ProcessPtr refine_psi(const ProcessPtr& p, const RefinementFunction& ref,
                      const std::map<Name, Label>& labels);

/// True iff from espsi(es, c) the two events can fire in both orders and
/// both interleavings end in the same canonical state.
bool check_diamond(const EventStructure& es, const Configuration& c, const Name& e1,
                   const Name& e2);

}  // namespace psi
