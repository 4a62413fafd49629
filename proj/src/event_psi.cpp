#include "psi/event_psi.hpp"

#include <algorithm>
#include <stdexcept>

#include "psi/errors.hpp"

namespace psi {

namespace {

class EventPsiInstance final : public Instance {
 public:
  std::string name() const override { return "event-psi"; }

  Assertion unit() const override { return Term::set({}); }

  Assertion compose(const Assertion& a, const Assertion& b) const override {
    const auto* sa = std::get_if<Term::SetLit>(&a.node);
    const auto* sb = std::get_if<Term::SetLit>(&b.node);
    if (!sa || !sb) throw std::invalid_argument("assertions must be event sets");
    return Term::set(set_union(sa->names, sb->names));
  }

  bool entails(const Assertion& a, const Condition& c) const override {
    if (const auto* eq = c.as_chan_eq()) return chan_eq_holds(a, eq->lhs, eq->rhs);
    const auto* sa = std::get_if<Term::SetLit>(&a.node);
    const auto* tuple = std::get_if<Term::Tuple>(&c.as_payload()->node);
    if (!sa || !tuple || tuple->items.size() != 2)
      throw std::invalid_argument("conditions must pair causes with conflicts");
    const auto* causes = std::get_if<Term::SetLit>(&tuple->items[0].node);
    const auto* confl = std::get_if<Term::SetLit>(&tuple->items[1].node);
    if (!causes || !confl)
      throw std::invalid_argument("conditions must pair causes with conflicts");
    return ev_entails(sa->names, causes->names, confl->names);
  }

  bool chan_eq_holds(const Assertion&, const Term& lhs, const Term& rhs) const override {
    return lhs == rhs;
  }

  bool assertion_eq(const Assertion& a, const Assertion& b) const override { return a == b; }
};

}  // namespace

const Instance& event_psi_instance() {
  static const EventPsiInstance instance;
  return instance;
}

Assertion ev_assertion(const NameSet& executed) { return Term::set(executed); }

Condition ev_condition(const NameSet& causes, const NameSet& conflicts) {
  return Condition::payload(Term::tuple({Term::set(causes), Term::set(conflicts)}));
}

bool ev_entails(const NameSet& executed, const NameSet& causes, const NameSet& conflicts) {
  return causes.subset_of(executed) && executed.disjoint_with(conflicts);
}

namespace {

ProcessPtr pending_component(const Name& e, const NameSet& causes, const NameSet& confl) {
  ProcessPtr announce =
      make_output(Term::atom(e), Term::atom(e), make_assert(ev_assertion(NameSet({e}))));
  return make_case({{ev_condition(causes, confl), std::move(announce)}});
}

}  // namespace

ProcessPtr espsi(const EventStructure& es, const Configuration& c) {
  if (!is_configuration(es, c))
    throw InvalidConfiguration("espsi: not a configuration of the event structure");
  std::vector<ProcessPtr> parts;
  parts.reserve(es.events.size());
  for (const auto& e : es.events) {
    if (c.contains(e))
      parts.push_back(make_assert(ev_assertion(NameSet({e}))));
    else
      parts.push_back(pending_component(e, preconditions(es, e), conflicts(es, e)));
  }
  return par_all(std::move(parts));
}

const char* to_string(ShapeViolation::Rule rule) {
  switch (rule) {
    case ShapeViolation::Rule::Grammar: return "grammar";
    case ShapeViolation::Rule::Conflict: return "conflict";
    case ShapeViolation::Rule::Causality: return "causality";
    case ShapeViolation::Rule::Multiplicity: return "multiplicity";
  }
  return "?";
}

namespace {

struct PendingPart {
  Name event;
  NameSet causes;
  NameSet confl;
};

struct ShapeParts {
  std::vector<Name> executed;  // in component order, may repeat before validation
  std::vector<PendingPart> pending;
};

std::optional<ShapeViolation> collect_parts(const ProcessPtr& p, ShapeParts& parts) {
  using R = ShapeViolation::Rule;
  if (std::holds_alternative<Process::Nil>(p->node)) return std::nullopt;  // empty composition
  std::vector<ProcessPtr> components;
  flatten_par(p, components);
  for (const auto& comp : components) {
    if (const auto* as = std::get_if<Process::Assert>(&comp->node)) {
      const auto* set = std::get_if<Term::SetLit>(&as->assertion.node);
      if (!set || set->names.size() != 1)
        return ShapeViolation{R::Grammar, "assertion must hold exactly one event"};
      parts.executed.push_back(*set->names.begin());
      continue;
    }
    const auto* cs = std::get_if<Process::Case>(&comp->node);
    if (!cs) return ShapeViolation{R::Grammar, "component is neither assertion nor guarded event"};
    if (cs->branches.size() != 1)
      return ShapeViolation{R::Grammar, "guarded event must have exactly one branch"};
    const auto& branch = cs->branches.front();
    const Term* payload = branch.guard.as_payload();
    const Term::Tuple* guard = payload ? std::get_if<Term::Tuple>(&payload->node) : nullptr;
    if (!guard || guard->items.size() != 2)
      return ShapeViolation{R::Grammar, "guard must pair causes with conflicts"};
    const auto* causes = std::get_if<Term::SetLit>(&guard->items[0].node);
    const auto* confl = std::get_if<Term::SetLit>(&guard->items[1].node);
    if (!causes || !confl)
      return ShapeViolation{R::Grammar, "guard must pair causes with conflicts"};
    const auto* output = std::get_if<Process::Output>(&branch.body->node);
    if (!output)
      return ShapeViolation{R::Grammar, "guard body must be an output"};
    const auto* chan = std::get_if<Term::Atom>(&output->channel.node);
    const auto* sent = std::get_if<Term::Atom>(&output->payload.node);
    if (!chan || !sent || chan->name != sent->name)
      return ShapeViolation{R::Grammar, "event output must send the event on itself"};
    const auto* after = std::get_if<Process::Assert>(&output->cont->node);
    const auto* after_set = after ? std::get_if<Term::SetLit>(&after->assertion.node) : nullptr;
    if (!after_set || after_set->names.size() != 1 ||
        !(*after_set->names.begin() == chan->name))
      return ShapeViolation{R::Grammar, "event output must leave its own assertion"};
    parts.pending.push_back({chan->name, causes->names, confl->names});
  }
  return std::nullopt;
}

std::optional<ShapeViolation> check_parts(const ShapeParts& parts) {
  using R = ShapeViolation::Rule;
  NameSet executed;
  for (const auto& e : parts.executed) {
    if (executed.contains(e))
      return ShapeViolation{R::Multiplicity, "event " + e.id + " asserted twice"};
    executed.insert(e);
  }
  NameSet pending;
  for (const auto& part : parts.pending) {
    if (pending.contains(part.event))
      return ShapeViolation{R::Multiplicity, "event " + part.event.id + " guarded twice"};
    if (executed.contains(part.event))
      return ShapeViolation{R::Multiplicity,
                            "event " + part.event.id + " both asserted and guarded"};
    pending.insert(part.event);
  }
  NameSet known = set_union(executed, pending);
  for (const auto& part : parts.pending) {
    for (const auto& n : set_union(part.causes, part.confl))
      if (!known.contains(n))
        return ShapeViolation{R::Grammar, "guard of " + part.event.id +
                                              " references unknown event " + n.id};
  }

  auto find_pending = [&](const Name& e) -> const PendingPart* {
    for (const auto& part : parts.pending)
      if (part.event == e) return &part;
    return nullptr;
  };

  for (const auto& part : parts.pending) {
    if (part.confl.contains(part.event))
      return ShapeViolation{R::Conflict, "event " + part.event.id + " conflicts with itself"};
    for (const auto& f : part.confl) {
      const PendingPart* other = find_pending(f);
      if (other && !other->confl.contains(part.event))
        return ShapeViolation{R::Conflict, "conflict between " + part.event.id + " and " + f.id +
                                               " is not mutual"};
    }
  }

  for (const auto& part : parts.pending) {
    if (part.causes.contains(part.event))
      return ShapeViolation{R::Causality, "event " + part.event.id + " causes itself"};
    for (const auto& other : parts.pending) {
      if (!other.causes.contains(part.event)) continue;
      // part.event is a cause of other.event
      if (part.causes.contains(other.event))
        return ShapeViolation{R::Causality, "events " + part.event.id + " and " + other.event.id +
                                                " cause each other"};
      if (!part.causes.subset_of(other.causes))
        return ShapeViolation{R::Causality, "causes of " + part.event.id +
                                                " are not inherited by " + other.event.id};
    }
  }
  return std::nullopt;
}

ShapeParts parse_shape_or_throw(const ProcessPtr& p) {
  ShapeParts parts;
  if (auto violation = collect_parts(p, parts)) throw ShapeError(std::move(*violation));
  if (auto violation = check_parts(parts)) throw ShapeError(std::move(*violation));
  return parts;
}

}  // namespace

std::optional<ShapeViolation> validate_es_shape(const ProcessPtr& p) {
  ShapeParts parts;
  if (auto violation = collect_parts(p, parts)) return violation;
  return check_parts(parts);
}

DecodedEs espsi_inverse(const ProcessPtr& p) {
  ShapeParts parts = parse_shape_or_throw(p);
  EventStructure es;
  for (const auto& e : parts.executed) es.events.push_back(e);
  for (const auto& part : parts.pending) es.events.push_back(part.event);
  std::sort(es.events.begin(), es.events.end());
  for (const auto& part : parts.pending) {
    for (const auto& d : part.causes) es.causality.insert({d, part.event});
    for (const auto& d : part.confl) {
      es.conflict.insert({d, part.event});
      es.conflict.insert({part.event, d});
    }
  }
  es = normalize_es(es);
  return {std::move(es), Configuration(parts.executed)};
}

ProcessPtr refine_psi(const ProcessPtr& p, const RefinementFunction& ref,
                      const std::map<Name, Label>& labels) {
  ShapeParts parts = parse_shape_or_throw(p);

  std::vector<Name> outer;
  for (const auto& e : parts.executed) outer.push_back(e);
  for (const auto& part : parts.pending) outer.push_back(part.event);
  std::sort(outer.begin(), outer.end());

  std::map<Name, EventStructure> image_of;
  for (const auto& e : outer) {
    if (e.id.find('.') != std::string::npos)
      throw InvalidRefinement("event name " + e.id + " already contains a dot");
    auto lit = labels.find(e);
    if (lit == labels.end()) throw MissingLabel("no label for event " + e.id);
    auto rit = ref.find(lit->second);
    if (rit == ref.end()) throw MissingLabel("no refinement for label " + lit->second);
    if (rit->second.events.empty())
      throw InvalidRefinement("refinement of label " + lit->second + " is empty");
    if (!rit->second.conflict.empty())
      throw InvalidRefinement("refinement of label " + lit->second + " has conflicts");
    if (auto violations = validate_es(rit->second); !violations.empty())
      throw InvalidRefinement("refinement of label " + lit->second + " is invalid: " +
                              violations.front().message);
    image_of.emplace(e, normalize_es(rit->second));
  }

  NameSet executed(parts.executed);
  auto find_pending = [&](const Name& e) -> const PendingPart* {
    for (const auto& part : parts.pending)
      if (part.event == e) return &part;
    return nullptr;
  };

  std::vector<ProcessPtr> components;
  for (const auto& e : outer) {
    const EventStructure& image = image_of.at(e);
    for (const auto& u : image.events) {
      Name pair = pair_name(e, u);
      if (executed.contains(e)) {
        components.push_back(make_assert(ev_assertion(NameSet({pair}))));
        continue;
      }
      const PendingPart& part = *find_pending(e);
      NameSet causes;
      for (const auto& d : part.causes)
        for (const auto& v : image_of.at(d).events) causes.insert(pair_name(d, v));
      for (const auto& v : preconditions(image, u)) causes.insert(pair_name(e, v));
      NameSet confl;
      for (const auto& d : part.confl)
        for (const auto& v : image_of.at(d).events) confl.insert(pair_name(d, v));
      components.push_back(pending_component(pair, causes, confl));
    }
  }
  return par_all(std::move(components));
}

namespace {

/// Canonical successor of state after the announcement of event e, if any.
std::optional<ProcessPtr> fire(const ProcessPtr& state, const Name& e) {
  const Instance& inst = event_psi_instance();
  for (const auto& t : transitions(inst, inst.unit(), state)) {
    if (t.action.kind != Action::Kind::Out) continue;
    if (!(t.action.channel == Term::atom(e)) || !t.action.bound.empty()) continue;
    return canonical(inst, t.target);
  }
  return std::nullopt;
}

}  // namespace

bool check_diamond(const EventStructure& es, const Configuration& c, const Name& e1,
                   const Name& e2) {
  if (!es.has_event(e1)) throw UnknownEvent("diamond: unknown event " + e1.id);
  if (!es.has_event(e2)) throw UnknownEvent("diamond: unknown event " + e2.id);
  if (e1 == e2) return false;
  ProcessPtr start = canonical(event_psi_instance(), espsi(es, c));
  auto p1 = fire(start, e1);
  if (!p1) return false;
  auto p2 = fire(*p1, e2);
  if (!p2) return false;
  auto p3 = fire(start, e2);
  if (!p3) return false;
  auto p4 = fire(*p3, e1);
  if (!p4) return false;
  return alpha_key(*p2) == alpha_key(*p4);
}

}  // namespace psi
