#include "psi/event_structure.hpp"

#include <algorithm>
#include <deque>

#include "psi/errors.hpp"

namespace psi {

bool EventStructure::has_event(const Name& e) const {
  return std::binary_search(events.begin(), events.end(), e);
}

Label EventStructure::label_of(const Name& e) const {
  auto it = labels.find(e);
  return it == labels.end() ? e.id : it->second;
}

namespace {

PairSet transitive_closure(const PairSet& rel) {
  PairSet out = rel;
  bool grew = true;
  while (grew) {
    grew = false;
    PairSet add;
    for (const auto& [a, b] : out)
      for (const auto& [c, d] : out)
        if (b == c && !out.count({a, d})) add.insert({a, d});
    if (!add.empty()) {
      out.insert(add.begin(), add.end());
      grew = true;
    }
  }
  return out;
}

bool conflicted(const PairSet& conflict, const Name& a, const Name& b) {
  return conflict.count({a, b}) || conflict.count({b, a});
}

void require_event(const EventStructure& es, const Name& e, const char* who) {
  if (!es.has_event(e)) throw UnknownEvent(std::string(who) + ": unknown event " + e.id);
}

}  // namespace

std::vector<EsViolation> validate_es(const EventStructure& candidate) {
  std::vector<EsViolation> out;
  NameSet declared(candidate.events);
  for (const auto& [a, b] : candidate.causality) {
    if (!declared.contains(a) || !declared.contains(b))
      out.push_back({"declared-events", {a, b},
                     "causality mentions an undeclared event in " + a.id + " < " + b.id});
  }
  for (const auto& [a, b] : candidate.conflict) {
    if (!declared.contains(a) || !declared.contains(b))
      out.push_back({"declared-events", {a, b},
                     "conflict mentions an undeclared event in " + a.id + " # " + b.id});
  }
  for (const auto& [e, l] : candidate.labels) {
    if (!declared.contains(e))
      out.push_back({"declared-events", {e}, "label for undeclared event " + e.id});
  }
  if (!out.empty()) return out;

  PairSet closure = transitive_closure(candidate.causality);
  for (const auto& e : candidate.events) {
    if (closure.count({e, e}))
      out.push_back({"causality-acyclic", {e}, "causality cycle through " + e.id});
  }
  for (const auto& e : candidate.events) {
    if (conflicted(candidate.conflict, e, e))
      out.push_back({"conflict-irreflexive", {e}, "event " + e.id + " conflicts with itself"});
  }
  if (!out.empty()) return out;

  // Heredity: a conflict propagates to everything above its endpoints.
  for (const auto& [d, e] : closure) {
    for (const auto& f : candidate.events) {
      if (conflicted(candidate.conflict, d, f) && !conflicted(candidate.conflict, e, f))
        out.push_back({"conflict-heredity",
                       {d, e, f},
                       d.id + " < " + e.id + " and " + d.id + " # " + f.id + " but not " + e.id +
                           " # " + f.id});
    }
  }
  return out;
}

EventStructure normalize_es(const EventStructure& candidate) {
  EventStructure out;
  out.events = candidate.events;
  std::sort(out.events.begin(), out.events.end());
  out.events.erase(std::unique(out.events.begin(), out.events.end()), out.events.end());
  out.causality = transitive_closure(candidate.causality);
  for (const auto& [a, b] : candidate.conflict) {
    out.conflict.insert({a, b});
    out.conflict.insert({b, a});
  }
  for (const auto& e : out.events) out.labels[e] = candidate.label_of(e);
  return out;
}

NameSet preconditions(const EventStructure& es, const Name& e) {
  require_event(es, e, "preconditions");
  NameSet out;
  for (const auto& [a, b] : es.causality)
    if (b == e) out.insert(a);
  return out;
}

NameSet conflicts(const EventStructure& es, const Name& e) {
  require_event(es, e, "conflicts");
  NameSet out;
  for (const auto& [a, b] : es.conflict) {
    if (a == e) out.insert(b);
    if (b == e) out.insert(a);
  }
  return out;
}

bool is_configuration(const EventStructure& es, const Configuration& c) {
  for (const auto& e : c) {
    if (!es.has_event(e)) return false;
    if (!preconditions(es, e).subset_of(c)) return false;
  }
  for (const auto& d : c)
    for (const auto& e : c)
      if (conflicted(es.conflict, d, e)) return false;
  return true;
}

bool es_enabled(const EventStructure& es, const Configuration& c, const Name& e) {
  require_event(es, e, "enabled");
  return !c.contains(e) && preconditions(es, e).subset_of(c) &&
         c.disjoint_with(conflicts(es, e));
}

Configuration es_step(const EventStructure& es, const Configuration& c, const Name& e) {
  require_event(es, e, "step");
  if (!is_configuration(es, c)) throw InvalidConfiguration("step: not a configuration");
  if (c.contains(e)) throw NotEnabled("event " + e.id + " already happened");
  for (const auto& d : preconditions(es, e))
    if (!c.contains(d)) throw NotEnabled("event " + e.id + " misses cause " + d.id);
  for (const auto& d : conflicts(es, e))
    if (c.contains(d)) throw NotEnabled("event " + e.id + " conflicts with " + d.id);
  Configuration out = c;
  out.insert(e);
  return out;
}

std::vector<Configuration> configurations(const EventStructure& es, std::size_t max_events) {
  if (es.events.size() > max_events)
    throw TooLarge("enumeration bound " + std::to_string(max_events) + " exceeded by " +
                   std::to_string(es.events.size()) + " events");
  std::set<Configuration> seen{Configuration{}};
  std::deque<Configuration> queue{Configuration{}};
  while (!queue.empty()) {
    Configuration c = queue.front();
    queue.pop_front();
    for (const auto& e : es.events) {
      if (c.contains(e)) continue;
      if (!preconditions(es, e).subset_of(c)) continue;
      if (!set_intersect(conflicts(es, e), c).empty()) continue;
      Configuration next = c;
      next.insert(e);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

bool concurrent(const EventStructure& es, const Name& d, const Name& e) {
  require_event(es, d, "concurrent");
  require_event(es, e, "concurrent");
  if (d == e) return false;
  if (es.causality.count({d, e}) || es.causality.count({e, d})) return false;
  if (conflicted(es.conflict, d, e)) return false;
  return true;
}

RecoveredRelations recover_relations(const std::vector<Configuration>& configs,
                                     const std::vector<Name>& events) {
  RecoveredRelations out;
  auto le = [&](const Name& a, const Name& b) {
    for (const auto& c : configs)
      if (c.contains(b) && !c.contains(a)) return false;
    return true;
  };
  auto in_conflict = [&](const Name& a, const Name& b) {
    for (const auto& c : configs)
      if (c.contains(a) && c.contains(b)) return false;
    return true;
  };
  for (const auto& a : events) {
    for (const auto& b : events) {
      if (a == b) continue;
      if (le(a, b)) out.causality.insert({a, b});
      if (in_conflict(a, b)) out.conflict.insert({a, b});
    }
  }
  for (const auto& a : events)
    for (const auto& b : events)
      if (a != b && !out.causality.count({a, b}) && !out.causality.count({b, a}) &&
          !out.conflict.count({a, b}))
        out.concurrency.insert({a, b});
  return out;
}

Name pair_name(const Name& outer, const Name& inner) { return Name(outer.id + "." + inner.id); }

EventStructure refine_es(const EventStructure& es, const RefinementFunction& ref) {
  for (const auto& e : es.events)
    if (e.id.find('.') != std::string::npos)
      throw InvalidRefinement("event name " + e.id + " already contains a dot");

  std::map<Label, EventStructure> images;
  for (const auto& e : es.events) {
    Label l = es.label_of(e);
    if (images.count(l)) continue;
    auto it = ref.find(l);
    if (it == ref.end()) throw MissingLabel("no refinement for label " + l);
    if (it->second.events.empty())
      throw InvalidRefinement("refinement of label " + l + " is empty");
    if (!it->second.conflict.empty())
      throw InvalidRefinement("refinement of label " + l + " has conflicts");
    if (auto violations = validate_es(it->second); !violations.empty())
      throw InvalidRefinement("refinement of label " + l + " is invalid: " +
                              violations.front().message);
    images.emplace(l, normalize_es(it->second));
  }

  EventStructure out;
  for (const auto& e : es.events) {
    const EventStructure& image = images.at(es.label_of(e));
    for (const auto& u : image.events) {
      Name pair = pair_name(e, u);
      out.events.push_back(pair);
      out.labels[pair] = image.label_of(u);
    }
  }
  std::sort(out.events.begin(), out.events.end());

  for (const auto& e : es.events) {
    const EventStructure& image_e = images.at(es.label_of(e));
    for (const auto& u : image_e.events) {
      Name target = pair_name(e, u);
      // Everything refining a strict cause precedes every part of e.
      for (const auto& [d, e2] : es.causality) {
        if (e2 != e) continue;
        for (const auto& v : images.at(es.label_of(d)).events)
          out.causality.insert({pair_name(d, v), target});
      }
      // Within one copy, the image's own causality applies.
      for (const auto& [v, u2] : image_e.causality)
        if (u2 == u) out.causality.insert({pair_name(e, v), target});
      // Conflicts depend only on the outer events.
      for (const auto& [d, e2] : es.conflict) {
        if (e2 != e) continue;
        for (const auto& v : images.at(es.label_of(d)).events)
          out.conflict.insert({pair_name(d, v), target});
      }
    }
  }
  return normalize_es(out);
}

}  // namespace psi
