#include "psi/dcr.hpp"

#include <algorithm>

#include "psi/errors.hpp"

namespace psi {

bool DcrGraph::has_event(const Name& e) const {
  return std::binary_search(events.begin(), events.end(), e);
}

Label DcrGraph::label_of(const Name& e) const {
  auto it = labels.find(e);
  return it == labels.end() ? e.id : it->second;
}

std::string to_string(const Marking& m) {
  return "executed=" + to_string(m.executed) + " responses=" + to_string(m.responses) +
         " included=" + to_string(m.included);
}

NameSet rel_sources(const PairSet& rel, const Name& e) {
  NameSet out;
  for (const auto& [a, b] : rel)
    if (b == e) out.insert(a);
  return out;
}

NameSet rel_targets(const PairSet& rel, const Name& e) {
  NameSet out;
  for (const auto& [a, b] : rel)
    if (a == e) out.insert(b);
  return out;
}

void validate_marking(const DcrGraph& g, const Marking& m) {
  for (const NameSet* part : {&m.executed, &m.responses, &m.included})
    for (const auto& e : *part)
      if (!g.has_event(e)) throw InvalidMarking("marking mentions unknown event " + e.id);
}

bool dcr_enabled(const DcrGraph& g, const Marking& m, const Name& e) {
  if (!g.has_event(e)) throw UnknownEvent("enabled: unknown event " + e.id);
  if (!m.included.contains(e)) return false;
  NameSet conds = set_intersect(m.included, rel_sources(g.conditions, e));
  if (!conds.subset_of(m.executed)) return false;
  NameSet miles = set_intersect(m.included, rel_sources(g.milestones, e));
  return set_intersect(miles, m.responses).empty();
}

Marking dcr_execute(const DcrGraph& g, const Marking& m, const Name& e) {
  if (!dcr_enabled(g, m, e)) throw NotEnabled("event " + e.id + " is not enabled");
  Marking out;
  out.executed = m.executed;
  out.executed.insert(e);
  NameSet responses = m.responses;
  responses.erase(e);
  out.responses = set_union(responses, rel_targets(g.responses, e));
  out.included =
      set_union(set_diff(m.included, rel_targets(g.excludes, e)), rel_targets(g.includes, e));
  return out;
}

std::vector<std::pair<Name, Marking>> dcr_transitions(const DcrGraph& g, const Marking& m) {
  validate_marking(g, m);
  std::vector<std::pair<Name, Marking>> out;
  for (const auto& e : g.events)
    if (dcr_enabled(g, m, e)) out.emplace_back(e, dcr_execute(g, m, e));
  return out;
}

std::pair<DcrGraph, Marking> es_to_dcr(const EventStructure& es) {
  DcrGraph g;
  g.events = es.events;
  g.conditions = es.causality;
  g.excludes = es.conflict;
  for (const auto& e : es.events) g.excludes.insert({e, e});  // events happen at most once
  g.labels = es.labels;
  Marking m;
  m.included = NameSet(es.events);
  return {std::move(g), std::move(m)};
}

}  // namespace psi
