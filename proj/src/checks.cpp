#include "psi/checks.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "psi/dcr_psi.hpp"
#include "psi/errors.hpp"
#include "psi/event_psi.hpp"
#include "psi/parse.hpp"
#include "psi/pi.hpp"
#include "psi/semantics.hpp"

namespace psi {

// hand-rolled draws so a seed fixes the sequence across platforms
std::size_t Rng::below(std::size_t bound) { return engine_() % bound; }

bool Rng::chance(double p) { return (engine_() >> 11) * 0x1.0p-53 < p; }

namespace {

Name event_name(std::size_t i) { return Name("e" + std::to_string(i)); }

const char* const kLabelPool[] = {"go", "stop", "ask", "ack"};

PairSet saturate_conflict(PairSet conflict, const PairSet& causality) {
  // close under symmetry and under heredity along causality
  while (true) {
    PairSet next = conflict;
    for (const auto& [d, e] : conflict) {
      next.insert({e, d});
      for (const auto& [a, b] : causality)
        if (a == d) next.insert({b, e});
    }
    if (next.size() == conflict.size()) return conflict;
    conflict = std::move(next);
  }
}

bool irreflexive(const PairSet& rel) {
  return std::none_of(rel.begin(), rel.end(),
                      [](const EventPair& p) { return p.first == p.second; });
}

std::string one_line(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      if (!out.empty() && out.back() != ' ') out += "  ";
    } else {
      out += c;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string pairs_to_string(const PairSet& rel) {
  std::string out = "{";
  for (const auto& [a, b] : rel) {
    if (out.size() > 1) out += ", ";
    out += "(" + a.id + "," + b.id + ")";
  }
  return out + "}";
}

void record(CheckReport& r, std::string input, std::string expected, std::string actual) {
  r.failures.push_back({std::move(input), std::move(expected), std::move(actual)});
}

// ---------------------------------------------------------------------------
// instance-laws: composition is a commutative monoid up to assertion_eq, and
// channel equivalence is symmetric and transitive under any assertion.

Assertion sample_assertion(Rng& rng, const Instance& inst, const std::vector<Name>& universe) {
  auto pick_set = [&] {
    NameSet s;
    for (const auto& n : universe)
      if (rng.chance(0.5)) s.insert(n);
    return s;
  };
  if (inst.name() == "event-psi") return ev_assertion(pick_set());
  if (inst.name() == "dcr-psi") return dcr_assertion(pick_set(), pick_set(), pick_set(), rng.below(4));
  return inst.unit();
}

CheckReport check_instance_laws(const CheckOptions& opts) {
  CheckReport r{"instance-laws", 0, {}};
  Rng rng(opts.seed);
  std::vector<Name> universe;
  for (std::size_t i = 0; i < std::min<std::size_t>(opts.max_events, 6); ++i)
    universe.push_back(event_name(i));
  const Instance* instances[] = {&pi_instance(), &event_psi_instance(), &dcr_psi_instance()};
  for (const Instance* inst : instances) {
    for (std::size_t s = 0; s < opts.samples; ++s) {
      ++r.inputs_tried;
      Assertion a = sample_assertion(rng, *inst, universe);
      Assertion b = sample_assertion(rng, *inst, universe);
      Assertion c = sample_assertion(rng, *inst, universe);
      std::string input =
          inst->name() + ": " + to_string(a) + " ; " + to_string(b) + " ; " + to_string(c);
      if (!inst->assertion_eq(inst->compose(a, inst->compose(b, c)),
                              inst->compose(inst->compose(a, b), c)))
        record(r, input, "composition associates", "grouping changed the result");
      if (!inst->assertion_eq(inst->compose(a, b), inst->compose(b, a)))
        record(r, input, "composition commutes", "operand order changed the result");
      if (!inst->assertion_eq(inst->compose(a, inst->unit()), a) ||
          !inst->assertion_eq(inst->compose(inst->unit(), a), a))
        record(r, input, "unit is neutral", "composing with the unit changed the assertion");
    }
    std::vector<Term> terms;
    for (const auto& n : universe) terms.push_back(Term::atom(n));
    terms.push_back(Term::set(NameSet()));
    if (universe.size() >= 2) terms.push_back(Term::set(NameSet({universe[0], universe[1]})));
    if (!universe.empty()) terms.push_back(Term::tuple({Term::atom(universe[0])}));
    Assertion envs[] = {inst->unit(), sample_assertion(rng, *inst, universe)};
    for (const auto& env : envs) {
      for (const auto& x : terms) {
        for (const auto& y : terms) {
          ++r.inputs_tried;
          if (inst->chan_eq_holds(env, x, y) != inst->chan_eq_holds(env, y, x))
            record(r, inst->name() + ": " + to_string(x) + " vs " + to_string(y),
                   "channel equivalence is symmetric", "direction changed the answer");
          for (const auto& z : terms) {
            ++r.inputs_tried;
            if (inst->chan_eq_holds(env, x, y) && inst->chan_eq_holds(env, y, z) &&
                !inst->chan_eq_holds(env, x, z))
              record(r,
                     inst->name() + ": " + to_string(x) + " ~ " + to_string(y) + " ~ " +
                         to_string(z),
                     "channel equivalence is transitive", "endpoints differ");
          }
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// frames: the frame of an encoded configuration is the configuration.

CheckReport check_frames(const CheckOptions& opts) {
  CheckReport r{"frames", 0, {}};
  Rng rng(opts.seed);
  const Instance& inst = event_psi_instance();
  for (std::size_t s = 0; s < opts.samples; ++s) {
    EventStructure es = random_es(rng, opts.max_events);
    for (const auto& c : configurations(es)) {
      ++r.inputs_tried;
      Frame f = frame(inst, *espsi(es, c));
      if (!f.binders.empty() || !inst.assertion_eq(f.assertion, ev_assertion(c)))
        record(r, one_line(serialize_es(es, c)), "frame assertion " + to_string(ev_assertion(c)),
               to_string(f));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// steps: the transition system of an encoded structure is the configuration
// step graph — one free output per enabled event, landing on the re-encoded
// stepped configuration, and nothing else.

CheckReport check_steps(const CheckOptions& opts) {
  CheckReport r{"steps", 0, {}};
  Rng rng(opts.seed);
  const Instance& inst = event_psi_instance();
  for (std::size_t s = 0; s < opts.samples; ++s) {
    EventStructure es = random_es(rng, opts.max_events);
    auto configs = configurations(es);
    std::size_t expected_edges = 0;
    for (const auto& c : configs) {
      ++r.inputs_tried;
      std::string input = one_line(serialize_es(es, c));
      auto ts = transitions(inst, inst.unit(), espsi(es, c));
      std::map<Name, ProcessPtr> fired;
      bool malformed = false;
      for (const auto& t : ts) {
        const auto* ch = std::get_if<Term::Atom>(&t.action.channel.node);
        if (t.action.kind != Action::Kind::Out || !ch || !t.action.bound.empty() ||
            !(t.action.payload == t.action.channel) || fired.count(ch->name)) {
          record(r, input, "only one self-announcing output per event", to_string(t.action));
          malformed = true;
          break;
        }
        fired.emplace(ch->name, t.target);
      }
      if (malformed) continue;
      for (const auto& e : es.events) {
        bool enabled = es_enabled(es, c, e);
        expected_edges += enabled ? 1 : 0;
        auto it = fired.find(e);
        if (enabled != (it != fired.end())) {
          record(r, input + " event " + e.id,
                 enabled ? "an output for the enabled event" : "no output for the disabled event",
                 enabled ? "missing" : "present");
          continue;
        }
        if (enabled && !canonical_equal(inst, it->second, espsi(es, es_step(es, c, e))))
          record(r, input + " event " + e.id, "the target re-encodes the stepped configuration",
                 to_string(it->second));
      }
    }
    Lts lts = explore(inst, inst.unit(), espsi(es, Configuration()),
                      {static_cast<int>(es.events.size()) + 1, configs.size() + 8, {}});
    if (lts.truncated() || lts.states.size() != configs.size() ||
        lts.edges.size() != expected_edges)
      record(r, one_line(serialize_es(es)),
             std::to_string(configs.size()) + " states / " + std::to_string(expected_edges) +
                 " edges",
             std::to_string(lts.states.size()) + " states / " + std::to_string(lts.edges.size()) +
                 " edges" + (lts.truncated() ? " (truncated)" : ""));
  }
  return r;
}

// ---------------------------------------------------------------------------
// diamonds: two events are concurrent exactly when some reachable
// configuration lets them fire in both orders onto the same state.

CheckReport check_diamonds(const CheckOptions& opts) {
  CheckReport r{"diamonds", 0, {}};
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    EventStructure es = random_es(rng, opts.max_events);
    auto configs = configurations(es);
    for (std::size_t i = 0; i < es.events.size(); ++i) {
      for (std::size_t j = i + 1; j < es.events.size(); ++j) {
        const Name& d = es.events[i];
        const Name& e = es.events[j];
        ++r.inputs_tried;
        std::string input =
            one_line(serialize_es(es)) + " pair (" + d.id + "," + e.id + ")";
        bool conc = concurrent(es, d, e);
        bool found = false;
        for (const auto& c : configs) {
          if (!es_enabled(es, c, d) || !es_enabled(es, c, e)) continue;
          bool both_orders = es_enabled(es, es_step(es, c, d), e) &&
                             es_enabled(es, es_step(es, c, e), d);
          bool proc = check_diamond(es, c, d, e);
          if (proc != both_orders)
            record(r, input + " at {" + to_string(c) + "}",
                   both_orders ? "a process-level diamond" : "no process-level diamond",
                   proc ? "present" : "absent");
          if (proc) {
            found = true;
            break;
          }
        }
        if (conc != found)
          record(r, input, conc ? "a reachable interleaving diamond" : "no diamond anywhere",
                 found ? "found one" : "none found");
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// inverse: decoding a shape-valid process and re-encoding reproduces it, and
// each shape rule catches its crafted violation.

struct PendingSpec {
  Name event;
  NameSet causes;
  NameSet confl;
};

struct ShapeSpec {
  std::vector<Name> executed;
  std::vector<PendingSpec> pending;
  std::size_t nils = 0;
};

ShapeSpec spec_of(const EventStructure& es, const Configuration& c) {
  ShapeSpec sp;
  for (const auto& e : es.events) {
    if (c.contains(e))
      sp.executed.push_back(e);
    else
      sp.pending.push_back({e, preconditions(es, e), conflicts(es, e)});
  }
  return sp;
}

ProcessPtr assert_part(const Name& e) { return make_assert(ev_assertion(NameSet({e}))); }

ProcessPtr pending_part(const PendingSpec& pd) {
  return make_case({{ev_condition(pd.causes, pd.confl),
                     make_output(Term::atom(pd.event), Term::atom(pd.event),
                                 make_assert(ev_assertion(NameSet({pd.event}))))}});
}

std::vector<ProcessPtr> spec_parts(const ShapeSpec& sp) {
  std::vector<ProcessPtr> parts;
  for (const auto& e : sp.executed) parts.push_back(assert_part(e));
  for (const auto& pd : sp.pending) parts.push_back(pending_part(pd));
  for (std::size_t i = 0; i < sp.nils; ++i) parts.push_back(nil());
  return parts;
}

ProcessPtr random_tree(Rng& rng, std::vector<ProcessPtr> parts) {
  if (parts.empty()) return nil();
  while (parts.size() > 1) {
    std::size_t i = rng.below(parts.size());
    std::size_t j = rng.below(parts.size() - 1);
    if (j >= i) ++j;
    ProcessPtr merged = make_par(parts[i], parts[j]);
    if (i < j) std::swap(i, j);
    parts.erase(parts.begin() + i);
    parts[j] = std::move(merged);
  }
  return parts.front();
}

void mutate(Rng& rng, ShapeSpec& sp) {
  switch (rng.below(3)) {
    case 0:
      ++sp.nils;
      break;
    case 1:  // an extra already-happened cause keeps the guard shape-valid
      if (!sp.executed.empty() && !sp.pending.empty())
        sp.pending[rng.below(sp.pending.size())].causes.insert(
            sp.executed[rng.below(sp.executed.size())]);
      break;
    default:  // likewise for an already-happened conflict
      if (!sp.executed.empty() && !sp.pending.empty())
        sp.pending[rng.below(sp.pending.size())].confl.insert(
            sp.executed[rng.below(sp.executed.size())]);
      break;
  }
}

ShapeSpec negative_base(Rng& rng, const CheckOptions& opts, std::size_t need_pending,
                        std::size_t need_executed) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    EventStructure es = random_es(rng, std::max(opts.max_events, need_pending + need_executed));
    Configuration c = random_config(rng, es);
    ShapeSpec sp = spec_of(es, c);
    if (sp.pending.size() >= need_pending && sp.executed.size() >= need_executed) return sp;
  }
  // flat fallback: enough unrelated events, the first ones already happened
  EventStructure es;
  for (std::size_t i = 0; i < need_pending + need_executed; ++i)
    es.events.push_back(event_name(i));
  es = normalize_es(es);
  Configuration c;
  for (std::size_t i = 0; i < need_executed; ++i) c.insert(event_name(i));
  return spec_of(es, c);
}

CheckReport check_inverse(const CheckOptions& opts) {
  CheckReport r{"inverse", 0, {}};
  Rng rng(opts.seed);
  const Instance& inst = event_psi_instance();
  for (std::size_t s = 0; s < opts.samples; ++s) {
    EventStructure es = random_es(rng, opts.max_events);
    Configuration c = random_config(rng, es);
    ShapeSpec base = spec_of(es, c);
    ProcessPtr p;
    for (int attempt = 0; attempt < 8 && !p; ++attempt) {
      ShapeSpec sp = base;
      for (std::size_t k = rng.below(4); k > 0; --k) mutate(rng, sp);
      ProcessPtr candidate = random_tree(rng, spec_parts(sp));
      if (!validate_es_shape(candidate)) p = candidate;
    }
    if (!p) p = espsi(es, c);
    ++r.inputs_tried;
    DecodedEs decoded = espsi_inverse(p);
    ProcessPtr q = espsi(decoded.es, decoded.config);
    if (!canonical_equal(inst, q, p))
      record(r, to_string(p), "re-encoding the decoded structure reproduces the process",
             to_string(q));
  }

  std::size_t per_rule = std::max<std::size_t>(1, opts.samples / 10);
  struct Craft {
    ShapeViolation::Rule rule;
    const char* what;
  };
  const Craft crafts[] = {
      {ShapeViolation::Rule::Conflict, "a broken conflict guard"},
      {ShapeViolation::Rule::Causality, "a broken cause guard"},
      {ShapeViolation::Rule::Multiplicity, "a duplicated event"},
  };
  for (const auto& craft : crafts) {
    for (std::size_t k = 0; k < per_rule; ++k) {
      std::vector<ProcessPtr> parts;
      if (craft.rule == ShapeViolation::Rule::Conflict) {
        bool self = k % 2 == 0;
        ShapeSpec sp = negative_base(rng, opts, self ? 1 : 2, 0);
        if (self) {
          PendingSpec& pd = sp.pending[rng.below(sp.pending.size())];
          pd.confl.insert(pd.event);
        } else {
          bool planted = false;
          for (std::size_t i = 0; i < sp.pending.size() && !planted; ++i) {
            for (std::size_t j = 0; j < sp.pending.size() && !planted; ++j) {
              if (i == j) continue;
              if (sp.pending[i].confl.contains(sp.pending[j].event) ||
                  sp.pending[j].confl.contains(sp.pending[i].event))
                continue;
              sp.pending[i].confl.insert(sp.pending[j].event);
              planted = true;
            }
          }
          if (!planted) {  // everything already mutually conflicted: go reflexive
            PendingSpec& pd = sp.pending[rng.below(sp.pending.size())];
            pd.confl.insert(pd.event);
          }
        }
        parts = spec_parts(sp);
      } else if (craft.rule == ShapeViolation::Rule::Causality) {
        bool self = k % 2 == 0;
        ShapeSpec sp = negative_base(rng, opts, self ? 1 : 2, 0);
        if (self) {
          PendingSpec& pd = sp.pending[rng.below(sp.pending.size())];
          pd.causes.insert(pd.event);
        } else {
          std::size_t i = rng.below(sp.pending.size());
          std::size_t j = rng.below(sp.pending.size() - 1);
          if (j >= i) ++j;
          sp.pending[i].causes.insert(sp.pending[j].event);
          sp.pending[j].causes.insert(sp.pending[i].event);
        }
        parts = spec_parts(sp);
      } else {
        std::size_t variant = k % 3;
        ShapeSpec sp = negative_base(rng, opts, variant == 0 ? 0 : 1, variant == 0 ? 1 : 0);
        parts = spec_parts(sp);
        if (variant == 0)
          parts.push_back(assert_part(sp.executed[rng.below(sp.executed.size())]));
        else if (variant == 1)
          parts.push_back(pending_part(sp.pending[rng.below(sp.pending.size())]));
        else
          parts.push_back(assert_part(sp.pending[rng.below(sp.pending.size())].event));
      }
      ProcessPtr p = random_tree(rng, std::move(parts));
      ++r.inputs_tried;
      auto violation = validate_es_shape(p);
      if (!violation || violation->rule != craft.rule) {
        record(r, to_string(p), std::string("the validator reports ") + craft.what,
               violation ? std::string(to_string(violation->rule)) + ": " + violation->message
                         : "no violation");
        continue;
      }
      try {
        espsi_inverse(p);
        record(r, to_string(p), "the decoder rejects the process", "it decoded");
      } catch (const ShapeError& err) {
        if (err.violation.rule != craft.rule)
          record(r, to_string(p), std::string("the decoder reports ") + craft.what, err.what());
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// refinement: refining the structure then encoding equals encoding then
// refining the process.

CheckReport check_refinement(const CheckOptions& opts) {
  CheckReport r{"refinement", 0, {}};
  Rng rng(opts.seed);
  const Instance& inst = event_psi_instance();
  for (std::size_t s = 0; s < opts.samples; ++s) {
    EventStructure es = random_es(rng, opts.max_events);
    std::set<Label> used;
    for (const auto& e : es.events) used.insert(es.label_of(e));
    RefinementFunction ref;
    for (const auto& l : used) {
      EventStructure image;
      std::size_t n = 1 + rng.below(3);
      for (std::size_t i = 0; i < n; ++i) image.events.push_back(Name("x" + std::to_string(i)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (rng.chance(0.3)) image.causality.insert({image.events[i], image.events[j]});
      ref.emplace(l, normalize_es(image));
    }
    ++r.inputs_tried;
    ProcessPtr lhs = espsi(refine_es(es, ref), Configuration());
    ProcessPtr rhs = refine_psi(espsi(es, Configuration()), ref, es.labels);
    if (!canonical_equal(inst, lhs, rhs))
      record(r, one_line(serialize_es(es)), "both refinement orders agree",
             to_string(canonical(inst, lhs)) + "  vs  " + to_string(canonical(inst, rhs)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// recovery: the configuration family alone determines the relations.

CheckReport check_recovery(const CheckOptions& opts) {
  CheckReport r{"recovery", 0, {}};
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    EventStructure es = random_es(rng, opts.max_events);
    ++r.inputs_tried;
    RecoveredRelations rec = recover_relations(configurations(es), es.events);
    PairSet conc;
    for (const auto& d : es.events)
      for (const auto& e : es.events)
        if (d != e && concurrent(es, d, e)) conc.insert({d, e});
    std::string input = one_line(serialize_es(es));
    if (rec.causality != es.causality)
      record(r, input, "causality " + pairs_to_string(es.causality),
             pairs_to_string(rec.causality));
    if (rec.conflict != es.conflict)
      record(r, input, "conflict " + pairs_to_string(es.conflict), pairs_to_string(rec.conflict));
    if (rec.concurrency != conc)
      record(r, input, "concurrency " + pairs_to_string(conc), pairs_to_string(rec.concurrency));
  }
  return r;
}

// ---------------------------------------------------------------------------
// dcr-semantics: four formulations of enabledness agree, and embedding an
// event structure yields the same reachable behavior.

CheckReport check_dcr_semantics(const CheckOptions& opts) {
  CheckReport r{"dcr-semantics", 0, {}};
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    DcrGraph g = random_dcr(rng, opts.max_events, opts.density);
    Marking m = random_marking(rng, g);
    Name e = g.events[rng.below(g.events.size())];
    ++r.inputs_tried;
    bool via_graph = dcr_enabled(g, m, e);
    bool via_formula = dcr_entails(m.executed, m.responses, m.included,
                                   rel_sources(g.conditions, e), rel_sources(g.milestones, e), e);
    bool via_instance = dcr_psi_instance().entails(
        dcr_assertion(m.executed, m.responses, m.included, 0),
        dcr_condition(rel_sources(g.conditions, e), rel_sources(g.milestones, e), e));
    // spelled-out reading: included, included conditions all executed, no
    // included milestone still pending
    bool oracle = m.included.contains(e);
    for (const auto& [src, dst] : g.conditions)
      if (dst == e && m.included.contains(src) && !m.executed.contains(src)) oracle = false;
    for (const auto& [src, dst] : g.milestones)
      if (dst == e && m.included.contains(src) && m.responses.contains(src)) oracle = false;
    if (via_graph != oracle || via_formula != oracle || via_instance != oracle)
      record(r, one_line(serialize_dcr(g, m)) + " event " + e.id,
             oracle ? "enabled" : "disabled",
             "graph=" + std::to_string(via_graph) + " formula=" + std::to_string(via_formula) +
                 " instance=" + std::to_string(via_instance));
  }

  std::size_t structural = std::max<std::size_t>(1, opts.samples / 5);
  for (std::size_t s = 0; s < structural; ++s) {
    EventStructure es = random_es(rng, std::min<std::size_t>(opts.max_events, 5));
    auto [g, m0] = es_to_dcr(es);
    ++r.inputs_tried;
    std::string input = one_line(serialize_es(es));
    std::set<Marking> seen{m0};
    std::deque<Marking> queue{m0};
    std::set<Configuration> reached{m0.executed};
    bool bad = false;
    while (!queue.empty() && !bad) {
      Marking m = queue.front();
      queue.pop_front();
      for (const auto& e : g.events) {
        bool via_dcr = dcr_enabled(g, m, e);
        bool via_es = es_enabled(es, m.executed, e);
        if (via_dcr != via_es) {
          record(r, input + " at " + to_string(m), via_es ? "enabled" : "disabled",
                 via_dcr ? "enabled" : "disabled");
          bad = true;
          break;
        }
        if (!via_dcr) continue;
        Marking next = dcr_execute(g, m, e);
        Configuration grown = m.executed;
        grown.insert(e);
        if (!(next.executed == grown)) {
          record(r, input + " at " + to_string(m), "execution adds exactly " + e.id,
                 to_string(next.executed));
          bad = true;
          break;
        }
        reached.insert(next.executed);
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    if (bad) continue;
    auto configs = configurations(es);
    std::set<Configuration> expected(configs.begin(), configs.end());
    if (reached != expected || seen.size() != reached.size())
      record(r, input,
             std::to_string(expected.size()) + " reachable executed-sets, markings determined by them",
             std::to_string(reached.size()) + " executed-sets over " +
                 std::to_string(seen.size()) + " markings");
  }
  return r;
}

// ---------------------------------------------------------------------------
// dcr-encoding: along every internal run of an encoded graph there is exactly
// one message in flight, it carries the frame, its generation counts the
// steps, and per depth the frames are exactly the reachable markings.

std::optional<std::pair<Marking, std::uint64_t>> marking_of(const Assertion& a) {
  const auto* tuple = std::get_if<Term::Tuple>(&a.node);
  if (!tuple || tuple->items.size() != 4) return std::nullopt;
  const auto* ex = std::get_if<Term::SetLit>(&tuple->items[0].node);
  const auto* re = std::get_if<Term::SetLit>(&tuple->items[1].node);
  const auto* in = std::get_if<Term::SetLit>(&tuple->items[2].node);
  const auto* gen = std::get_if<Term::Nat>(&tuple->items[3].node);
  if (!ex || !re || !in || !gen) return std::nullopt;
  return std::pair<Marking, std::uint64_t>{{ex->names, re->names, in->names}, gen->value};
}

CheckReport check_dcr_encoding(const CheckOptions& opts) {
  CheckReport r{"dcr-encoding", 0, {}};
  Rng rng(opts.seed);
  const Instance& inst = dcr_psi_instance();
  const std::size_t depth = static_cast<std::size_t>(std::max(opts.max_depth, 0));
  for (std::size_t s = 0; s < opts.samples; ++s) {
    DcrGraph g = random_dcr(rng, opts.max_events, opts.density);
    Marking m0 = random_marking(rng, g);
    ++r.inputs_tried;
    std::string input = one_line(serialize_dcr(g, m0));

    std::vector<std::set<Marking>> dcr_levels(depth + 1);
    dcr_levels[0].insert(m0);
    for (std::size_t k = 0; k < depth; ++k)
      for (const auto& m : dcr_levels[k])
        for (const auto& e : g.events)
          if (dcr_enabled(g, m, e)) dcr_levels[k + 1].insert(dcr_execute(g, m, e));

    std::vector<std::set<Marking>> psi_levels(depth + 1);
    ProcessPtr root = canonical(inst, dcrpsi(g, m0));
    std::map<std::string, std::size_t> seen{{alpha_key(root), 0}};
    std::deque<std::pair<ProcessPtr, std::size_t>> queue{{root, 0}};
    bool bad = false;
    bool clipped = false;
    while (!queue.empty() && !bad) {
      auto [state, k] = queue.front();
      queue.pop_front();
      Capabilities caps = capabilities(inst, inst.unit(), state);
      if (count_outputs(state) != 1 || caps.outputs.size() != 1) {
        record(r, input + " depth " + std::to_string(k), "exactly one message in flight",
               std::to_string(count_outputs(state)) + " prefixes, " +
                   std::to_string(caps.outputs.size()) + " sends");
        bad = true;
        break;
      }
      Frame f = frame(inst, *state);
      if (!f.binders.empty() || !(caps.outputs[0].payload == f.assertion)) {
        record(r, input + " depth " + std::to_string(k), "the message carries the frame",
               to_string(caps.outputs[0].payload) + " vs " + to_string(f));
        bad = true;
        break;
      }
      auto mk = marking_of(f.assertion);
      if (!mk || mk->second != k) {
        record(r, input + " depth " + std::to_string(k),
               "generation " + std::to_string(k),
               mk ? std::to_string(mk->second) : "not a marking quadruple");
        bad = true;
        break;
      }
      psi_levels[k].insert(mk->first);
      if (k == depth) continue;
      for (const auto& t : caps.taus) {
        ProcessPtr target = canonical(inst, t);
        std::string key = alpha_key(target);
        if (seen.count(key)) continue;
        if (seen.size() >= opts.max_states) {
          clipped = true;
          continue;
        }
        seen.emplace(std::move(key), k + 1);
        queue.emplace_back(std::move(target), k + 1);
      }
    }
    if (bad) continue;
    if (clipped) {
      record(r, input, "exploration within " + std::to_string(opts.max_states) + " states",
             "budget exhausted");
      continue;
    }
    for (std::size_t k = 0; k <= depth; ++k) {
      if (psi_levels[k] == dcr_levels[k]) continue;
      record(r, input + " depth " + std::to_string(k),
             std::to_string(dcr_levels[k].size()) + " distinct markings",
             std::to_string(psi_levels[k].size()) + " distinct frames");
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// pi-sanity: a forwarder and a sender synchronize once, then emit once.

CheckReport check_pi_sanity(const CheckOptions&) {
  CheckReport r{"pi-sanity", 1, {}};
  const Instance& inst = pi_instance();
  Name a("a"), b("b"), x("x");
  ProcessPtr p = make_par(
      make_input(Term::atom(a), {x}, Term::var(x), make_output(Term::var(x), Term::var(x), nil())),
      make_output(Term::atom(a), Term::atom(b), nil()));
  std::string input = to_string(p);
  auto ts = transitions(inst, inst.unit(), p);
  std::vector<Transition> taus;
  for (const auto& t : ts)
    if (t.action.kind == Action::Kind::Tau) taus.push_back(t);
  if (taus.size() != 1) {
    record(r, input, "exactly one internal step", std::to_string(taus.size()));
    return r;
  }
  ProcessPtr expected_mid = make_output(Term::atom(b), Term::atom(b), nil());
  if (!canonical_equal(inst, taus[0].target, expected_mid)) {
    record(r, input, "the internal step forwards to " + to_string(expected_mid),
           to_string(taus[0].target));
    return r;
  }
  auto after = transitions(inst, inst.unit(), taus[0].target);
  if (after.size() != 1 || after[0].action.kind != Action::Kind::Out ||
      !(after[0].action.channel == Term::atom(b)) || !after[0].action.bound.empty() ||
      !(after[0].action.payload == Term::atom(b)) ||
      !canonical_equal(inst, after[0].target, nil()))
    record(r, to_string(taus[0].target), "exactly the free output of b over b",
           after.empty() ? "no transitions" : to_string(after[0].action));
  return r;
}

}  // namespace

EventStructure random_es(Rng& rng, std::size_t max_events) {
  if (max_events == 0) throw std::invalid_argument("max_events must be positive");
  EventStructure es;
  std::size_t n = 1 + rng.below(max_events);
  for (std::size_t i = 0; i < n; ++i) es.events.push_back(event_name(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.chance(0.25)) es.causality.insert({event_name(i), event_name(j)});
  es = normalize_es(es);
  for (int attempt = 0; attempt < 16; ++attempt) {
    PairSet sampled;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.chance(0.2)) sampled.insert({event_name(i), event_name(j)});
    PairSet closed = saturate_conflict(sampled, es.causality);
    if (irreflexive(closed)) {
      es.conflict = std::move(closed);
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (rng.chance(0.5)) es.labels[event_name(i)] = kLabelPool[rng.below(4)];
  es = normalize_es(es);
  if (!validate_es(es).empty()) throw std::logic_error("sampled structure failed validation");
  return es;
}

Configuration random_config(Rng& rng, const EventStructure& es) {
  auto configs = configurations(es);
  return configs[rng.below(configs.size())];
}

DcrGraph random_dcr(Rng& rng, std::size_t max_events, double density) {
  if (max_events == 0) throw std::invalid_argument("max_events must be positive");
  DcrGraph g;
  std::size_t n = 1 + rng.below(max_events);
  for (std::size_t i = 0; i < n; ++i) g.events.push_back(event_name(i));
  PairSet DcrGraph::* const fields[] = {&DcrGraph::conditions, &DcrGraph::responses,
                                        &DcrGraph::milestones, &DcrGraph::includes,
                                        &DcrGraph::excludes};
  for (auto field : fields)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rng.chance(density)) (g.*field).insert({event_name(i), event_name(j)});
  for (std::size_t i = 0; i < n; ++i)
    if (rng.chance(0.3)) g.labels[event_name(i)] = kLabelPool[rng.below(4)];
  return g;
}

Marking random_marking(Rng& rng, const DcrGraph& g) {
  Marking m;
  for (const auto& e : g.events) {
    if (rng.chance(0.3)) m.executed.insert(e);
    if (rng.chance(0.3)) m.responses.insert(e);
    if (rng.chance(0.7)) m.included.insert(e);
  }
  return m;
}

std::vector<std::string> check_names() {
  return {"instance-laws", "frames",   "steps",         "diamonds",     "inverse",
          "refinement",    "recovery", "dcr-semantics", "dcr-encoding", "pi-sanity"};
}

CheckReport run_check(const std::string& name, const CheckOptions& opts) {
  std::string key = name;  // accepted shorthands
  if (key == "lemma1") key = "frames";
  if (key == "lemma2") key = "steps";
  if (key == "remark1") key = "recovery";
  if (key == "instance-laws") return check_instance_laws(opts);
  if (key == "frames") return check_frames(opts);
  if (key == "steps") return check_steps(opts);
  if (key == "diamonds") return check_diamonds(opts);
  if (key == "inverse") return check_inverse(opts);
  if (key == "refinement") return check_refinement(opts);
  if (key == "recovery") return check_recovery(opts);
  if (key == "dcr-semantics") return check_dcr_semantics(opts);
  if (key == "dcr-encoding") return check_dcr_encoding(opts);
  if (key == "pi-sanity") return check_pi_sanity(opts);
  std::string known;
  for (const auto& n : check_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown check '" + name + "' (known: " + known + ")");
}

std::string format_report(const CheckReport& r) {
  std::ostringstream out;
  out << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.inputs_tried << " inputs";
  if (!r.passed()) out << ", " << r.failures.size() << " failures";
  out << ")\n";
  std::size_t shown = std::min<std::size_t>(r.failures.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    out << "  input:    " << r.failures[i].input << "\n";
    out << "  expected: " << r.failures[i].expected << "\n";
    out << "  actual:   " << r.failures[i].actual << "\n";
  }
  if (r.failures.size() > shown)
    out << "  ... " << (r.failures.size() - shown) << " more failures\n";
  return out.str();
}

}  // namespace psi
