#include <doctest.h>

#include <algorithm>

#include "psi/errors.hpp"
#include "psi/event_psi.hpp"

using namespace psi;

namespace {

Name n(const std::string& id) { return Name(id); }

EventStructure build(std::vector<std::string> events, PairSet causes = {}, PairSet conflict = {},
                     std::map<Name, Label> labels = {}) {
  EventStructure es;
  for (auto& e : events) es.events.push_back(Name(std::move(e)));
  es.causality = std::move(causes);
  es.conflict = std::move(conflict);
  es.labels = std::move(labels);
  return normalize_es(es);
}

const Instance& ev = event_psi_instance();

/// The guard of a pending component, if p is a single-branch case.
const Term* guard_of(const ProcessPtr& p) {
  const auto* c = std::get_if<Process::Case>(&p->node);
  if (!c || c->branches.size() != 1) return nullptr;
  return c->branches[0].guard.as_payload();
}

}  // namespace

TEST_SUITE("event assertions") {
  TEST_CASE("entailment needs causes in and conflicts out") {
    CHECK(ev_entails(NameSet::of({"a"}), NameSet::of({"a"}), NameSet::of({"b"})));
    CHECK_FALSE(ev_entails(NameSet::of({"b"}), NameSet::of({"a"}), NameSet()));
    CHECK_FALSE(ev_entails(NameSet::of({"a", "b"}), NameSet::of({"a"}), NameSet::of({"b"})));
  }

  TEST_CASE("the instance mirrors the raw formula") {
    CHECK(ev.entails(ev_assertion(NameSet::of({"a"})),
                     ev_condition(NameSet::of({"a"}), NameSet::of({"b"}))));
    CHECK_FALSE(ev.entails(ev_assertion(NameSet::of({"a", "b"})),
                           ev_condition(NameSet::of({"a"}), NameSet::of({"b"}))));
    CHECK(ev.assertion_eq(ev.compose(ev_assertion(NameSet::of({"a"})),
                                     ev_assertion(NameSet::of({"b"}))),
                          ev_assertion(NameSet::of({"a", "b"}))));
    CHECK(ev.assertion_eq(ev.unit(), ev_assertion(NameSet())));
  }
}

TEST_SUITE("event encoding") {
  TEST_CASE("executed events become assertions, pending ones guarded outputs") {
    auto es = build({"a", "b"}, {{n("a"), n("b")}});
    auto p = espsi(es, Configuration());
    std::vector<ProcessPtr> parts;
    flatten_par(p, parts);
    REQUIRE(parts.size() == 2);
    const Term* g0 = guard_of(parts[0]);
    const Term* g1 = guard_of(parts[1]);
    REQUIRE(g0 != nullptr);
    REQUIRE(g1 != nullptr);
    CHECK(*g0 == *ev_condition(NameSet(), NameSet()).as_payload());
    CHECK(*g1 == *ev_condition(NameSet::of({"a"}), NameSet()).as_payload());
  }

  TEST_CASE("a fully executed structure is pure assertion") {
    auto es = build({"a"});
    auto p = espsi(es, NameSet::of({"a"}));
    CHECK(process_equal(p, make_assert(ev_assertion(NameSet::of({"a"})))));
  }

  TEST_CASE("conflicting events guard against each other") {
    auto es = build({"a", "b"}, {}, {{n("a"), n("b")}});
    auto p = espsi(es, Configuration());
    std::vector<ProcessPtr> parts;
    flatten_par(p, parts);
    REQUIRE(parts.size() == 2);
    CHECK(*guard_of(parts[0]) == *ev_condition(NameSet(), NameSet::of({"b"})).as_payload());
    CHECK(*guard_of(parts[1]) == *ev_condition(NameSet(), NameSet::of({"a"})).as_payload());
  }

  TEST_CASE("the empty structure encodes to nil") {
    CHECK(process_equal(espsi(build({}), Configuration()), nil()));
  }

  TEST_CASE("non-configurations are refused") {
    auto es = build({"a", "b"}, {{n("a"), n("b")}});
    CHECK_THROWS_AS(espsi(es, NameSet::of({"b"})), InvalidConfiguration);
  }

  TEST_CASE("the frame collects exactly the configuration") {
    auto es = build({"a", "b", "c"}, {{n("a"), n("b")}});
    auto f = frame(ev, *espsi(es, NameSet::of({"a", "c"})));
    CHECK(f.binders.empty());
    CHECK(f.assertion == ev_assertion(NameSet::of({"a", "c"})));
  }
}

TEST_SUITE("shape validation") {
  TEST_CASE("encoder output always passes") {
    auto es = build({"a", "b", "c"}, {{n("a"), n("b")}}, {{n("b"), n("c")}});
    for (const auto& c : configurations(es))
      CHECK_FALSE(validate_es_shape(espsi(es, c)).has_value());
  }

  TEST_CASE("duplicated assertions are flagged as multiples") {
    auto p = make_par(make_assert(ev_assertion(NameSet::of({"a"}))),
                      make_assert(ev_assertion(NameSet::of({"a"}))));
    auto v = validate_es_shape(p);
    REQUIRE(v.has_value());
    CHECK(v->rule == ShapeViolation::Rule::Multiplicity);
    CHECK_THROWS_AS(espsi_inverse(p), ShapeError);
  }

  TEST_CASE("two-branch cases are outside the grammar") {
    auto body = make_output(Term::atom("a"), Term::atom("a"),
                            make_assert(ev_assertion(NameSet::of({"a"}))));
    auto guard = ev_condition(NameSet(), NameSet());
    auto p = make_case({{guard, body}, {guard, body}});
    auto v = validate_es_shape(p);
    REQUIRE(v.has_value());
    CHECK(v->rule == ShapeViolation::Rule::Grammar);
  }

  TEST_CASE("one-sided conflicts between pending events are flagged") {
    auto announce = [](const std::string& e) {
      return make_output(Term::atom(e), Term::atom(e),
                         make_assert(ev_assertion(NameSet::of({e}))));
    };
    auto p = make_par(
        make_case({{ev_condition(NameSet(), NameSet::of({"b"})), announce("a")}}),
        make_case({{ev_condition(NameSet(), NameSet()), announce("b")}}));
    auto v = validate_es_shape(p);
    REQUIRE(v.has_value());
    CHECK(v->rule == ShapeViolation::Rule::Conflict);
  }

  TEST_CASE("an event may not cause itself") {
    auto p = make_case({{ev_condition(NameSet::of({"a"}), NameSet()),
                         make_output(Term::atom("a"), Term::atom("a"),
                                     make_assert(ev_assertion(NameSet::of({"a"}))))}});
    auto v = validate_es_shape(p);
    REQUIRE(v.has_value());
    CHECK(v->rule == ShapeViolation::Rule::Causality);
  }

  TEST_CASE("rule names are printable") {
    CHECK(std::string(to_string(ShapeViolation::Rule::Grammar)) == "grammar");
    CHECK(std::string(to_string(ShapeViolation::Rule::Multiplicity)) == "multiplicity");
  }
}

TEST_SUITE("decoding") {
  TEST_CASE("decoding inverts encoding on a chain") {
    // Relations between already-executed events leave no trace in the
    // process, so exact recovery is only promised while one endpoint is
    // still pending.
    auto es = build({"a", "b"}, {{n("a"), n("b")}});
    for (const auto& c : {Configuration(), Configuration::of({"a"})}) {
      DecodedEs d = espsi_inverse(espsi(es, c));
      CHECK(d.config == c);
      CHECK(d.es.causality == es.causality);
      CHECK(d.es.conflict == es.conflict);
      CHECK(d.es.events == es.events);
    }
    DecodedEs full = espsi_inverse(espsi(es, Configuration::of({"a", "b"})));
    CHECK(full.config == Configuration::of({"a", "b"}));
    CHECK(full.es.events == es.events);
    CHECK(full.es.conflict.empty());
  }

  TEST_CASE("re-encoding a decoded process reproduces it") {
    auto es = build({"a", "b", "c"}, {{n("a"), n("b")}}, {{n("b"), n("c")}});
    for (const auto& c : configurations(es)) {
      auto p = espsi(es, c);
      DecodedEs d = espsi_inverse(p);
      CHECK(canonical_equal(ev, espsi(d.es, d.config), p));
    }
  }
}

TEST_SUITE("encoded refinement") {
  TEST_CASE("a pending event splits into a guarded chain") {
    auto es = build({"a"}, {}, {}, {{n("a"), "step"}});
    RefinementFunction ref{{"step", build({"u", "v"}, {{n("u"), n("v")}})}};
    auto refined = refine_psi(espsi(es, Configuration()), ref, es.labels);
    std::vector<ProcessPtr> parts;
    flatten_par(refined, parts);
    REQUIRE(parts.size() == 2);
    CHECK(*guard_of(parts[0]) == *ev_condition(NameSet(), NameSet()).as_payload());
    CHECK(*guard_of(parts[1]) == *ev_condition(NameSet::of({"a.u"}), NameSet()).as_payload());
  }

  TEST_CASE("an executed event splits into assertions") {
    auto es = build({"a"}, {}, {}, {{n("a"), "step"}});
    RefinementFunction ref{{"step", build({"u", "v"}, {{n("u"), n("v")}})}};
    auto refined = refine_psi(espsi(es, NameSet::of({"a"})), ref, es.labels);
    auto expected = espsi(refine_es(es, ref), NameSet::of({"a.u", "a.v"}));
    CHECK(canonical_equal(ev, refined, expected));
  }

  TEST_CASE("encoding and refinement commute") {
    auto es = build({"a", "b"}, {}, {{n("a"), n("b")}}, {{n("a"), "l"}, {n("b"), "r"}});
    RefinementFunction ref{{"l", build({"x", "y"}, {{n("x"), n("y")}})},
                           {"r", build({"z"})}};
    auto via_structures = espsi(refine_es(es, ref), Configuration());
    auto via_processes = refine_psi(espsi(es, Configuration()), ref, es.labels);
    CHECK(canonical_equal(ev, via_structures, via_processes));
  }

  TEST_CASE("missing labels are refused") {
    auto es = build({"a"}, {}, {}, {{n("a"), "step"}});
    CHECK_THROWS_AS(refine_psi(espsi(es, Configuration()), RefinementFunction{}, es.labels),
                    MissingLabel);
    CHECK_THROWS_AS(refine_psi(espsi(es, Configuration()),
                               RefinementFunction{{"step", build({"u"})}},
                               std::map<Name, Label>{}),
                    MissingLabel);
  }
}

TEST_SUITE("interleaving diamonds") {
  TEST_CASE("independent events commute") {
    auto es = build({"a", "b"});
    CHECK(check_diamond(es, Configuration(), n("a"), n("b")));
  }

  TEST_CASE("ordered events do not commute") {
    auto es = build({"a", "b"}, {{n("a"), n("b")}});
    CHECK_FALSE(check_diamond(es, Configuration(), n("a"), n("b")));
  }

  TEST_CASE("conflicting events do not commute") {
    auto es = build({"a", "b"}, {}, {{n("a"), n("b")}});
    CHECK_FALSE(check_diamond(es, Configuration(), n("a"), n("b")));
  }

  TEST_CASE("the starting configuration matters") {
    // c ends up containing b's cause, so both orders only open up later.
    auto es = build({"a", "b", "c"}, {{n("c"), n("b")}});
    CHECK_FALSE(check_diamond(es, Configuration(), n("a"), n("b")));
    CHECK(check_diamond(es, NameSet::of({"c"}), n("a"), n("b")));
  }
}
