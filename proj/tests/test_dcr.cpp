#include <doctest.h>

#include <algorithm>
#include <set>

#include "psi/dcr.hpp"
#include "psi/dcr_psi.hpp"
#include "psi/errors.hpp"
#include "psi/event_structure.hpp"

using namespace psi;

namespace {

Name n(const std::string& id) { return Name(id); }

DcrGraph graph(std::vector<std::string> events) {
  DcrGraph g;
  for (auto& e : events) g.events.push_back(Name(std::move(e)));
  std::sort(g.events.begin(), g.events.end());
  return g;
}

Marking all_included(const DcrGraph& g) {
  return Marking{NameSet(), NameSet(), NameSet(g.events)};
}

const Instance& dp = dcr_psi_instance();

}  // namespace

TEST_SUITE("marking dynamics") {
  TEST_CASE("an included unconstrained event is enabled") {
    auto g = graph({"e"});
    CHECK(dcr_enabled(g, all_included(g), n("e")));
    CHECK_FALSE(dcr_enabled(g, Marking{NameSet(), NameSet(), NameSet()}, n("e")));
    CHECK_THROWS_AS(dcr_enabled(g, all_included(g), n("z")), UnknownEvent);
  }

  TEST_CASE("conditions gate on execution of included sources") {
    auto g = graph({"a", "e"});
    g.conditions = {{n("a"), n("e")}};
    CHECK_FALSE(dcr_enabled(g, all_included(g), n("e")));
    CHECK(dcr_enabled(g, Marking{NameSet::of({"a"}), NameSet(), NameSet::of({"a", "e"})},
                      n("e")));
    // An excluded condition source stops mattering.
    CHECK(dcr_enabled(g, Marking{NameSet(), NameSet(), NameSet::of({"e"})}, n("e")));
  }

  TEST_CASE("milestones gate on pending responses") {
    auto g = graph({"a", "e"});
    g.milestones = {{n("a"), n("e")}};
    CHECK_FALSE(dcr_enabled(g, Marking{NameSet(), NameSet::of({"a"}), NameSet::of({"a", "e"})},
                            n("e")));
    CHECK(dcr_enabled(g, all_included(g), n("e")));
    // An excluded milestone source stops mattering.
    CHECK(dcr_enabled(g, Marking{NameSet(), NameSet::of({"a"}), NameSet::of({"e"})}, n("e")));
  }

  TEST_CASE("execution records, rotates responses, excludes then includes") {
    auto self_excl = graph({"e"});
    self_excl.excludes = {{n("e"), n("e")}};
    CHECK(dcr_execute(self_excl, all_included(self_excl), n("e")) ==
          Marking{NameSet::of({"e"}), NameSet(), NameSet()});

    auto resp = graph({"e", "f"});
    resp.responses = {{n("e"), n("f")}};
    CHECK(dcr_execute(resp, all_included(resp), n("e")) ==
          Marking{NameSet::of({"e"}), NameSet::of({"f"}), NameSet::of({"e", "f"})});

    auto both = graph({"e", "f"});
    both.excludes = {{n("e"), n("f")}};
    both.includes = {{n("e"), n("f")}};
    Marking after = dcr_execute(both, all_included(both), n("e"));
    CHECK(after.included.contains(n("f")));
  }

  TEST_CASE("executing a disabled event is refused") {
    auto g = graph({"a", "e"});
    g.conditions = {{n("a"), n("e")}};
    CHECK_THROWS_AS(dcr_execute(g, all_included(g), n("e")), NotEnabled);
  }

  TEST_CASE("transition enumeration follows enabledness") {
    auto g = graph({"a", "b"});
    auto ts = dcr_transitions(g, all_included(g));
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].first == n("a"));
    CHECK(ts[1].first == n("b"));
    CHECK(dcr_transitions(g, Marking{NameSet(), NameSet(), NameSet()}).empty());
  }

  TEST_CASE("markings may only mention declared events") {
    auto g = graph({"e"});
    CHECK_THROWS_AS(validate_marking(g, Marking{NameSet::of({"z"}), NameSet(), NameSet()}),
                    InvalidMarking);
    CHECK_NOTHROW(validate_marking(g, all_included(g)));
  }
}

TEST_SUITE("event structures as graphs") {
  TEST_CASE("conflict becomes mutual exclusion plus self-exclusion") {
    EventStructure es;
    es.events = {n("a"), n("b")};
    es.conflict = {{n("a"), n("b")}, {n("b"), n("a")}};
    es = normalize_es(es);
    auto [g, m] = es_to_dcr(es);
    CHECK(g.excludes == PairSet{{n("a"), n("a")}, {n("a"), n("b")},
                                {n("b"), n("a")}, {n("b"), n("b")}});
    CHECK(g.conditions.empty());
    CHECK(m == Marking{NameSet(), NameSet(), NameSet::of({"a", "b"})});
  }

  TEST_CASE("causality becomes conditions") {
    EventStructure es;
    es.events = {n("a"), n("b")};
    es.causality = {{n("a"), n("b")}};
    es = normalize_es(es);
    auto [g, m] = es_to_dcr(es);
    CHECK(g.conditions == PairSet{{n("a"), n("b")}});
    CHECK(g.excludes == PairSet{{n("a"), n("a")}, {n("b"), n("b")}});
    auto ts = dcr_transitions(g, m);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].first == n("a"));
  }

  TEST_CASE("reachable executed sets are exactly the configurations") {
    EventStructure es;
    es.events = {n("a"), n("b"), n("c")};
    es.causality = {{n("a"), n("b")}};
    es.conflict = {{n("b"), n("c")}, {n("c"), n("b")}};
    es = normalize_es(es);
    auto [g, m0] = es_to_dcr(es);
    std::set<Marking> seen{m0};
    std::set<NameSet> executed{m0.executed};
    std::vector<Marking> queue{m0};
    while (!queue.empty()) {
      Marking m = queue.back();
      queue.pop_back();
      for (const auto& [e, next] : dcr_transitions(g, m)) {
        if (seen.insert(next).second) {
          executed.insert(next.executed);
          queue.push_back(next);
        }
      }
    }
    auto cs = configurations(es);
    std::set<NameSet> expected(cs.begin(), cs.end());
    CHECK(executed == expected);
    // Self-exclusion makes each event fire at most once, so markings and
    // executed sets are in bijection.
    CHECK(seen.size() == expected.size());
  }
}

TEST_SUITE("marking assertions") {
  TEST_CASE("composition keeps the newest generation") {
    auto low = dcr_assertion(NameSet(), NameSet(), NameSet(), 0);
    auto high = dcr_assertion(NameSet::of({"e"}), NameSet(), NameSet::of({"e"}), 2);
    CHECK(dp.compose(low, high) == high);
    CHECK(dp.compose(high, low) == high);
  }

  TEST_CASE("generation ties merge componentwise") {
    auto a = dcr_assertion(NameSet::of({"a"}), NameSet(), NameSet(), 1);
    auto b = dcr_assertion(NameSet(), NameSet::of({"b"}), NameSet(), 1);
    CHECK(dp.compose(a, b) ==
          dcr_assertion(NameSet::of({"a"}), NameSet::of({"b"}), NameSet(), 1));
  }

  TEST_CASE("the unit loses to anything newer") {
    auto a = dcr_assertion(NameSet::of({"a"}), NameSet(), NameSet(), 3);
    CHECK(dp.compose(a, dp.unit()) == a);
    CHECK(dp.compose(dp.unit(), a) == a);
    CHECK(dp.compose(dp.unit(), dp.unit()) == dp.unit());
  }

  TEST_CASE("entailment mirrors enabledness") {
    CHECK(dcr_entails(NameSet::of({"a"}), NameSet(), NameSet::of({"a", "e"}),
                      NameSet::of({"a"}), NameSet(), n("e")));
    CHECK_FALSE(dcr_entails(NameSet(), NameSet(), NameSet(), NameSet(), NameSet(), n("e")));
    CHECK(dp.entails(dcr_assertion(NameSet::of({"a"}), NameSet(), NameSet::of({"a", "e"}), 1),
                     dcr_condition(NameSet::of({"a"}), NameSet(), n("e"))));
    CHECK_FALSE(dp.entails(dp.unit(), dcr_condition(NameSet(), NameSet(), n("e"))));
  }
}

TEST_SUITE("marking encoding") {
  TEST_CASE("the empty graph is a lone messenger") {
    auto g = graph({});
    auto p = dcrpsi(g, Marking{});
    CHECK(count_outputs(p) == 1);
    // No handlers, so the only capability is broadcasting the marking itself.
    auto ts = transitions(dp, dp.unit(), p);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].action.kind == Action::Kind::Out);
    CHECK(ts[0].action.payload == dcr_assertion(NameSet(), NameSet(), NameSet(), 0));
    Frame f = frame(dp, *p);
    CHECK(f.assertion == dp.unit());
  }

  TEST_CASE("the initial frame is the marking at generation zero") {
    auto g = graph({"e", "f"});
    Marking m{NameSet::of({"e"}), NameSet(), NameSet::of({"f"})};
    Frame f = frame(dp, *dcrpsi(g, m));
    CHECK(f.assertion == dcr_assertion(m.executed, m.responses, m.included, 0));
  }

  TEST_CASE("firing an event reproduces its marking update") {
    auto g = graph({"e", "f"});
    g.responses = {{n("e"), n("f")}};
    auto p = dcrpsi(g, all_included(g));
    auto ts = transitions(dp, dp.unit(), p);
    std::vector<Transition> taus;
    for (const auto& t : ts)
      if (t.action.kind == Action::Kind::Tau) taus.push_back(t);
    REQUIRE(taus.size() == 2);  // either event can read the message
    std::vector<Assertion> frames;
    for (const auto& t : taus) {
      CHECK(count_outputs(t.target) == 1);
      frames.push_back(frame(dp, *t.target).assertion);
    }
    auto fired_e = dcr_assertion(NameSet::of({"e"}), NameSet::of({"f"}),
                                 NameSet::of({"e", "f"}), 1);
    auto fired_f = dcr_assertion(NameSet::of({"f"}), NameSet(), NameSet::of({"e", "f"}), 1);
    CHECK(std::count(frames.begin(), frames.end(), fired_e) == 1);
    CHECK(std::count(frames.begin(), frames.end(), fired_f) == 1);
  }

  TEST_CASE("markings must fit the graph") {
    auto g = graph({"e"});
    CHECK_THROWS_AS(dcrpsi(g, Marking{NameSet::of({"z"}), NameSet(), NameSet()}),
                    InvalidMarking);
  }

  TEST_CASE("output counting sees through parallel and restriction only") {
    auto out = make_output(Term::atom("a"), Term::atom("a"), nil());
    CHECK(count_outputs(nil()) == 0);
    CHECK(count_outputs(out) == 1);
    CHECK(count_outputs(make_par(out, out)) == 2);
    CHECK(count_outputs(make_restrict(n("a"), out)) == 1);
    CHECK(count_outputs(make_bang(out)) == 0);
    CHECK(count_outputs(make_input(Term::atom("a"), {n("x")}, Term::var("x"), out)) == 0);
    // A continuation behind a prefix is not yet enabled.
    CHECK(count_outputs(make_output(Term::atom("a"), Term::atom("a"), out)) == 1);
  }

  TEST_CASE("the message channel avoids event names") {
    auto g = graph({"m", "m'"});
    Name ch = dcr_channel(g);
    CHECK_FALSE(NameSet(g.events).contains(ch));
  }
}
