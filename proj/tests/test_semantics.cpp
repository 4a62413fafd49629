#include <doctest.h>

#include <algorithm>

#include "psi/dcr_psi.hpp"
#include "psi/errors.hpp"
#include "psi/event_psi.hpp"
#include "psi/pi.hpp"
#include "psi/semantics.hpp"

using namespace psi;

namespace {

EventStructure single_event(const std::string& id) {
  EventStructure es;
  es.events = {Name(id)};
  return normalize_es(es);
}

EventStructure two_concurrent() {
  EventStructure es;
  es.events = {Name("a"), Name("b")};
  return normalize_es(es);
}

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("nil has the empty frame") {
    Frame f = frame(pi_instance(), *nil());
    CHECK(f.binders.empty());
    CHECK(pi_instance().assertion_eq(f.assertion, pi_instance().unit()));
  }

  TEST_CASE("restriction contributes its binder") {
    auto p = make_restrict(Name("a"), make_assert(ev_assertion(NameSet::of({"a"}))));
    Frame f = frame(event_psi_instance(), *p);
    REQUIRE(f.binders.size() == 1);
    CHECK(f.binders[0].id == "a");
    CHECK(f.assertion == ev_assertion(NameSet::of({"a"})));
  }

  TEST_CASE("case branches contribute nothing") {
    auto guarded = make_case({{ev_condition(NameSet(), NameSet()),
                               make_assert(ev_assertion(NameSet::of({"b"})))}});
    auto p = make_par(make_assert(ev_assertion(NameSet::of({"a"}))), guarded);
    Frame f = frame(event_psi_instance(), *p);
    CHECK(f.binders.empty());
    CHECK(f.assertion == ev_assertion(NameSet::of({"a"})));
  }

  TEST_CASE("parallel frames compose") {
    auto p = make_par(make_assert(ev_assertion(NameSet::of({"a"}))),
                      make_assert(ev_assertion(NameSet::of({"b"}))));
    Frame f = frame(event_psi_instance(), *p);
    CHECK(f.assertion == ev_assertion(NameSet::of({"a", "b"})));
  }

  TEST_CASE("frame equality renames binders") {
    auto p = make_restrict(Name("a"), make_assert(ev_assertion(NameSet::of({"a"}))));
    auto q = make_restrict(Name("b"), make_assert(ev_assertion(NameSet::of({"b"}))));
    CHECK(frame_equal(event_psi_instance(), frame(event_psi_instance(), *p),
                      frame(event_psi_instance(), *q)));
    auto r = make_restrict(Name("b"), make_assert(ev_assertion(NameSet())));
    CHECK_FALSE(frame_equal(event_psi_instance(), frame(event_psi_instance(), *p),
                            frame(event_psi_instance(), *r)));
  }
}

TEST_SUITE("substitution") {
  TEST_CASE("variables are replaced by ground terms") {
    auto p = make_output(Term::atom("m"), Term::var("X"), nil());
    auto q = substitute(p, {{Name("X"), Term::atom("a")}});
    const auto* out = std::get_if<Process::Output>(&q->node);
    REQUIRE(out != nullptr);
    CHECK(out->payload == Term::atom("a"));
  }

  TEST_CASE("restriction binders move out of the way of incoming names") {
    auto p = make_restrict(Name("a"), make_output(Term::atom("m"), Term::var("X"), nil()));
    auto q = substitute(p, {{Name("X"), Term::atom("a")}});
    const auto* res = std::get_if<Process::Restrict>(&q->node);
    REQUIRE(res != nullptr);
    CHECK(res->name.id == "a'");
    const auto* out = std::get_if<Process::Output>(&res->body->node);
    REQUIRE(out != nullptr);
    CHECK(out->payload == Term::atom("a"));
  }

  TEST_CASE("input prefixes shadow their own pattern variables") {
    auto body = make_output(Term::atom("m"), Term::var("x"), nil());
    auto p = make_input(Term::atom("a"), {Name("x")}, Term::var("x"), body);
    auto q = substitute(p, {{Name("x"), Term::atom("b")}});
    const auto* in = std::get_if<Process::Input>(&q->node);
    REQUIRE(in != nullptr);
    const auto* out = std::get_if<Process::Output>(&in->cont->node);
    REQUIRE(out != nullptr);
    CHECK(out->payload == Term::var("x"));
  }
}

TEST_SUITE("transitions") {
  TEST_CASE("nil has no transitions") {
    CHECK(transitions(pi_instance(), pi_instance().unit(), nil()).empty());
  }

  TEST_CASE("a pending event announces itself once") {
    auto p = espsi(single_event("a"), Configuration());
    auto ts = transitions(event_psi_instance(), event_psi_instance().unit(), p);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].action.kind == Action::Kind::Out);
    CHECK(ts[0].action.channel == Term::atom("a"));
    CHECK(ts[0].action.bound.empty());
    CHECK(ts[0].action.payload == Term::atom("a"));
    CHECK(canonical_equal(event_psi_instance(), ts[0].target,
                          make_assert(ev_assertion(NameSet::of({"a"})))));
  }

  TEST_CASE("communication joins an output with a matching input") {
    auto receiver = make_input(Term::atom("a"), {Name("x")}, Term::var("x"),
                               make_output(Term::var("x"), Term::var("x"), nil()));
    auto p = make_par(make_output(Term::atom("a"), Term::atom("b"), nil()), receiver);
    auto ts = transitions(pi_instance(), pi_instance().unit(), p);
    REQUIRE(ts.size() == 2);
    auto tau = std::find_if(ts.begin(), ts.end(),
                            [](const Transition& t) { return t.action.kind == Action::Kind::Tau; });
    REQUIRE(tau != ts.end());
    auto expected = make_par(nil(), make_output(Term::atom("b"), Term::atom("b"), nil()));
    CHECK(canonical_equal(pi_instance(), tau->target, expected));
  }

  TEST_CASE("restricted payloads are extruded") {
    // new b. a<b>  emits b as a bound name.
    auto p = make_restrict(Name("b"), make_output(Term::atom("a"), Term::atom("b"), nil()));
    auto ts = transitions(pi_instance(), pi_instance().unit(), p);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].action.kind == Action::Kind::Out);
    REQUIRE(ts[0].action.bound.size() == 1);
    CHECK(ts[0].action.bound[0] == Name("b"));
  }

  TEST_CASE("restriction of the channel blocks the output") {
    auto p = make_restrict(Name("a"), make_output(Term::atom("a"), Term::atom("b"), nil()));
    CHECK(transitions(pi_instance(), pi_instance().unit(), p).empty());
  }

  TEST_CASE("replication behaves like one unfolding") {
    auto body = make_output(Term::atom("a"), Term::atom("b"), nil());
    auto bang = make_bang(body);
    auto unfolded = make_par(body, bang);
    auto ts1 = transitions(pi_instance(), pi_instance().unit(), bang);
    auto ts2 = transitions(pi_instance(), pi_instance().unit(), unfolded);
    REQUIRE(ts1.size() == ts2.size());
    for (std::size_t i = 0; i < ts1.size(); ++i) {
      CHECK(to_string(ts1[i].action) == to_string(ts2[i].action));
      CHECK(canonical_equal(pi_instance(), ts1[i].target, ts2[i].target));
    }
  }

  TEST_CASE("results are deterministic") {
    auto p = espsi(two_concurrent(), Configuration());
    auto once = transitions(event_psi_instance(), event_psi_instance().unit(), p);
    auto twice = transitions(event_psi_instance(), event_psi_instance().unit(), p);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK(to_string(once[i].action) == to_string(twice[i].action));
      CHECK(process_equal(once[i].target, twice[i].target));
    }
  }

  TEST_CASE("unfolding past the hard cap throws") {
    std::vector<ProcessPtr> many;
    auto body = make_output(Term::atom("a"), Term::atom("a"), nil());
    for (int i = 0; i < 4200; ++i) many.push_back(make_bang(body));
    auto p = par_all(std::move(many));
    CHECK_THROWS_AS(transitions(pi_instance(), pi_instance().unit(), p), BudgetExceeded);
  }
}

TEST_SUITE("canonical forms") {
  TEST_CASE("alpha keys ignore binder spelling") {
    auto p = make_restrict(Name("a"), make_output(Term::atom("a"), Term::atom("b"), nil()));
    auto q = make_restrict(Name("c"), make_output(Term::atom("c"), Term::atom("b"), nil()));
    CHECK(alpha_key(p) == alpha_key(q));
    auto r = make_restrict(Name("b"), make_output(Term::atom("b"), Term::atom("b"), nil()));
    CHECK(alpha_key(p) != alpha_key(r));
  }

  TEST_CASE("parallel components are flattened and sorted") {
    auto a = make_output(Term::atom("a"), Term::atom("a"), nil());
    auto b = make_output(Term::atom("b"), Term::atom("b"), nil());
    CHECK(canonical_equal(pi_instance(), make_par(a, b), make_par(b, a)));
    CHECK(canonical_equal(pi_instance(), make_par(nil(), a), a));
    CHECK_FALSE(canonical_equal(pi_instance(), a, b));
  }

  TEST_CASE("inert subterms disappear") {
    CHECK(canonical_equal(pi_instance(), make_par(nil(), nil()), nil()));
    CHECK(canonical_equal(pi_instance(), make_bang(nil()), nil()));
    CHECK(canonical_equal(pi_instance(), make_assert(pi_instance().unit()), nil()));
  }
}

TEST_SUITE("exploration") {
  TEST_CASE("nil explores to a single state") {
    Lts lts = explore(pi_instance(), pi_instance().unit(), nil());
    CHECK(lts.states.size() == 1);
    CHECK(lts.edges.empty());
    CHECK_FALSE(lts.truncated());
  }

  TEST_CASE("two concurrent events form a diamond") {
    auto p = espsi(two_concurrent(), Configuration());
    Lts lts = explore(event_psi_instance(), event_psi_instance().unit(), p);
    CHECK(lts.states.size() == 4);
    CHECK(lts.edges.size() == 4);
    CHECK_FALSE(lts.truncated());
  }

  TEST_CASE("a self-excluding event gives one internal step") {
    // The marking broadcast stays observable, so project onto internal steps:
    // exactly one, from the root, and the event cannot fire a second time.
    DcrGraph g;
    g.events = {Name("e")};
    g.excludes = {{Name("e"), Name("e")}};
    Marking m{NameSet(), NameSet(), NameSet::of({"e"})};
    Lts lts = explore(dcr_psi_instance(), dcr_psi_instance().unit(), dcrpsi(g, m));
    std::vector<Lts::Edge> taus;
    for (const auto& e : lts.edges)
      if (e.action.kind == Action::Kind::Tau) taus.push_back(e);
    REQUIRE(taus.size() == 1);
    CHECK(taus[0].from == 0);
    Frame f = frame(dcr_psi_instance(), *lts.states[taus[0].to]);
    CHECK(f.assertion ==
          dcr_assertion(NameSet::of({"e"}), NameSet(), NameSet(), 1));
    for (const auto& e : lts.edges)
      CHECK((e.from != taus[0].to || e.action.kind != Action::Kind::Tau));
  }

  TEST_CASE("depth and state bounds clip and flag") {
    auto p = espsi(two_concurrent(), Configuration());
    Lts shallow = explore(event_psi_instance(), event_psi_instance().unit(), p,
                          ExploreOptions{1, 10000, {}});
    CHECK(shallow.depth_clipped);
    CHECK(shallow.truncated());
    Lts small = explore(event_psi_instance(), event_psi_instance().unit(), p,
                        ExploreOptions{8, 2, {}});
    CHECK(small.state_clipped);
    CHECK(small.states.size() == 2);
  }

  TEST_CASE("replication budget exhaustion flags the result") {
    std::vector<ProcessPtr> many;
    auto body = make_output(Term::atom("a"), Term::atom("a"), nil());
    for (int i = 0; i < 4200; ++i) many.push_back(make_bang(body));
    Lts lts = explore(pi_instance(), pi_instance().unit(), par_all(std::move(many)));
    CHECK(lts.budget_clipped);
    CHECK(lts.truncated());
  }
}

TEST_SUITE("name equality channels") {
  TEST_CASE("equal names are connected, distinct names are not") {
    CHECK(pi_instance().entails(pi_instance().unit(),
                                Condition::chan_eq(Term::atom("a"), Term::atom("a"))));
    CHECK_FALSE(pi_instance().entails(pi_instance().unit(),
                                      Condition::chan_eq(Term::atom("a"), Term::atom("b"))));
    CHECK(pi_instance().assertion_eq(pi_instance().compose(pi_instance().unit(),
                                                           pi_instance().unit()),
                                     pi_instance().unit()));
  }
}
