#include <doctest.h>

#include "psi/name.hpp"
#include "psi/term.hpp"

using namespace psi;

TEST_SUITE("names") {
  TEST_CASE("name sets stay sorted and deduplicated") {
    NameSet s = NameSet::of({"b", "a", "b"});
    CHECK(s.size() == 2);
    CHECK(s.items()[0].id == "a");
    CHECK(s.items()[1].id == "b");
    s.insert(Name("a"));
    CHECK(s.size() == 2);
    s.erase(Name("a"));
    CHECK(s.size() == 1);
    CHECK_FALSE(s.contains(Name("a")));
  }

  TEST_CASE("subset and disjointness") {
    NameSet ab = NameSet::of({"a", "b"});
    NameSet b = NameSet::of({"b"});
    NameSet cd = NameSet::of({"c", "d"});
    CHECK(b.subset_of(ab));
    CHECK_FALSE(ab.subset_of(b));
    CHECK(ab.disjoint_with(cd));
    CHECK_FALSE(ab.disjoint_with(b));
    CHECK(NameSet().subset_of(b));
    CHECK(NameSet().disjoint_with(NameSet()));
  }

  TEST_CASE("set algebra") {
    NameSet ab = NameSet::of({"a", "b"});
    NameSet bc = NameSet::of({"b", "c"});
    CHECK(set_union(ab, bc) == NameSet::of({"a", "b", "c"}));
    CHECK(set_diff(ab, bc) == NameSet::of({"a"}));
    CHECK(set_intersect(ab, bc) == NameSet::of({"b"}));
  }

  TEST_CASE("fresh names take the first unused primed variant") {
    NameSet used = NameSet::of({"a", "a'"});
    CHECK(fresh_name(Name("a"), used).id == "a''");
    CHECK(fresh_name(Name("z"), used).id == "z");
  }
}

TEST_SUITE("terms") {
  TEST_CASE("ground operator applications fold away") {
    Term u = Term::set_union_of(Term::set(NameSet::of({"a"})), Term::set(NameSet::of({"b"})));
    CHECK(evaluate(u) == Term::set(NameSet::of({"a", "b"})));
    Term d = Term::set_diff_of(Term::set(NameSet::of({"a", "b"})), Term::set(NameSet::of({"a"})));
    CHECK(evaluate(d) == Term::set(NameSet::of({"b"})));
    CHECK(evaluate(Term::succ_of(Term::nat(3))) == Term::nat(4));
  }

  TEST_CASE("non-ground applications stay symbolic") {
    Term u = Term::set_union_of(Term::var("X"), Term::set(NameSet::of({"a"})));
    CHECK(evaluate(u) == u);
    CHECK_FALSE(is_ground(u));
    CHECK(is_ground(Term::set(NameSet::of({"a"}))));
  }

  TEST_CASE("substitution instantiates variables then folds") {
    Term u = Term::set_union_of(Term::var("X"), Term::set(NameSet::of({"b"})));
    Binding b{{Name("X"), Term::set(NameSet::of({"a"}))}};
    CHECK(substitute_term(u, b) == Term::set(NameSet::of({"a", "b"})));
    CHECK(substitute_term(Term::succ_of(Term::var("G")), {{Name("G"), Term::nat(0)}}) ==
          Term::nat(1));
  }

  TEST_CASE("matching a bare variable binds the message") {
    auto b = match_pattern({Name("x")}, Term::var("x"), Term::atom("b"));
    REQUIRE(b.has_value());
    CHECK(b->at(Name("x")) == Term::atom("b"));
  }

  TEST_CASE("matching a quadruple pattern binds componentwise") {
    std::vector<Name> vars{Name("XE"), Name("XR"), Name("XI"), Name("XG")};
    Term pattern = Term::tuple({Term::var("XE"), Term::var("XR"), Term::var("XI"),
                                Term::var("XG")});
    Term message = Term::tuple({Term::set(NameSet::of({"a"})), Term::set(NameSet()),
                                Term::set(NameSet::of({"a", "b"})), Term::nat(0)});
    auto b = match_pattern(vars, pattern, message);
    REQUIRE(b.has_value());
    CHECK(b->at(Name("XE")) == Term::set(NameSet::of({"a"})));
    CHECK(b->at(Name("XR")) == Term::set(NameSet()));
    CHECK(b->at(Name("XI")) == Term::set(NameSet::of({"a", "b"})));
    CHECK(b->at(Name("XG")) == Term::nat(0));
  }

  TEST_CASE("inconsistent bindings fail to match") {
    auto b = match_pattern({Name("x")}, Term::tuple({Term::var("x"), Term::var("x")}),
                           Term::tuple({Term::atom("a"), Term::atom("b")}));
    CHECK_FALSE(b.has_value());
  }

  TEST_CASE("matching requires structural agreement") {
    CHECK_FALSE(match_pattern({}, Term::atom("a"), Term::atom("b")).has_value());
    CHECK(match_pattern({}, Term::atom("a"), Term::atom("a")).has_value());
    CHECK_FALSE(match_pattern({Name("x")}, Term::tuple({Term::var("x")}), Term::atom("a"))
                    .has_value());
  }

  TEST_CASE("term order is total and consistent with equality") {
    std::vector<Term> ts{Term::atom("a"), Term::atom("b"), Term::var("x"), Term::nat(0),
                         Term::set(NameSet::of({"a"})), Term::tuple({Term::atom("a")})};
    for (const auto& a : ts)
      for (const auto& b : ts) {
        CHECK((compare(a, b) == 0) == (a == b));
        CHECK(compare(a, b) == -compare(b, a));
      }
  }

  TEST_CASE("serialization is readable") {
    CHECK(to_string(Term::atom("a")) == "a");
    CHECK(to_string(Term::set(NameSet::of({"a", "b"}))) == "{a,b}");
    CHECK(to_string(Term::nat(2)) == "2");
  }
}
