#include <doctest.h>

#include "psi/process.hpp"

using namespace psi;

namespace {

ProcessPtr out_ab() { return make_output(Term::atom("a"), Term::atom("b"), nil()); }

}  // namespace

TEST_SUITE("processes") {
  TEST_CASE("builders produce the expected nodes") {
    CHECK(std::holds_alternative<Process::Nil>(nil()->node));
    CHECK(std::holds_alternative<Process::Output>(out_ab()->node));
    auto in = make_input(Term::atom("a"), {Name("x")}, Term::var("x"), nil());
    CHECK(std::holds_alternative<Process::Input>(in->node));
    CHECK(std::holds_alternative<Process::Bang>(make_bang(nil())->node));
    CHECK(std::holds_alternative<Process::Restrict>(make_restrict(Name("a"), nil())->node));
    CHECK(std::holds_alternative<Process::Assert>(
        make_assert(Term::set(NameSet::of({"a"})))->node));
  }

  TEST_CASE("par_all right-nests and empties to nil") {
    CHECK(std::holds_alternative<Process::Nil>(par_all({})->node));
    auto single = par_all({out_ab()});
    CHECK(std::holds_alternative<Process::Output>(single->node));
    auto three = par_all({nil(), out_ab(), nil()});
    std::vector<ProcessPtr> fringe;
    flatten_par(three, fringe);
    CHECK(fringe.size() == 3);
  }

  TEST_CASE("free names see through binders") {
    // new a. a<b>  frees only b; the binder hides a.
    auto p = make_restrict(Name("a"), out_ab());
    CHECK(free_names(*p) == NameSet::of({"b"}));
    CHECK(all_names(*p) == NameSet::of({"a", "b"}));
  }

  TEST_CASE("input patterns bind their variables") {
    // a(x).x<x> has no free variables; the pattern var is bound.
    auto body = make_output(Term::var("x"), Term::var("x"), nil());
    auto p = make_input(Term::atom("a"), {Name("x")}, Term::var("x"), body);
    CHECK(free_vars(*p).empty());
    CHECK(free_vars(*body) == NameSet::of({"x"}));
  }

  TEST_CASE("structural comparison distinguishes binder names") {
    auto p = make_restrict(Name("a"), nil());
    auto q = make_restrict(Name("b"), nil());
    CHECK(process_equal(p, p));
    CHECK_FALSE(process_equal(p, q));
  }

  TEST_CASE("serialization covers every constructor") {
    auto guard = Condition::chan_eq(Term::atom("a"), Term::atom("a"));
    auto p = make_par(make_case({{guard, out_ab()}}),
                      make_bang(make_restrict(Name("c"), nil())));
    std::string s = to_string(p);
    CHECK(s.find('|') != std::string::npos);
    CHECK(s.find('!') != std::string::npos);
    CHECK(s.find("new c") != std::string::npos);
  }
}
