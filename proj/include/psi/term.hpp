#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psi/name.hpp"

namespace psi {

/// First-order data terms shared by every calculus instance: plain names,
/// pattern variables, naturals, finite name sets, tuples, and symbolic
/// set/arithmetic operators that fold away once their arguments are ground.
struct Term {
  struct Atom {
    Name name;
    bool operator==(const Atom&) const = default;
  };
  struct Var {
    Name name;
    bool operator==(const Var&) const = default;
  };
  struct Nat {
    std::uint64_t value = 0;
    bool operator==(const Nat&) const = default;
  };
  struct SetLit {
    NameSet names;
    bool operator==(const SetLit&) const = default;
  };
  struct Tuple {
    std::vector<Term> items;
    bool operator==(const Tuple&) const = default;
  };
  enum class Op { Union, Diff, Succ };
  struct App {
    Op op = Op::Union;
    std::vector<Term> args;
    bool operator==(const App&) const = default;
  };

  using Node = std::variant<Atom, Var, Nat, SetLit, Tuple, App>;
  Node node;

  Term() : node(Atom{}) {}
  explicit Term(Node n) : node(std::move(n)) {}

  static Term atom(Name n) { return Term(Atom{std::move(n)}); }
  static Term atom(std::string id) { return atom(Name(std::move(id))); }
  static Term var(Name n) { return Term(Var{std::move(n)}); }
  static Term var(std::string id) { return var(Name(std::move(id))); }
  static Term nat(std::uint64_t v) { return Term(Nat{v}); }
  static Term set(NameSet ns) { return Term(SetLit{std::move(ns)}); }
  static Term tuple(std::vector<Term> items) { return Term(Tuple{std::move(items)}); }
  static Term app(Op op, std::vector<Term> args) { return Term(App{op, std::move(args)}); }
  static Term set_union_of(Term a, Term b);
  static Term set_diff_of(Term a, Term b);
  static Term succ_of(Term a);

  bool operator==(const Term&) const = default;
};

/// Total order on terms; drives deterministic serialization.
int compare(const Term& a, const Term& b);

std::string to_string(const Term& t);

bool is_ground(const Term& t);

/// Names occurring anywhere in the term (atoms and set members).
NameSet term_names(const Term& t);

/// Variables occurring anywhere in the term.
NameSet term_vars(const Term& t);

/// Folds ground operator applications: unions/differences of set literals
/// and successors of naturals. Leaves anything non-ground symbolic.
Term evaluate(const Term& t);

using Binding = std::map<Name, Term>;

/// Replaces bound variables, then folds any operator that became ground.
Term substitute_term(const Term& t, const Binding& binding);

/// Renames free occurrences of a name inside atoms and set literals.
Term rename_term_name(const Term& t, const Name& from, const Name& to);

/// First-order syntactic match of a ground message against a pattern.
/// Returns the unique binding of the given variables making both equal.
std::optional<Binding> match_pattern(const std::vector<Name>& vars, const Term& pattern,
                                     const Term& message);

}  // namespace psi
