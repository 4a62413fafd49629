#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "psi/term.hpp"

namespace psi {

using Assertion = Term;

/// Guard of a case branch: either channel equivalence of two terms or an
/// instance-specific payload that only the instance's entailment interprets.
struct Condition {
  struct ChanEq {
    Term lhs, rhs;
    bool operator==(const ChanEq&) const = default;
  };
  std::variant<ChanEq, Term> node;

  static Condition chan_eq(Term lhs, Term rhs) {
    return Condition{ChanEq{std::move(lhs), std::move(rhs)}};
  }
  static Condition payload(Term t) { return Condition{std::move(t)}; }

  const ChanEq* as_chan_eq() const { return std::get_if<ChanEq>(&node); }
  const Term* as_payload() const { return std::get_if<Term>(&node); }

  bool operator==(const Condition&) const = default;
};

std::string to_string(const Condition& c);

struct Process;
using ProcessPtr = std::shared_ptr<const Process>;

/// Immutable process tree. Subtrees are shared freely; every rewrite
/// allocates fresh spines and reuses untouched children.
struct Process {
  struct Nil {};
  struct Output {
    Term channel;
    Term payload;
    ProcessPtr cont;
  };
  struct Input {
    Term channel;
    std::vector<Name> vars;  // distinct, all occur in pattern
    Term pattern;
    ProcessPtr cont;
  };
  struct Branch {
    Condition guard;
    ProcessPtr body;
  };
  struct Case {
    std::vector<Branch> branches;
  };
  struct Restrict {
    Name name;
    ProcessPtr body;
  };
  struct Par {
    ProcessPtr left;
    ProcessPtr right;
  };
  struct Bang {
    ProcessPtr body;
  };
  struct Assert {
    Assertion assertion;
  };

  using Node = std::variant<Nil, Output, Input, Case, Restrict, Par, Bang, Assert>;
  Node node;

  explicit Process(Node n) : node(std::move(n)) {}
};

ProcessPtr nil();
ProcessPtr make_output(Term channel, Term payload, ProcessPtr cont);
ProcessPtr make_input(Term channel, std::vector<Name> vars, Term pattern, ProcessPtr cont);
ProcessPtr make_case(std::vector<Process::Branch> branches);
ProcessPtr make_restrict(Name name, ProcessPtr body);
ProcessPtr make_par(ProcessPtr left, ProcessPtr right);
ProcessPtr make_bang(ProcessPtr body);
ProcessPtr make_assert(Assertion assertion);

/// Right-nested parallel composition; nil for an empty list.
ProcessPtr par_all(std::vector<ProcessPtr> parts);

/// Appends the fringe of a (possibly nested) parallel composition.
void flatten_par(const ProcessPtr& p, std::vector<ProcessPtr>& out);

std::string to_string(const Process& p);
inline std::string to_string(const ProcessPtr& p) { return to_string(*p); }

/// Structural comparison; binder names compare literally.
int compare(const Process& a, const Process& b);
bool process_equal(const ProcessPtr& a, const ProcessPtr& b);

/// Names free in p: restriction is the only name binder.
NameSet free_names(const Process& p);

/// All names in p, free and bound alike.
NameSet all_names(const Process& p);

/// Variables free in p: input prefixes bind the variables of their pattern.
NameSet free_vars(const Process& p);

}  // namespace psi
