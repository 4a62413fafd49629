#include "psi/dcr_psi.hpp"

#include <stdexcept>

#include "psi/errors.hpp"

namespace psi {

namespace {

struct Quad {
  const NameSet* executed;
  const NameSet* responses;
  const NameSet* included;
  std::uint64_t generation;
};

Quad quad_of(const Assertion& a) {
  const auto* tuple = std::get_if<Term::Tuple>(&a.node);
  if (!tuple || tuple->items.size() != 4)
    throw std::invalid_argument("assertion must be a marking quadruple");
  const auto* ex = std::get_if<Term::SetLit>(&tuple->items[0].node);
  const auto* re = std::get_if<Term::SetLit>(&tuple->items[1].node);
  const auto* in = std::get_if<Term::SetLit>(&tuple->items[2].node);
  const auto* gen = std::get_if<Term::Nat>(&tuple->items[3].node);
  if (!ex || !re || !in || !gen)
    throw std::invalid_argument("assertion must be a marking quadruple");
  return {&ex->names, &re->names, &in->names, gen->value};
}

class DcrPsiInstance final : public Instance {
 public:
  std::string name() const override { return "dcr-psi"; }

  Assertion unit() const override { return dcr_assertion({}, {}, {}, 0); }

  Assertion compose(const Assertion& a, const Assertion& b) const override {
    Quad qa = quad_of(a);
    Quad qb = quad_of(b);
    if (qa.generation > qb.generation) return a;
    if (qa.generation < qb.generation) return b;
    return dcr_assertion(set_union(*qa.executed, *qb.executed),
                         set_union(*qa.responses, *qb.responses),
                         set_union(*qa.included, *qb.included), qa.generation);
  }

  bool entails(const Assertion& a, const Condition& c) const override {
    if (const auto* eq = c.as_chan_eq()) return chan_eq_holds(a, eq->lhs, eq->rhs);
    const auto* tuple = std::get_if<Term::Tuple>(&c.as_payload()->node);
    if (!tuple || tuple->items.size() != 3)
      throw std::invalid_argument("condition must be (conditions, milestones, event)");
    const auto* co = std::get_if<Term::SetLit>(&tuple->items[0].node);
    const auto* mi = std::get_if<Term::SetLit>(&tuple->items[1].node);
    const auto* ev = std::get_if<Term::Atom>(&tuple->items[2].node);
    if (!co || !mi || !ev)
      throw std::invalid_argument("condition must be (conditions, milestones, event)");
    Quad q = quad_of(a);
    return dcr_entails(*q.executed, *q.responses, *q.included, co->names, mi->names, ev->name);
  }

  bool chan_eq_holds(const Assertion&, const Term& lhs, const Term& rhs) const override {
    return lhs == rhs;
  }

  bool assertion_eq(const Assertion& a, const Assertion& b) const override { return a == b; }
};

}  // namespace

const Instance& dcr_psi_instance() {
  static const DcrPsiInstance instance;
  return instance;
}

Assertion dcr_assertion(const NameSet& executed, const NameSet& responses,
                        const NameSet& included, std::uint64_t generation) {
  return Term::tuple(
      {Term::set(executed), Term::set(responses), Term::set(included), Term::nat(generation)});
}

Condition dcr_condition(const NameSet& conditions, const NameSet& milestones, const Name& e) {
  return Condition::payload(
      Term::tuple({Term::set(conditions), Term::set(milestones), Term::atom(e)}));
}

bool dcr_entails(const NameSet& executed, const NameSet& responses, const NameSet& included,
                 const NameSet& conditions, const NameSet& milestones, const Name& e) {
  return included.contains(e) && set_intersect(included, conditions).subset_of(executed) &&
         set_intersect(set_intersect(included, milestones), responses).empty();
}

Name dcr_channel(const DcrGraph& g) { return fresh_name(Name("m"), NameSet(g.events)); }

ProcessPtr dcrpsi(const DcrGraph& g, const Marking& m) {
  validate_marking(g, m);
  Name channel = dcr_channel(g);
  Assertion initial = dcr_assertion(m.executed, m.responses, m.included, 0);
  ProcessPtr starter = make_par(make_assert(initial),
                                make_output(Term::atom(channel), initial, nil()));

  const Name xe("XE"), xr("XR"), xi("XI"), xg("XG");
  Term pattern = Term::tuple({Term::var(xe), Term::var(xr), Term::var(xi), Term::var(xg)});

  std::vector<ProcessPtr> readers;
  readers.reserve(g.events.size());
  for (const auto& e : g.events) {
    Term updated = Term::tuple(
        {Term::set_union_of(Term::var(xe), Term::set(NameSet({e}))),
         Term::set_union_of(Term::set_diff_of(Term::var(xr), Term::set(NameSet({e}))),
                            Term::set(rel_targets(g.responses, e))),
         Term::set_union_of(Term::set_diff_of(Term::var(xi), Term::set(rel_targets(g.excludes, e))),
                            Term::set(rel_targets(g.includes, e))),
         Term::succ_of(Term::var(xg))});
    ProcessPtr after = make_par(make_output(Term::atom(channel), updated, nil()),
                                make_assert(updated));
    ProcessPtr reader =
        make_input(Term::atom(channel), {xe, xr, xi, xg}, pattern, std::move(after));
    Condition guard =
        dcr_condition(rel_sources(g.conditions, e), rel_sources(g.milestones, e), e);
    readers.push_back(make_bang(make_case({{std::move(guard), std::move(reader)}})));
  }
  if (readers.empty()) return starter;
  return make_par(std::move(starter), par_all(std::move(readers)));
}

std::size_t count_outputs(const ProcessPtr& p) {
  return std::visit(
      [&](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Output>) {
          return 1;  // the prefix itself; the continuation is guarded by it
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          return count_outputs(n.left) + count_outputs(n.right);
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          return count_outputs(n.body);
        } else {
          return 0;
        }
      },
      p->node);
}

}  // namespace psi
