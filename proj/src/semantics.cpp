#include "psi/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "psi/errors.hpp"

namespace psi {

ProcessPtr rename_free_name(const ProcessPtr& p, const Name& from, const Name& to) {
  if (from == to) return p;
  return std::visit(
      [&](const auto& n) -> ProcessPtr {
        using T = std::decay_t<decltype(n)>;
        auto rt = [&](const Term& t) { return rename_term_name(t, from, to); };
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return p;
        } else if constexpr (std::is_same_v<T, Process::Output>) {
          return make_output(rt(n.channel), rt(n.payload), rename_free_name(n.cont, from, to));
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          return std::make_shared<Process>(Process::Input{
              rt(n.channel), n.vars, rt(n.pattern), rename_free_name(n.cont, from, to)});
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          std::vector<Process::Branch> branches;
          branches.reserve(n.branches.size());
          for (const auto& br : n.branches) {
            Condition guard = br.guard;
            if (const auto* eq = br.guard.as_chan_eq())
              guard = Condition::chan_eq(rt(eq->lhs), rt(eq->rhs));
            else
              guard = Condition::payload(rt(*br.guard.as_payload()));
            branches.push_back({std::move(guard), rename_free_name(br.body, from, to)});
          }
          return make_case(std::move(branches));
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          if (n.name == from) return p;  // shadowed below
          if (n.name == to) {
            // The binder would capture the renamed occurrences; move it aside.
            NameSet avoid = all_names(*n.body);
            avoid.insert(from);
            avoid.insert(to);
            Name moved = fresh_name(n.name, avoid);
            ProcessPtr body = rename_free_name(n.body, n.name, moved);
            return make_restrict(moved, rename_free_name(body, from, to));
          }
          return make_restrict(n.name, rename_free_name(n.body, from, to));
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          return make_par(rename_free_name(n.left, from, to), rename_free_name(n.right, from, to));
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          return make_bang(rename_free_name(n.body, from, to));
        } else {
          return make_assert(rt(n.assertion));
        }
      },
      p->node);
}

namespace {

ProcessPtr sub_impl(const ProcessPtr& p, const Binding& binding, const NameSet& range_names) {
  if (binding.empty()) return p;
  return std::visit(
      [&](const auto& n) -> ProcessPtr {
        using T = std::decay_t<decltype(n)>;
        auto st = [&](const Term& t) { return substitute_term(t, binding); };
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return p;
        } else if constexpr (std::is_same_v<T, Process::Output>) {
          return make_output(st(n.channel), st(n.payload), sub_impl(n.cont, binding, range_names));
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          Binding inner = binding;
          for (const auto& v : n.vars) inner.erase(v);
          ProcessPtr cont = inner.empty() ? n.cont : sub_impl(n.cont, inner, range_names);
          return std::make_shared<Process>(Process::Input{
              st(n.channel), n.vars, substitute_term(n.pattern, inner), std::move(cont)});
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          std::vector<Process::Branch> branches;
          branches.reserve(n.branches.size());
          for (const auto& br : n.branches) {
            Condition guard = br.guard;
            if (const auto* eq = br.guard.as_chan_eq())
              guard = Condition::chan_eq(st(eq->lhs), st(eq->rhs));
            else
              guard = Condition::payload(st(*br.guard.as_payload()));
            branches.push_back({std::move(guard), sub_impl(br.body, binding, range_names)});
          }
          return make_case(std::move(branches));
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          if (range_names.contains(n.name)) {
            // Renaming first keeps substituted names out of the binder's scope.
            NameSet avoid = set_union(range_names, all_names(*n.body));
            Name moved = fresh_name(n.name, avoid);
            ProcessPtr body = rename_free_name(n.body, n.name, moved);
            return make_restrict(moved, sub_impl(body, binding, range_names));
          }
          return make_restrict(n.name, sub_impl(n.body, binding, range_names));
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          return make_par(sub_impl(n.left, binding, range_names),
                          sub_impl(n.right, binding, range_names));
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          return make_bang(sub_impl(n.body, binding, range_names));
        } else {
          return make_assert(st(n.assertion));
        }
      },
      p->node);
}

}  // namespace

ProcessPtr substitute(const ProcessPtr& p, const Binding& binding) {
  if (binding.empty()) return p;
  NameSet range_names;
  for (const auto& [v, t] : binding)
    range_names = set_union(range_names, term_names(t));
  return sub_impl(p, binding, range_names);
}

Frame frame(const Instance& inst, const Process& p) {
  return std::visit(
      [&](const auto& n) -> Frame {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Assert>) {
          return {{}, n.assertion};
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          Frame fl = frame(inst, *n.left);
          Frame fr = frame(inst, *n.right);
          NameSet used;
          for (const auto& b : fl.binders) used.insert(b);
          for (const auto& b : fr.binders) used.insert(b);
          NameSet free_l = set_diff(term_names(fl.assertion), NameSet(fl.binders));
          NameSet free_r = set_diff(term_names(fr.assertion), NameSet(fr.binders));
          std::vector<Name> binders;
          NameSet emitted;
          auto emit = [&](Frame& f, const NameSet& other_free) {
            for (auto& b : f.binders) {
              if (emitted.contains(b) || other_free.contains(b)) {
                NameSet avoid = set_union(set_union(used, emitted),
                                          set_union(other_free, term_names(f.assertion)));
                Name moved = fresh_name(b, avoid);
                f.assertion = rename_term_name(f.assertion, b, moved);
                b = moved;
              }
              emitted.insert(b);
              binders.push_back(b);
            }
          };
          emit(fl, free_r);
          emit(fr, free_l);
          return {std::move(binders), inst.compose(fl.assertion, fr.assertion)};
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          Frame f = frame(inst, *n.body);
          Name binder = n.name;
          if (std::find(f.binders.begin(), f.binders.end(), binder) != f.binders.end()) {
            NameSet avoid(f.binders);
            avoid = set_union(avoid, term_names(f.assertion));
            binder = fresh_name(binder, avoid);  // shadowed: binds nothing
          }
          f.binders.insert(f.binders.begin(), binder);
          return f;
        } else {
          return {{}, inst.unit()};
        }
      },
      p.node);
}

bool frame_equal(const Instance& inst, const Frame& a, const Frame& b) {
  if (a.binders.size() != b.binders.size()) return false;
  auto rename_to_canonical = [](const Frame& f) {
    Assertion out = f.assertion;
    for (std::size_t i = 0; i < f.binders.size(); ++i)
      out = rename_term_name(out, f.binders[i], Name("%f" + std::to_string(i)));
    return out;
  };
  return inst.assertion_eq(rename_to_canonical(a), rename_to_canonical(b));
}

std::string to_string(const Frame& f) {
  std::string out = "(new ";
  for (std::size_t i = 0; i < f.binders.size(); ++i) {
    if (i) out += ",";
    out += f.binders[i].id;
  }
  out += ")";
  return (f.binders.empty() ? std::string() : out) + to_string(f.assertion);
}

Action Action::out(Term channel, std::vector<Name> bound, Term payload) {
  Action a;
  a.kind = Kind::Out;
  a.channel = std::move(channel);
  a.bound = std::move(bound);
  a.payload = std::move(payload);
  return a;
}

std::string to_string(const Action& a) {
  switch (a.kind) {
    case Action::Kind::Tau:
      return "tau";
    case Action::Kind::In:
      return to_string(a.channel) + "?" + to_string(a.payload);
    case Action::Kind::Out: {
      std::string out = to_string(a.channel) + "!";
      if (!a.bound.empty()) {
        out += "(new ";
        for (std::size_t i = 0; i < a.bound.size(); ++i) {
          if (i) out += ",";
          out += a.bound[i].id;
        }
        out += ")";
      }
      return out + to_string(a.payload);
    }
  }
  return "?";
}

// --- alpha-invariant serialization -----------------------------------------

namespace {

struct KeyEnv {
  std::map<Name, std::string> names;
  std::map<Name, std::string> vars;
};

void key_term(const Term& t, const KeyEnv& env, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Atom>) {
          auto it = env.names.find(n.name);
          out += it == env.names.end() ? "~" + n.name.id : it->second;
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          auto it = env.vars.find(n.name);
          out += it == env.vars.end() ? "?~" + n.name.id : it->second;
        } else if constexpr (std::is_same_v<T, Term::Nat>) {
          out += "#" + std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, Term::SetLit>) {
          std::vector<std::string> members;
          members.reserve(n.names.size());
          for (const auto& m : n.names) {
            auto it = env.names.find(m);
            members.push_back(it == env.names.end() ? "~" + m.id : it->second);
          }
          std::sort(members.begin(), members.end());
          out += "{";
          for (std::size_t i = 0; i < members.size(); ++i) {
            if (i) out += ",";
            out += members[i];
          }
          out += "}";
        } else if constexpr (std::is_same_v<T, Term::Tuple>) {
          out += "(";
          for (std::size_t i = 0; i < n.items.size(); ++i) {
            if (i) out += ",";
            key_term(n.items[i], env, out);
          }
          out += ")";
        } else {
          out += std::to_string(static_cast<int>(n.op)) + "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ",";
            key_term(n.args[i], env, out);
          }
          out += ")";
        }
      },
      t.node);
}

void key_condition(const Condition& c, const KeyEnv& env, std::string& out) {
  if (const auto* eq = c.as_chan_eq()) {
    out += "=";
    key_term(eq->lhs, env, out);
    out += ",";
    key_term(eq->rhs, env, out);
  } else {
    key_term(*c.as_payload(), env, out);
  }
}

void key_proc(const Process& p, const KeyEnv& env, int depth, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Nil>) {
          out += "0";
        } else if constexpr (std::is_same_v<T, Process::Output>) {
          out += "O(";
          key_term(n.channel, env, out);
          out += ";";
          key_term(n.payload, env, out);
          out += ";";
          key_proc(*n.cont, env, depth, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          out += "I(";
          key_term(n.channel, env, out);
          out += ";";
          KeyEnv inner = env;
          for (std::size_t i = 0; i < n.vars.size(); ++i)
            inner.vars[n.vars[i]] = "@" + std::to_string(depth) + "." + std::to_string(i);
          key_term(n.pattern, inner, out);
          out += ";";
          key_proc(*n.cont, inner, depth + 1, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          out += "C(";
          for (std::size_t i = 0; i < n.branches.size(); ++i) {
            if (i) out += "|";
            key_condition(n.branches[i].guard, env, out);
            out += ":";
            key_proc(*n.branches[i].body, env, depth, out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          out += "R(";
          KeyEnv inner = env;
          inner.names[n.name] = "@" + std::to_string(depth);
          key_proc(*n.body, inner, depth + 1, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          out += "P(";
          key_proc(*n.left, env, depth, out);
          out += "|";
          key_proc(*n.right, env, depth, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          out += "B(";
          key_proc(*n.body, env, depth, out);
          out += ")";
        } else {
          out += "A(";
          key_term(n.assertion, env, out);
          out += ")";
        }
      },
      p.node);
}

std::string key_of(const Process& p, const KeyEnv& env, int depth) {
  std::string out;
  key_proc(p, env, depth, out);
  return out;
}

}  // namespace

std::string alpha_key(const Process& p) { return key_of(p, {}, 0); }

// --- canonical form ---------------------------------------------------------

namespace {

ProcessPtr canon_impl(const Instance& inst, const ProcessPtr& p, const KeyEnv& env, int depth) {
  return std::visit(
      [&](const auto& n) -> ProcessPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return nil();
        } else if constexpr (std::is_same_v<T, Process::Output>) {
          return make_output(n.channel, n.payload, canon_impl(inst, n.cont, env, depth));
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          KeyEnv inner = env;
          for (std::size_t i = 0; i < n.vars.size(); ++i)
            inner.vars[n.vars[i]] = "@" + std::to_string(depth) + "." + std::to_string(i);
          return std::make_shared<Process>(Process::Input{
              n.channel, n.vars, n.pattern, canon_impl(inst, n.cont, inner, depth + 1)});
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          if (n.branches.empty()) return nil();
          std::vector<Process::Branch> branches;
          branches.reserve(n.branches.size());
          for (const auto& br : n.branches)
            branches.push_back({br.guard, canon_impl(inst, br.body, env, depth)});
          return make_case(std::move(branches));
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          KeyEnv inner = env;
          inner.names[n.name] = "@" + std::to_string(depth);
          ProcessPtr body = canon_impl(inst, n.body, inner, depth + 1);
          if (std::holds_alternative<Process::Nil>(body->node)) return nil();
          return make_restrict(n.name, body);
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          std::vector<ProcessPtr> raw;
          flatten_par(p, raw);
          std::vector<ProcessPtr> parts;
          for (const auto& q : raw) {
            ProcessPtr c = canon_impl(inst, q, env, depth);
            if (!std::holds_alternative<Process::Nil>(c->node)) parts.push_back(c);
          }
          // A spare copy of a replicated body denotes the same state, so it
          // is absorbed into the replication. Only frame-free components may
          // vanish this way; anything carrying assertions stays put.
          auto frame_free = [](const ProcessPtr& q) {
            return std::holds_alternative<Process::Output>(q->node) ||
                   std::holds_alternative<Process::Input>(q->node) ||
                   std::holds_alternative<Process::Case>(q->node) ||
                   std::holds_alternative<Process::Bang>(q->node);
          };
          for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t ci = 0; ci < parts.size() && !changed; ++ci) {
              const auto* bang = std::get_if<Process::Bang>(&parts[ci]->node);
              if (!bang) continue;
              std::vector<ProcessPtr> body;
              flatten_par(bang->body, body);
              if (body.empty()) continue;
              std::vector<bool> used(parts.size(), false);
              std::vector<std::size_t> picked;
              bool ok = true;
              for (const auto& bc : body) {
                if (!frame_free(bc)) {
                  ok = false;
                  break;
                }
                bool found = false;
                for (std::size_t i = 0; i < parts.size(); ++i) {
                  if (i == ci || used[i]) continue;
                  if (process_equal(parts[i], bc)) {
                    used[i] = true;
                    picked.push_back(i);
                    found = true;
                    break;
                  }
                }
                if (!found) {
                  ok = false;
                  break;
                }
              }
              if (!ok) continue;
              std::sort(picked.begin(), picked.end());
              for (auto it = picked.rbegin(); it != picked.rend(); ++it)
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(*it));
              changed = true;
            }
          }
          std::vector<std::pair<std::string, ProcessPtr>> keyed;
          keyed.reserve(parts.size());
          for (const auto& q : parts) keyed.emplace_back(key_of(*q, env, depth), q);
          std::stable_sort(keyed.begin(), keyed.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
          std::vector<ProcessPtr> sorted;
          sorted.reserve(keyed.size());
          for (auto& [k, q] : keyed) sorted.push_back(std::move(q));
          return par_all(std::move(sorted));
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          ProcessPtr body = canon_impl(inst, n.body, env, depth);
          if (std::holds_alternative<Process::Nil>(body->node)) return nil();
          return make_bang(body);
        } else {
          if (inst.assertion_eq(n.assertion, inst.unit())) return nil();
          return p;
        }
      },
      p->node);
}

}  // namespace

ProcessPtr canonical(const Instance& inst, const ProcessPtr& p) {
  return canon_impl(inst, p, {}, 0);
}

bool canonical_equal(const Instance& inst, const ProcessPtr& a, const ProcessPtr& b) {
  return alpha_key(canonical(inst, a)) == alpha_key(canonical(inst, b));
}

// --- commitments ------------------------------------------------------------

namespace {

struct CapCtx {
  const Instance& inst;
  const TransitionOptions& opts;
  long unfoldings = 0;
};

/// Renames extruded names that clash with avoid, consistently across the
/// payload and the residual.
OutputCap freshen_extruded(const OutputCap& cap, const NameSet& avoid) {
  OutputCap out = cap;
  NameSet taken = avoid;
  for (const auto& x : out.extruded) taken.insert(x);
  for (auto& x : out.extruded) {
    if (!avoid.contains(x)) continue;
    NameSet present = set_union(term_names(out.payload), all_names(*out.residual));
    Name moved = fresh_name(
        x, [&](const Name& c) { return taken.contains(c) || present.contains(c); });
    out.payload = rename_term_name(out.payload, x, moved);
    out.residual = rename_free_name(out.residual, x, moved);
    taken.insert(moved);
    x = moved;
  }
  return out;
}

Capabilities caps_impl(CapCtx& ctx, const Assertion& env, const ProcessPtr& p, int budget);

void merge(Capabilities& into, Capabilities&& from) {
  std::move(from.outputs.begin(), from.outputs.end(), std::back_inserter(into.outputs));
  std::move(from.inputs.begin(), from.inputs.end(), std::back_inserter(into.inputs));
  std::move(from.taus.begin(), from.taus.end(), std::back_inserter(into.taus));
}

Capabilities caps_par(CapCtx& ctx, const Assertion& env, const ProcessPtr&,
                      const Process::Par& par, int budget) {
  const Instance& inst = ctx.inst;
  Assertion psi_l = frame(inst, *par.left).assertion;
  Assertion psi_r = frame(inst, *par.right).assertion;
  Capabilities left = caps_impl(ctx, inst.compose(env, psi_r), par.left, budget);
  Capabilities right = caps_impl(ctx, inst.compose(env, psi_l), par.right, budget);

  NameSet env_names = term_names(env);
  NameSet avoid_l = set_union(all_names(*par.right), env_names);
  NameSet avoid_r = set_union(all_names(*par.left), env_names);

  Capabilities out;
  for (const auto& oc : left.outputs) {
    OutputCap f = freshen_extruded(oc, avoid_l);
    out.outputs.push_back({f.channel, f.extruded, f.payload, make_par(f.residual, par.right)});
  }
  for (const auto& oc : right.outputs) {
    OutputCap f = freshen_extruded(oc, avoid_r);
    out.outputs.push_back({f.channel, f.extruded, f.payload, make_par(par.left, f.residual)});
  }
  for (const auto& ic : left.inputs)
    out.inputs.push_back({ic.channel, ic.vars, ic.pattern, make_par(ic.open_residual, par.right)});
  for (const auto& ic : right.inputs)
    out.inputs.push_back({ic.channel, ic.vars, ic.pattern, make_par(par.left, ic.open_residual)});
  for (const auto& t : left.taus) out.taus.push_back(make_par(t, par.right));
  for (const auto& t : right.taus) out.taus.push_back(make_par(par.left, t));

  // Communication across the composition; the synchronized channels must be
  // equivalent under the environment extended with both frames.
  Assertion both = inst.compose(env, inst.compose(psi_l, psi_r));
  auto communicate = [&](const std::vector<OutputCap>& outputs,
                         const std::vector<InputCap>& inputs, bool sender_left) {
    for (const auto& oc : outputs) {
      for (const auto& ic : inputs) {
        if (!inst.chan_eq_holds(both, oc.channel, ic.channel)) continue;
        OutputCap f = freshen_extruded(oc, set_union(all_names(*ic.open_residual), env_names));
        auto binding = match_pattern(ic.vars, ic.pattern, f.payload);
        if (!binding) continue;
        ProcessPtr receiver = substitute(ic.open_residual, *binding);
        ProcessPtr target = sender_left ? make_par(f.residual, receiver)
                                        : make_par(receiver, f.residual);
        for (auto it = f.extruded.rbegin(); it != f.extruded.rend(); ++it)
          target = make_restrict(*it, target);
        out.taus.push_back(target);
      }
    }
  };
  communicate(left.outputs, right.inputs, true);
  communicate(right.outputs, left.inputs, false);
  return out;
}

Capabilities caps_impl(CapCtx& ctx, const Assertion& env, const ProcessPtr& p, int budget) {
  const Instance& inst = ctx.inst;
  return std::visit(
      [&](const auto& n) -> Capabilities {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Output>) {
          Capabilities out;
          if (inst.chan_eq_holds(env, n.channel, n.channel))
            out.outputs.push_back({n.channel, {}, n.payload, n.cont});
          return out;
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          Capabilities out;
          if (inst.chan_eq_holds(env, n.channel, n.channel))
            out.inputs.push_back({n.channel, n.vars, n.pattern, n.cont});
          return out;
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          Capabilities out;
          for (const auto& br : n.branches)
            if (inst.entails(env, br.guard)) merge(out, caps_impl(ctx, env, br.body, budget));
          return out;
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          Name binder = n.name;
          ProcessPtr body = n.body;
          NameSet env_names = term_names(env);
          if (env_names.contains(binder)) {
            NameSet avoid = set_union(env_names, all_names(*body));
            Name moved = fresh_name(binder, avoid);
            body = rename_free_name(body, binder, moved);
            binder = moved;
          }
          Capabilities inner = caps_impl(ctx, env, body, budget);
          Capabilities out;
          for (auto& oc : inner.outputs) {
            if (term_names(oc.channel).contains(binder)) continue;
            if (term_names(oc.payload).contains(binder)) {
              oc.extruded.push_back(binder);  // scope opens around the action
              out.outputs.push_back(std::move(oc));
            } else {
              oc.residual = make_restrict(binder, oc.residual);
              out.outputs.push_back(std::move(oc));
            }
          }
          for (auto& ic : inner.inputs) {
            if (term_names(ic.channel).contains(binder)) continue;
            ic.open_residual = make_restrict(binder, ic.open_residual);
            out.inputs.push_back(std::move(ic));
          }
          for (auto& t : inner.taus) out.taus.push_back(make_restrict(binder, t));
          return out;
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          return caps_par(ctx, env, p, n, budget);
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          if (budget <= 0) return {};
          if (++ctx.unfoldings > ctx.opts.max_total_unfoldings)
            throw BudgetExceeded("replication unfolding cap of " +
                                 std::to_string(ctx.opts.max_total_unfoldings) + " exceeded");
          return caps_impl(ctx, env, make_par(n.body, p), budget - 1);
        } else {
          return {};  // Nil and Assert commit to nothing
        }
      },
      p->node);
}

}  // namespace

Capabilities capabilities(const Instance& inst, const Assertion& env, const ProcessPtr& p,
                          const TransitionOptions& opts) {
  CapCtx ctx{inst, opts};
  return caps_impl(ctx, env, p, opts.unfold_budget);
}

std::vector<Transition> transitions(const Instance& inst, const Assertion& env,
                                    const ProcessPtr& p, const TransitionOptions& opts) {
  Capabilities caps = capabilities(inst, env, p, opts);
  std::map<std::string, Transition> dedup;
  for (const auto& oc : caps.outputs) {
    ProcessPtr synth = make_output(oc.channel, oc.payload, oc.residual);
    for (auto it = oc.extruded.rbegin(); it != oc.extruded.rend(); ++it)
      synth = make_restrict(*it, synth);
    std::string key = "O|" + alpha_key(canonical(inst, synth));
    dedup.emplace(std::move(key),
                  Transition{Action::out(oc.channel, oc.extruded, oc.payload), oc.residual});
  }
  for (const auto& t : caps.taus) {
    std::string key = "T|" + alpha_key(canonical(inst, t));
    dedup.emplace(std::move(key), Transition{Action::tau(), t});
  }
  std::vector<Transition> out;
  out.reserve(dedup.size());
  for (auto& [key, t] : dedup) out.push_back(std::move(t));
  return out;
}

Lts explore(const Instance& inst, const Assertion& env, const ProcessPtr& p,
            const ExploreOptions& opts) {
  Lts lts;
  ProcessPtr root = canonical(inst, p);
  std::map<std::string, std::size_t> index;
  index.emplace(alpha_key(root), 0);
  lts.states.push_back(root);
  lts.depths.push_back(0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    if (lts.depths[s] >= opts.max_depth) {
      lts.depth_clipped = true;
      continue;
    }
    std::vector<Transition> ts;
    try {
      ts = transitions(inst, env, lts.states[s], opts.transition);
    } catch (const BudgetExceeded&) {
      lts.budget_clipped = true;
      continue;
    }
    for (const auto& t : ts) {
      ProcessPtr target = canonical(inst, t.target);
      std::string key = alpha_key(target);
      auto it = index.find(key);
      std::size_t to;
      if (it != index.end()) {
        to = it->second;
      } else {
        if (lts.states.size() >= opts.max_states) {
          lts.state_clipped = true;
          continue;
        }
        to = lts.states.size();
        index.emplace(std::move(key), to);
        lts.states.push_back(target);
        lts.depths.push_back(lts.depths[s] + 1);
        queue.push_back(to);
      }
      lts.edges.push_back({s, to, t.action});
    }
  }
  return lts;
}

}  // namespace psi
