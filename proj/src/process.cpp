#include "psi/process.hpp"

#include <algorithm>
#include <stdexcept>

namespace psi {

std::string to_string(const Condition& c) {
  if (const auto* eq = c.as_chan_eq()) return to_string(eq->lhs) + " = " + to_string(eq->rhs);
  return to_string(*c.as_payload());
}

ProcessPtr nil() {
  static const ProcessPtr instance = std::make_shared<Process>(Process::Nil{});
  return instance;
}

ProcessPtr make_output(Term channel, Term payload, ProcessPtr cont) {
  return std::make_shared<Process>(
      Process::Output{std::move(channel), std::move(payload), std::move(cont)});
}

ProcessPtr make_input(Term channel, std::vector<Name> vars, Term pattern, ProcessPtr cont) {
  NameSet pattern_vars = term_vars(pattern);
  NameSet seen;
  for (const auto& v : vars) {
    if (seen.contains(v)) throw std::invalid_argument("duplicate input variable " + v.id);
    seen.insert(v);
    if (!pattern_vars.contains(v))
      throw std::invalid_argument("input variable " + v.id + " does not occur in the pattern");
  }
  return std::make_shared<Process>(
      Process::Input{std::move(channel), std::move(vars), std::move(pattern), std::move(cont)});
}

ProcessPtr make_case(std::vector<Process::Branch> branches) {
  return std::make_shared<Process>(Process::Case{std::move(branches)});
}

ProcessPtr make_restrict(Name name, ProcessPtr body) {
  return std::make_shared<Process>(Process::Restrict{std::move(name), std::move(body)});
}

ProcessPtr make_par(ProcessPtr left, ProcessPtr right) {
  return std::make_shared<Process>(Process::Par{std::move(left), std::move(right)});
}

ProcessPtr make_bang(ProcessPtr body) {
  return std::make_shared<Process>(Process::Bang{std::move(body)});
}

ProcessPtr make_assert(Assertion assertion) {
  return std::make_shared<Process>(Process::Assert{std::move(assertion)});
}

ProcessPtr par_all(std::vector<ProcessPtr> parts) {
  if (parts.empty()) return nil();
  ProcessPtr acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = make_par(parts[i], acc);
  return acc;
}

void flatten_par(const ProcessPtr& p, std::vector<ProcessPtr>& out) {
  if (const auto* par = std::get_if<Process::Par>(&p->node)) {
    flatten_par(par->left, out);
    flatten_par(par->right, out);
  } else {
    out.push_back(p);
  }
}

namespace {

bool needs_parens_in_prefix(const Process& p) {
  return std::holds_alternative<Process::Par>(p.node) ||
         std::holds_alternative<Process::Restrict>(p.node);
}

std::string print(const Process& p);

std::string print_cont(const ProcessPtr& cont) {
  if (std::holds_alternative<Process::Nil>(cont->node)) return "";
  if (needs_parens_in_prefix(*cont)) return ".(" + print(*cont) + ")";
  return "." + print(*cont);
}

std::string print(const Process& p) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return "0";
        } else if constexpr (std::is_same_v<T, Process::Output>) {
          std::string out = to_string(n.channel) + "<" + to_string(n.payload) + ">";
          std::string cont = print_cont(n.cont);
          return cont.empty() ? out + ".0" : out + cont;
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          std::string head;
          const auto* v = std::get_if<Term::Var>(&n.pattern.node);
          if (v && n.vars.size() == 1 && n.vars[0] == v->name) {
            head = to_string(n.channel) + "(" + v->name.id + ")";
          } else {
            head = to_string(n.channel) + "(\\";
            for (std::size_t i = 0; i < n.vars.size(); ++i) {
              if (i) head += ",";
              head += n.vars[i].id;
            }
            head += ". " + to_string(n.pattern) + ")";
          }
          std::string cont = print_cont(n.cont);
          return cont.empty() ? head + ".0" : head + cont;
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          std::string out = "case{";
          for (std::size_t i = 0; i < n.branches.size(); ++i) {
            if (i) out += ", ";
            out += to_string(n.branches[i].guard) + " : " + print(*n.branches[i].body);
          }
          return out + "}";
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          if (needs_parens_in_prefix(*n.body))
            return "(new " + n.name.id + ")(" + print(*n.body) + ")";
          return "(new " + n.name.id + ")" + print(*n.body);
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          std::vector<ProcessPtr> parts;
          flatten_par(std::make_shared<Process>(p), parts);
          std::string out;
          for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " | ";
            out += print(*parts[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          if (needs_parens_in_prefix(*n.body)) return "!(" + print(*n.body) + ")";
          return "!" + print(*n.body);
        } else {
          return "(|" + to_string(n.assertion) + "|)";
        }
      },
      p.node);
}

}  // namespace

std::string to_string(const Process& p) { return print(p); }

namespace {

int cmp_conditions(const Condition& a, const Condition& b) {
  if (a.node.index() != b.node.index()) return a.node.index() < b.node.index() ? -1 : 1;
  if (const auto* ea = a.as_chan_eq()) {
    const auto* eb = b.as_chan_eq();
    if (int c = compare(ea->lhs, eb->lhs); c != 0) return c;
    return compare(ea->rhs, eb->rhs);
  }
  return compare(*a.as_payload(), *b.as_payload());
}

}  // namespace

int compare(const Process& a, const Process& b) {
  if (a.node.index() != b.node.index()) return a.node.index() < b.node.index() ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return 0;
        } else if constexpr (std::is_same_v<T, Process::Output>) {
          if (int c = compare(x.channel, y.channel); c != 0) return c;
          if (int c = compare(x.payload, y.payload); c != 0) return c;
          return compare(*x.cont, *y.cont);
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          if (int c = compare(x.channel, y.channel); c != 0) return c;
          if (x.vars != y.vars) return x.vars < y.vars ? -1 : 1;
          if (int c = compare(x.pattern, y.pattern); c != 0) return c;
          return compare(*x.cont, *y.cont);
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          for (std::size_t i = 0; i < x.branches.size() && i < y.branches.size(); ++i) {
            if (int c = cmp_conditions(x.branches[i].guard, y.branches[i].guard); c != 0) return c;
            if (int c = compare(*x.branches[i].body, *y.branches[i].body); c != 0) return c;
          }
          if (x.branches.size() != y.branches.size())
            return x.branches.size() < y.branches.size() ? -1 : 1;
          return 0;
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          if (x.name != y.name) return x.name < y.name ? -1 : 1;
          return compare(*x.body, *y.body);
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          if (int c = compare(*x.left, *y.left); c != 0) return c;
          return compare(*x.right, *y.right);
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          return compare(*x.body, *y.body);
        } else {
          return compare(x.assertion, y.assertion);
        }
      },
      a.node);
}

bool process_equal(const ProcessPtr& a, const ProcessPtr& b) { return compare(*a, *b) == 0; }

namespace {

void walk_names(const Process& p, NameSet& out, bool include_bound, NameSet bound) {
  auto add_term = [&](const Term& t) {
    for (const auto& n : term_names(t))
      if (include_bound || !bound.contains(n)) out.insert(n);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Output>) {
          add_term(n.channel);
          add_term(n.payload);
          walk_names(*n.cont, out, include_bound, bound);
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          add_term(n.channel);
          add_term(n.pattern);
          walk_names(*n.cont, out, include_bound, bound);
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          for (const auto& br : n.branches) {
            if (const auto* eq = br.guard.as_chan_eq()) {
              add_term(eq->lhs);
              add_term(eq->rhs);
            } else {
              add_term(*br.guard.as_payload());
            }
            walk_names(*br.body, out, include_bound, bound);
          }
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          if (include_bound) out.insert(n.name);
          NameSet inner = bound;
          inner.insert(n.name);
          walk_names(*n.body, out, include_bound, inner);
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          walk_names(*n.left, out, include_bound, bound);
          walk_names(*n.right, out, include_bound, bound);
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          walk_names(*n.body, out, include_bound, bound);
        } else if constexpr (std::is_same_v<T, Process::Assert>) {
          add_term(n.assertion);
        }
      },
      p.node);
}

void walk_vars(const Process& p, NameSet& out, NameSet bound) {
  auto add_term = [&](const Term& t) {
    for (const auto& v : term_vars(t))
      if (!bound.contains(v)) out.insert(v);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Process::Output>) {
          add_term(n.channel);
          add_term(n.payload);
          walk_vars(*n.cont, out, bound);
        } else if constexpr (std::is_same_v<T, Process::Input>) {
          add_term(n.channel);
          NameSet inner = bound;
          for (const auto& v : n.vars) inner.insert(v);
          walk_vars(*n.cont, out, inner);
        } else if constexpr (std::is_same_v<T, Process::Case>) {
          for (const auto& br : n.branches) {
            if (const auto* eq = br.guard.as_chan_eq()) {
              add_term(eq->lhs);
              add_term(eq->rhs);
            } else {
              add_term(*br.guard.as_payload());
            }
            walk_vars(*br.body, out, bound);
          }
        } else if constexpr (std::is_same_v<T, Process::Restrict>) {
          walk_vars(*n.body, out, bound);
        } else if constexpr (std::is_same_v<T, Process::Par>) {
          walk_vars(*n.left, out, bound);
          walk_vars(*n.right, out, bound);
        } else if constexpr (std::is_same_v<T, Process::Bang>) {
          walk_vars(*n.body, out, bound);
        } else if constexpr (std::is_same_v<T, Process::Assert>) {
          add_term(n.assertion);
        }
      },
      p.node);
}

}  // namespace

NameSet free_names(const Process& p) {
  NameSet out;
  walk_names(p, out, false, {});
  return out;
}

NameSet all_names(const Process& p) {
  NameSet out;
  walk_names(p, out, true, {});
  return out;
}

NameSet free_vars(const Process& p) {
  NameSet out;
  walk_vars(p, out, {});
  return out;
}

}  // namespace psi
