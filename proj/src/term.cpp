#include "psi/term.hpp"

#include <algorithm>

namespace psi {

Term Term::set_union_of(Term a, Term b) {
  return app(Op::Union, {std::move(a), std::move(b)});
}

Term Term::set_diff_of(Term a, Term b) {
  return app(Op::Diff, {std::move(a), std::move(b)});
}

Term Term::succ_of(Term a) { return app(Op::Succ, {std::move(a)}); }

namespace {

int cmp_vectors(const std::vector<Term>& a, const std::vector<Term>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (int c = compare(a[i], b[i]); c != 0) return c;
  }
  if (a.size() < b.size()) return -1;
  if (a.size() > b.size()) return 1;
  return 0;
}

template <typename T>
int cmp_scalar(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

int compare(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index())
    return a.node.index() < b.node.index() ? -1 : 1;
  return std::visit(
      [&](const auto& lhs) -> int {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Term::Atom> || std::is_same_v<T, Term::Var>) {
          return cmp_scalar(lhs.name, rhs.name);
        } else if constexpr (std::is_same_v<T, Term::Nat>) {
          return cmp_scalar(lhs.value, rhs.value);
        } else if constexpr (std::is_same_v<T, Term::SetLit>) {
          return cmp_scalar(lhs.names, rhs.names);
        } else if constexpr (std::is_same_v<T, Term::Tuple>) {
          return cmp_vectors(lhs.items, rhs.items);
        } else {
          if (lhs.op != rhs.op) return lhs.op < rhs.op ? -1 : 1;
          return cmp_vectors(lhs.args, rhs.args);
        }
      },
      a.node);
}

namespace {

const char* op_name(Term::Op op) {
  switch (op) {
    case Term::Op::Union: return "union";
    case Term::Op::Diff: return "diff";
    case Term::Op::Succ: return "succ";
  }
  return "?";
}

}  // namespace

std::string to_string(const Term& t) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Atom>) {
          return n.name.id;
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          return n.name.id;
        } else if constexpr (std::is_same_v<T, Term::Nat>) {
          return std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, Term::SetLit>) {
          return to_string(n.names);
        } else if constexpr (std::is_same_v<T, Term::Tuple>) {
          std::string out = "(";
          for (std::size_t i = 0; i < n.items.size(); ++i) {
            if (i) out += ",";
            out += to_string(n.items[i]);
          }
          return out + ")";
        } else {
          std::string out = op_name(n.op);
          out += "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ",";
            out += to_string(n.args[i]);
          }
          return out + ")";
        }
      },
      t.node);
}

bool is_ground(const Term& t) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          return false;
        } else if constexpr (std::is_same_v<T, Term::Tuple>) {
          return std::all_of(n.items.begin(), n.items.end(),
                             [](const Term& x) { return is_ground(x); });
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return std::all_of(n.args.begin(), n.args.end(),
                             [](const Term& x) { return is_ground(x); });
        } else {
          return true;
        }
      },
      t.node);
}

namespace {

void collect_names(const Term& t, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Atom>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Term::SetLit>) {
          for (const auto& m : n.names) out.insert(m);
        } else if constexpr (std::is_same_v<T, Term::Tuple>) {
          for (const auto& x : n.items) collect_names(x, out);
        } else if constexpr (std::is_same_v<T, Term::App>) {
          for (const auto& x : n.args) collect_names(x, out);
        }
      },
      t.node);
}

void collect_vars(const Term& t, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Term::Tuple>) {
          for (const auto& x : n.items) collect_vars(x, out);
        } else if constexpr (std::is_same_v<T, Term::App>) {
          for (const auto& x : n.args) collect_vars(x, out);
        }
      },
      t.node);
}

}  // namespace

NameSet term_names(const Term& t) {
  NameSet out;
  collect_names(t, out);
  return out;
}

NameSet term_vars(const Term& t) {
  NameSet out;
  collect_vars(t, out);
  return out;
}

Term evaluate(const Term& t) {
  return std::visit(
      [&](const auto& n) -> Term {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Tuple>) {
          std::vector<Term> items;
          items.reserve(n.items.size());
          for (const auto& x : n.items) items.push_back(evaluate(x));
          return Term::tuple(std::move(items));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          std::vector<Term> args;
          args.reserve(n.args.size());
          for (const auto& x : n.args) args.push_back(evaluate(x));
          if (n.op == Term::Op::Succ && args.size() == 1) {
            if (const auto* v = std::get_if<Term::Nat>(&args[0].node))
              return Term::nat(v->value + 1);
          }
          if ((n.op == Term::Op::Union || n.op == Term::Op::Diff) && args.size() == 2) {
            const auto* a = std::get_if<Term::SetLit>(&args[0].node);
            const auto* b = std::get_if<Term::SetLit>(&args[1].node);
            if (a && b) {
              return Term::set(n.op == Term::Op::Union ? set_union(a->names, b->names)
                                                       : set_diff(a->names, b->names));
            }
          }
          return Term::app(n.op, std::move(args));
        } else {
          return t;
        }
      },
      t.node);
}

Term substitute_term(const Term& t, const Binding& binding) {
  if (binding.empty()) return t;
  struct Walk {
    const Binding& binding;
    Term operator()(const Term& t) const {
      return std::visit(
          [&](const auto& n) -> Term {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Term::Var>) {
              auto it = binding.find(n.name);
              return it == binding.end() ? t : it->second;
            } else if constexpr (std::is_same_v<T, Term::Tuple>) {
              std::vector<Term> items;
              items.reserve(n.items.size());
              for (const auto& x : n.items) items.push_back((*this)(x));
              return Term::tuple(std::move(items));
            } else if constexpr (std::is_same_v<T, Term::App>) {
              std::vector<Term> args;
              args.reserve(n.args.size());
              for (const auto& x : n.args) args.push_back((*this)(x));
              return Term::app(n.op, std::move(args));
            } else {
              return t;
            }
          },
          t.node);
    }
  };
  return evaluate(Walk{binding}(t));
}

Term rename_term_name(const Term& t, const Name& from, const Name& to) {
  return std::visit(
      [&](const auto& n) -> Term {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Atom>) {
          return n.name == from ? Term::atom(to) : t;
        } else if constexpr (std::is_same_v<T, Term::SetLit>) {
          if (!n.names.contains(from)) return t;
          NameSet renamed = n.names;
          renamed.erase(from);
          renamed.insert(to);
          return Term::set(std::move(renamed));
        } else if constexpr (std::is_same_v<T, Term::Tuple>) {
          std::vector<Term> items;
          items.reserve(n.items.size());
          for (const auto& x : n.items) items.push_back(rename_term_name(x, from, to));
          return Term::tuple(std::move(items));
        } else if constexpr (std::is_same_v<T, Term::App>) {
          std::vector<Term> args;
          args.reserve(n.args.size());
          for (const auto& x : n.args) args.push_back(rename_term_name(x, from, to));
          return Term::app(n.op, std::move(args));
        } else {
          return t;
        }
      },
      t.node);
}

namespace {

bool match_rec(const std::vector<Name>& vars, const Term& pattern, const Term& message,
               Binding& binding) {
  if (const auto* v = std::get_if<Term::Var>(&pattern.node)) {
    if (std::find(vars.begin(), vars.end(), v->name) != vars.end()) {
      auto it = binding.find(v->name);
      if (it != binding.end()) return it->second == message;
      binding.emplace(v->name, message);
      return true;
    }
  }
  if (pattern.node.index() != message.node.index()) return false;
  return std::visit(
      [&](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        const auto& m = std::get<T>(message.node);
        if constexpr (std::is_same_v<T, Term::Tuple>) {
          if (p.items.size() != m.items.size()) return false;
          for (std::size_t i = 0; i < p.items.size(); ++i)
            if (!match_rec(vars, p.items[i], m.items[i], binding)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Term::App>) {
          if (p.op != m.op || p.args.size() != m.args.size()) return false;
          for (std::size_t i = 0; i < p.args.size(); ++i)
            if (!match_rec(vars, p.args[i], m.args[i], binding)) return false;
          return true;
        } else {
          return p == m;
        }
      },
      pattern.node);
}

}  // namespace

std::optional<Binding> match_pattern(const std::vector<Name>& vars, const Term& pattern,
                                     const Term& message) {
  Binding binding;
  if (!match_rec(vars, pattern, message, binding)) return std::nullopt;
  return binding;
}

}  // namespace psi
