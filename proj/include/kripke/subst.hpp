#pragma once

// Second-order substitution of one-parameter templates for monadic letters,
// iterated box/diamond powers, rewriting into the {&,~,box,forall} basis,
// and elimination of 0-ary letters.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kripke/formula.hpp"

namespace kripke {

namespace detail {

inline void collect_vars_rec(const Formula* f, std::set<Variable>& out,
                             std::set<const Formula*>& seen) {
  if (!seen.insert(f).second) return;
  if (f->op == Op::Atom)
    for (const auto& v : f->args) out.insert(v);
  if (f->op == Op::Forall || f->op == Op::Exists) out.insert(f->var);
  if (f->lhs) collect_vars_rec(f->lhs.get(), out, seen);
  if (f->rhs) collect_vars_rec(f->rhs.get(), out, seen);
}

inline void collect_vars(const FormulaPtr& f, std::set<Variable>& out) {
  std::set<const Formula*> seen;
  collect_vars_rec(f.get(), out, seen);
}

// Fresh variable from the reserved primed namespace, distinct from `avoid`.
inline Variable primed_fresh(const Variable& base, const std::set<Variable>& avoid) {
  Variable v{base.name + "'"};
  while (avoid.count(v)) v.name += "'";
  return v;
}

}  // namespace detail

// Renames free occurrences of `from` to `to`, renaming bound variables apart
// (into the primed namespace) where `to` would be captured.  Shared subtrees
// are rewritten once and stay shared.
namespace detail {
inline FormulaPtr rename_free_memo(const FormulaPtr& f, const Variable& from, const Variable& to,
                                   std::map<const Formula*, FormulaPtr>& memo) {
  if (from == to) return f;
  auto hit = memo.find(f.get());
  if (hit != memo.end()) return hit->second;
  FormulaPtr out;
  switch (f->op) {
    case Op::Atom: {
      bool touched = false;
      for (const auto& a : f->args)
        if (a == from) touched = true;
      if (!touched) {
        out = f;
        break;
      }
      std::vector<Variable> args = f->args;
      for (auto& a : args)
        if (a == from) a = to;
      out = atom(f->letter, std::move(args));
      break;
    }
    case Op::Bot:
    case Op::Top:
      out = f;
      break;
    case Op::Neg:
    case Op::Box:
    case Op::Dia:
      out = unary(f->op, rename_free_memo(f->lhs, from, to, memo));
      break;
    case Op::And:
    case Op::Or:
    case Op::Imp:
      out = binary(f->op, rename_free_memo(f->lhs, from, to, memo),
                   rename_free_memo(f->rhs, from, to, memo));
      break;
    case Op::Forall:
    case Op::Exists: {
      if (f->var == from) {
        out = f;  // shadowed below
        break;
      }
      if (f->var == to) {
        // Rename the binder apart, then substitute in the renamed body.
        std::set<Variable> avoid;
        detail::collect_vars(f->lhs, avoid);
        avoid.insert(from);
        avoid.insert(to);
        Variable fresh = detail::primed_fresh(f->var, avoid);
        std::map<const Formula*, FormulaPtr> inner;
        FormulaPtr body = rename_free_memo(f->lhs, f->var, fresh, inner);
        std::map<const Formula*, FormulaPtr> inner2;
        out = quant(f->op, fresh, rename_free_memo(body, from, to, inner2));
        break;
      }
      out = quant(f->op, f->var, rename_free_memo(f->lhs, from, to, memo));
      break;
    }
  }
  memo.emplace(f.get(), out);
  return out;
}
}  // namespace detail

inline FormulaPtr rename_free(const FormulaPtr& f, const Variable& from, const Variable& to) {
  std::map<const Formula*, FormulaPtr> memo;
  return detail::rename_free_memo(f, from, to, memo);
}

// A template with exactly one free variable, the parameter.
struct AtomTemplate {
  Variable param;
  FormulaPtr body;
};

// Uniform substitution of monadic templates: every Atom(L,[v]) with L in the
// map becomes the template body with its parameter renamed to v.  Letters not
// in the map are untouched.
inline FormulaPtr substitute_atoms(const FormulaPtr& f,
                                   const std::map<std::string, AtomTemplate>& map) {
  for (const auto& [name, tpl] : map) {
    auto fv = free_variables(tpl.body);
    if (!(fv.empty() || (fv.size() == 1 && *fv.begin() == tpl.param)))
      throw std::invalid_argument("substitute_atoms: template for '" + name +
                                  "' has free variables beyond its parameter");
  }
  std::map<const Formula*, FormulaPtr> memo;
  auto go = [&](auto&& self, const FormulaPtr& g) -> FormulaPtr {
    auto hit = memo.find(g.get());
    if (hit != memo.end()) return hit->second;
    FormulaPtr out;
    switch (g->op) {
      case Op::Atom: {
        auto it = map.find(g->letter);
        if (it == map.end()) {
          out = g;
          break;
        }
        if (g->args.size() != 1)
          throw std::invalid_argument("substitute_atoms: letter '" + g->letter +
                                      "' has arity " + std::to_string(g->args.size()) +
                                      ", templates are monadic");
        out = rename_free(it->second.body, it->second.param, g->args[0]);
        break;
      }
      case Op::Bot:
      case Op::Top:
        out = g;
        break;
      case Op::Neg:
      case Op::Box:
      case Op::Dia:
        out = unary(g->op, self(self, g->lhs));
        break;
      case Op::And:
      case Op::Or:
      case Op::Imp:
        out = binary(g->op, self(self, g->lhs), self(self, g->rhs));
        break;
      case Op::Forall:
      case Op::Exists:
        out = quant(g->op, g->var, self(self, g->lhs));
        break;
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return go(go, f);
}

enum class PowerKind { BoxExact, BoxUpTo, DiaExact, DiaUpTo };

// box^n / box^{<=n} and their negation-dual diamond forms, expanded literally.
inline FormulaPtr box_power(const FormulaPtr& f, int n, PowerKind kind) {
  if (n < 0) throw std::invalid_argument("box_power: negative exponent");
  auto exact = [](const FormulaPtr& g, int m) {
    FormulaPtr acc = g;
    for (int i = 0; i < m; ++i) acc = box(acc);
    return acc;
  };
  auto up_to = [&](const FormulaPtr& g, int m) {
    FormulaPtr acc = g;  // box^{<=0} f = f
    for (int i = 1; i <= m; ++i) acc = conj(acc, exact(g, i));
    return acc;
  };
  switch (kind) {
    case PowerKind::BoxExact: return exact(f, n);
    case PowerKind::BoxUpTo: return up_to(f, n);
    case PowerKind::DiaExact: return neg(exact(neg(f), n));
    case PowerKind::DiaUpTo: return neg(up_to(neg(f), n));
  }
  return f;
}

// Rewrites |, ->, exists, dia and top into the {&,~,box,forall} basis;
// bot is kept as a leaf.
inline FormulaPtr to_box_and_neg_basis(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Atom:
    case Op::Bot:
      return f;
    case Op::Top:
      return neg(bot());
    case Op::Neg:
      return neg(to_box_and_neg_basis(f->lhs));
    case Op::Box:
      return box(to_box_and_neg_basis(f->lhs));
    case Op::Dia:
      return neg(box(neg(to_box_and_neg_basis(f->lhs))));
    case Op::And:
      return conj(to_box_and_neg_basis(f->lhs), to_box_and_neg_basis(f->rhs));
    case Op::Or:
      return neg(conj(neg(to_box_and_neg_basis(f->lhs)), neg(to_box_and_neg_basis(f->rhs))));
    case Op::Imp:
      return neg(conj(to_box_and_neg_basis(f->lhs), neg(to_box_and_neg_basis(f->rhs))));
    case Op::Forall:
      return forall(f->var, to_box_and_neg_basis(f->lhs));
    case Op::Exists:
      return neg(forall(f->var, neg(to_box_and_neg_basis(f->lhs))));
  }
  return f;
}

// Replaces every 0-ary letter q with "exists x. Q(x)" for a fresh monadic
// letter Q (capitalised, primed until it collides with nothing).
inline FormulaPtr expand_propositional(const FormulaPtr& f) {
  SyntaxProfile p = profile(f);
  std::set<std::string> taken;
  for (const auto& [name, info] : p.letters) taken.insert(name);
  std::map<std::string, std::string> fresh;  // 0-ary letter -> monadic letter
  for (const auto& [name, info] : p.letters) {
    if (info.arity != 0) continue;
    std::string cand = name;
    cand[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cand[0])));
    while (taken.count(cand)) cand += "'";
    taken.insert(cand);
    fresh.emplace(name, cand);
  }
  if (fresh.empty()) return f;
  std::map<const Formula*, FormulaPtr> memo;
  auto go = [&](auto&& self, const FormulaPtr& g) -> FormulaPtr {
    auto hit = memo.find(g.get());
    if (hit != memo.end()) return hit->second;
    FormulaPtr out;
    switch (g->op) {
      case Op::Atom: {
        auto it = fresh.find(g->letter);
        out = it == fresh.end() ? g : exists(Variable{"x"}, atom(it->second, {Variable{"x"}}));
        break;
      }
      case Op::Bot:
      case Op::Top:
        out = g;
        break;
      case Op::Neg:
      case Op::Box:
      case Op::Dia:
        out = unary(g->op, self(self, g->lhs));
        break;
      case Op::And:
      case Op::Or:
      case Op::Imp:
        out = binary(g->op, self(self, g->lhs), self(self, g->rhs));
        break;
      case Op::Forall:
      case Op::Exists:
        out = quant(g->op, g->var, self(self, g->lhs));
        break;
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return go(go, f);
}

}  // namespace kripke
