#pragma once

// Formula syntax trees shared by the modal and intuitionistic dialects.
//
// One immutable AST serves both languages: the intuitionistic evaluator
// treats Neg(f) as Imp(f, Bot) and Box(f) as Imp(Top, f); the modal
// evaluator treats every connective natively.  Nodes are reference-counted
// and never mutated, so subtrees may be shared freely.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kripke {

struct Variable {
  std::string name;

  Variable() = default;
  Variable(std::string n) : name(std::move(n)) {}
  Variable(const char* n) : name(n) {}

  bool operator==(const Variable& o) const { return name == o.name; }
  bool operator!=(const Variable& o) const { return name != o.name; }
  bool operator<(const Variable& o) const { return name < o.name; }
};

enum class Op : std::uint8_t {
  Atom,
  Bot,
  Top,
  Neg,
  And,
  Or,
  Imp,
  Box,
  Dia,
  Forall,
  Exists,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  Op op;
  std::string letter;          // Atom only
  std::vector<Variable> args;  // Atom only
  Variable var;                // Forall/Exists only
  FormulaPtr lhs, rhs;         // children; unary connectives use lhs

  Formula(Op o, std::string l, std::vector<Variable> a, Variable v,
          FormulaPtr left, FormulaPtr right)
      : op(o),
        letter(std::move(l)),
        args(std::move(a)),
        var(std::move(v)),
        lhs(std::move(left)),
        rhs(std::move(right)) {}
};

inline FormulaPtr atom(std::string letter, std::vector<Variable> args = {}) {
  if (letter.empty()) throw std::invalid_argument("atom: empty letter name");
  return std::make_shared<Formula>(Op::Atom, std::move(letter), std::move(args),
                                   Variable{}, nullptr, nullptr);
}

// 0-ary letter (propositional variable).
inline FormulaPtr prop(std::string letter) { return atom(std::move(letter)); }

inline FormulaPtr bot() {
  static const FormulaPtr f = std::make_shared<Formula>(
      Op::Bot, "", std::vector<Variable>{}, Variable{}, nullptr, nullptr);
  return f;
}

inline FormulaPtr top() {
  static const FormulaPtr f = std::make_shared<Formula>(
      Op::Top, "", std::vector<Variable>{}, Variable{}, nullptr, nullptr);
  return f;
}

inline FormulaPtr unary(Op o, FormulaPtr f) {
  if (!f) throw std::invalid_argument("unary: null child");
  return std::make_shared<Formula>(o, "", std::vector<Variable>{}, Variable{},
                                   std::move(f), nullptr);
}

inline FormulaPtr binary(Op o, FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw std::invalid_argument("binary: null child");
  return std::make_shared<Formula>(o, "", std::vector<Variable>{}, Variable{},
                                   std::move(a), std::move(b));
}

inline FormulaPtr neg(FormulaPtr f) { return unary(Op::Neg, std::move(f)); }
inline FormulaPtr box(FormulaPtr f) { return unary(Op::Box, std::move(f)); }
inline FormulaPtr dia(FormulaPtr f) { return unary(Op::Dia, std::move(f)); }
inline FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return binary(Op::And, std::move(a), std::move(b)); }
inline FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return binary(Op::Or, std::move(a), std::move(b)); }
inline FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return binary(Op::Imp, std::move(a), std::move(b)); }

inline FormulaPtr quant(Op o, Variable v, FormulaPtr body) {
  if (!body) throw std::invalid_argument("quantifier: null body");
  if (v.name.empty()) throw std::invalid_argument("quantifier: empty variable");
  return std::make_shared<Formula>(o, "", std::vector<Variable>{}, std::move(v),
                                   std::move(body), nullptr);
}

inline FormulaPtr forall(Variable v, FormulaPtr body) { return quant(Op::Forall, std::move(v), std::move(body)); }
inline FormulaPtr exists(Variable v, FormulaPtr body) { return quant(Op::Exists, std::move(v), std::move(body)); }

// Derived operators, expanded eagerly.
inline FormulaPtr box_plus(const FormulaPtr& f) { return conj(f, box(f)); }
inline FormulaPtr dia_plus(const FormulaPtr& f) { return disj(f, dia(f)); }

// Right fold of a nonempty list into a conjunction/disjunction.
inline FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) throw std::invalid_argument("conj_all: empty list");
  FormulaPtr acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = conj(fs[i], acc);
  return acc;
}

inline FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) throw std::invalid_argument("disj_all: empty list");
  FormulaPtr acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = disj(fs[i], acc);
  return acc;
}

inline bool eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Atom:
      return a->letter == b->letter && a->args == b->args;
    case Op::Bot:
    case Op::Top:
      return true;
    case Op::Neg:
    case Op::Box:
    case Op::Dia:
      return eq(a->lhs, b->lhs);
    case Op::And:
    case Op::Or:
    case Op::Imp:
      return eq(a->lhs, b->lhs) && eq(a->rhs, b->rhs);
    case Op::Forall:
    case Op::Exists:
      return a->var == b->var && eq(a->lhs, b->lhs);
  }
  return false;
}

// Tree size (leaves and connectives both count one).  Shared subtrees are
// counted once per occurrence, matching the written-out formula.
inline std::size_t node_count(const FormulaPtr& f) {
  std::unordered_map<const Formula*, std::size_t> cache;
  auto go = [&](auto&& self, const FormulaPtr& g) -> std::size_t {
    auto it = cache.find(g.get());
    if (it != cache.end()) return it->second;
    std::size_t n = 1;
    if (g->lhs) n += self(self, g->lhs);
    if (g->rhs) n += self(self, g->rhs);
    cache.emplace(g.get(), n);
    return n;
  };
  return go(go, f);
}

struct LetterInfo {
  std::size_t arity = 0;
  std::size_t occurrences = 0;
};

struct SyntaxProfile {
  std::set<Variable> free_variables;
  std::set<Variable> all_variables;  // bound and free
  std::map<std::string, LetterInfo> letters;
  bool positive = true;
  bool closed = true;

  std::size_t variable_count() const { return all_variables.size(); }
};

// Exact syntactic counts; positivity means no Neg and no Bot occur.
// Throws if some letter is used with two different arities.  Works on the
// shared-subtree representation, so heavily shared formulas profile in time
// proportional to their distinct nodes (occurrence counts stay tree-exact).
inline SyntaxProfile profile(const FormulaPtr& f) {
  struct NodeFacts {
    std::map<std::string, LetterInfo> letters;
    std::set<Variable> free_vars;
    std::set<Variable> all_vars;
    bool positive = true;
  };
  std::unordered_map<const Formula*, NodeFacts> memo;
  auto go = [&](auto&& self, const FormulaPtr& g) -> const NodeFacts& {
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    NodeFacts nf;
    auto merge = [&](const NodeFacts& c) {
      for (const auto& [name, info] : c.letters) {
        auto [jt, fresh] = nf.letters.try_emplace(name, info);
        if (!fresh) {
          if (jt->second.arity != info.arity)
            throw std::invalid_argument("profile: letter '" + name +
                                        "' used with inconsistent arity");
          jt->second.occurrences += info.occurrences;
        }
      }
      nf.free_vars.insert(c.free_vars.begin(), c.free_vars.end());
      nf.all_vars.insert(c.all_vars.begin(), c.all_vars.end());
      nf.positive = nf.positive && c.positive;
    };
    switch (g->op) {
      case Op::Atom: {
        nf.letters.emplace(g->letter, LetterInfo{g->args.size(), 1});
        for (const auto& v : g->args) {
          nf.free_vars.insert(v);
          nf.all_vars.insert(v);
        }
        break;
      }
      case Op::Bot:
        nf.positive = false;
        break;
      case Op::Top:
        break;
      case Op::Neg:
        merge(self(self, g->lhs));
        nf.positive = false;
        break;
      case Op::Box:
      case Op::Dia:
        merge(self(self, g->lhs));
        break;
      case Op::And:
      case Op::Or:
      case Op::Imp:
        merge(self(self, g->lhs));
        merge(self(self, g->rhs));
        break;
      case Op::Forall:
      case Op::Exists:
        merge(self(self, g->lhs));
        nf.free_vars.erase(g->var);
        nf.all_vars.insert(g->var);
        break;
    }
    return memo.emplace(g.get(), std::move(nf)).first->second;
  };
  const NodeFacts& nf = go(go, f);
  SyntaxProfile p;
  p.letters = nf.letters;
  p.free_variables = nf.free_vars;
  p.all_variables = nf.all_vars;
  p.positive = nf.positive;
  p.closed = nf.free_vars.empty();
  return p;
}

inline std::set<Variable> free_variables(const FormulaPtr& f) {
  return profile(f).free_variables;
}

// ---------------------------------------------------------------------------
// Printing.  Binary connectives are always parenthesised, so round-tripping
// through the parser restores the exact tree; quantifier and unary chains are
// wrapped only where a quantifier would otherwise swallow the rest of an
// enclosing operand.

namespace detail {
inline bool tail_quantifier(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Forall:
    case Op::Exists:
      return true;
    case Op::Neg:
    case Op::Box:
    case Op::Dia:
      return tail_quantifier(f->lhs);
    default:
      return false;
  }
}
}  // namespace detail

inline std::string print(const FormulaPtr& f) {
  auto operand = [&](auto&& self, const FormulaPtr& g) -> std::string {
    std::string s = self(self, g);
    if (detail::tail_quantifier(g)) return "(" + s + ")";
    return s;
  };
  auto go = [&](auto&& self, const FormulaPtr& g) -> std::string {
    switch (g->op) {
      case Op::Atom: {
        if (g->args.empty()) return g->letter;
        std::string s = g->letter + "(";
        for (std::size_t i = 0; i < g->args.size(); ++i) {
          if (i) s += ",";
          s += g->args[i].name;
        }
        return s + ")";
      }
      case Op::Bot: return "bot";
      case Op::Top: return "top";
      case Op::Neg: return "~" + operand(self, g->lhs);
      case Op::Box: return "box " + operand(self, g->lhs);
      case Op::Dia: return "dia " + operand(self, g->lhs);
      case Op::And: return "(" + operand(self, g->lhs) + " & " + operand(self, g->rhs) + ")";
      case Op::Or:  return "(" + operand(self, g->lhs) + " | " + operand(self, g->rhs) + ")";
      case Op::Imp: return "(" + operand(self, g->lhs) + " -> " + operand(self, g->rhs) + ")";
      case Op::Forall: return "forall " + g->var.name + ". " + self(self, g->lhs);
      case Op::Exists: return "exists " + g->var.name + ". " + self(self, g->lhs);
    }
    return "";
  };
  return go(go, f);
}

}  // namespace kripke
