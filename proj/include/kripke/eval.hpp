#pragma once

// Truth evaluation for the modal, intuitionistic, and Visser semantics.
//
// Evaluator memoizes per (subformula, world, assignment-restricted-to-free-
// variables); eval_reference is a plain recursive implementation kept for
// differential testing, so correctness never depends on the caches.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kripke/formula.hpp"
#include "kripke/model.hpp"

namespace kripke {

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

class Evaluator {
 public:
  explicit Evaluator(const Model& m) : Evaluator(m, m.mode) {}

  Evaluator(const Model& m, Mode mode) : m_(m), mode_(mode) {
    worlds_ = m.frame().worlds;
    for (std::size_t i = 0; i < worlds_.size(); ++i) windex_[worlds_[i]] = static_cast<int>(i);
    std::set<Individual> pool;
    for (const auto& [w, d] : m.pf.domains) pool.insert(d.begin(), d.end());
    inds_.assign(pool.begin(), pool.end());
    for (std::size_t i = 0; i < inds_.size(); ++i) iindex_[inds_[i]] = static_cast<int>(i);
    succ_.resize(worlds_.size());
    for (const auto& [a, b] : m.frame().relation) {
      auto ia = windex_.find(a), ib = windex_.find(b);
      if (ia != windex_.end() && ib != windex_.end()) succ_[ia->second].push_back(ib->second);
    }
    dom_.resize(worlds_.size());
    for (std::size_t i = 0; i < worlds_.size(); ++i)
      for (const auto& x : m.domain(worlds_[i])) dom_[i].push_back(iindex_.at(x));
  }

  bool eval(const WorldId& w, const Assignment& g, const FormulaPtr& f) {
    retained_.push_back(f);  // caches key on node addresses; keep them alive
    auto wi = windex_.find(w);
    if (wi == windex_.end()) throw EvalError("eval: unknown world " + w);
    Env env;
    const auto& dom = m_.domain(w);
    for (const auto& [v, x] : g) {
      if (!dom.count(x))
        throw EvalError("eval: assignment sends " + v.name + " to " + x +
                        " outside the domain of " + w);
      env.emplace_back(v, iindex_.at(x));
    }
    return eval_node(wi->second, env, f);
  }

  // True iff eval holds for every assignment of f's free variables into D(w).
  bool sat_at(const WorldId& w, const FormulaPtr& f) {
    retained_.push_back(f);
    auto wi = windex_.find(w);
    if (wi == windex_.end()) throw EvalError("sat_at: unknown world " + w);
    auto fvset = free_variables(f);
    std::vector<Variable> fv(fvset.begin(), fvset.end());
    const auto& dom = dom_[wi->second];
    if (fv.empty()) {
      Env env;
      return eval_node(wi->second, env, f);
    }
    std::vector<std::size_t> pick(fv.size(), 0);
    while (true) {
      Env env;
      for (std::size_t i = 0; i < fv.size(); ++i) env.emplace_back(fv[i], dom[pick[i]]);
      if (!eval_node(wi->second, env, f)) return false;
      std::size_t i = 0;
      for (; i < fv.size(); ++i) {
        if (++pick[i] < dom.size()) break;
        pick[i] = 0;
      }
      if (i == fv.size()) return true;
    }
  }

  const std::vector<Individual>& individuals() const { return inds_; }

 private:
  using Env = std::vector<std::pair<Variable, int>>;

  const Model& m_;
  Mode mode_;
  std::vector<WorldId> worlds_;
  std::map<WorldId, int> windex_;
  std::vector<Individual> inds_;
  std::map<Individual, int> iindex_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> dom_;

  struct NodeInfo {
    std::vector<Variable> free_vars;  // sorted
    bool memoizable = false;
    long long stride = 1;
    std::vector<std::int8_t> memo;  // -1 unknown, else 0/1
    // Visser mode: maximal universal block starting at this node.
    std::vector<Variable> block_vars;
    FormulaPtr block_body;
  };
  std::unordered_map<const Formula*, NodeInfo> info_;
  std::vector<FormulaPtr> retained_;

  NodeInfo& node_info(const FormulaPtr& f) {
    auto it = info_.find(f.get());
    if (it != info_.end()) return it->second;
    NodeInfo ni;
    auto fv = free_variables(f);
    ni.free_vars.assign(fv.begin(), fv.end());
    if (ni.free_vars.size() <= 3 && !inds_.empty()) {
      long long stride = 1;
      for (std::size_t i = 0; i < ni.free_vars.size(); ++i) stride *= static_cast<long long>(inds_.size());
      long long cells = stride * static_cast<long long>(worlds_.size());
      if (cells <= 4'000'000) {
        ni.memoizable = true;
        ni.stride = stride;
        ni.memo.assign(static_cast<std::size_t>(cells), -1);
      }
    }
    if (f->op == Op::Forall && mode_ == Mode::Visser) {
      FormulaPtr body = f;
      while (body->op == Op::Forall) {
        ni.block_vars.push_back(body->var);
        body = body->lhs;
      }
      ni.block_body = body;
    }
    return info_.emplace(f.get(), std::move(ni)).first->second;
  }

  static int lookup(const Env& env, const Variable& v) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    return -1;
  }

  bool eval_node(int w, Env& env, const FormulaPtr& f) {
    NodeInfo& ni = node_info(f);
    long long code = 0;
    if (ni.memoizable) {
      long long mul = 1;
      for (const auto& v : ni.free_vars) {
        int x = lookup(env, v);
        if (x < 0) throw EvalError("eval: unassigned free variable " + v.name);
        code += mul * x;
        mul *= static_cast<long long>(inds_.size());
      }
      std::int8_t& cell = ni.memo[static_cast<std::size_t>(
          static_cast<long long>(w) * ni.stride + code)];
      if (cell >= 0) return cell != 0;
      bool val = eval_raw(w, env, f, ni);
      cell = val ? 1 : 0;
      return val;
    }
    return eval_raw(w, env, f, ni);
  }

  bool eval_raw(int w, Env& env, const FormulaPtr& f, NodeInfo& ni) {
    switch (f->op) {
      case Op::Atom: {
        Tuple t;
        t.reserve(f->args.size());
        for (const auto& v : f->args) {
          int x = lookup(env, v);
          if (x < 0) throw EvalError("eval: unassigned free variable " + v.name);
          t.push_back(inds_[static_cast<std::size_t>(x)]);
        }
        return m_.holds(worlds_[static_cast<std::size_t>(w)], f->letter, t);
      }
      case Op::Bot: return false;
      case Op::Top: return true;
      case Op::Neg:
        if (mode_ == Mode::Modal) return !eval_node(w, env, f->lhs);
        // intuitionistic / visser: f -> bot
        for (int w2 : succ_[static_cast<std::size_t>(w)])
          if (eval_node(w2, env, f->lhs)) return false;
        return true;
      case Op::And:
        return eval_node(w, env, f->lhs) && eval_node(w, env, f->rhs);
      case Op::Or:
        return eval_node(w, env, f->lhs) || eval_node(w, env, f->rhs);
      case Op::Imp:
        if (mode_ == Mode::Modal)
          return !eval_node(w, env, f->lhs) || eval_node(w, env, f->rhs);
        for (int w2 : succ_[static_cast<std::size_t>(w)])
          if (eval_node(w2, env, f->lhs) && !eval_node(w2, env, f->rhs)) return false;
        return true;
      case Op::Box:
        // modal box; in intuitionistic/visser modes this is top -> f.
        for (int w2 : succ_[static_cast<std::size_t>(w)])
          if (!eval_node(w2, env, f->lhs)) return false;
        return true;
      case Op::Dia:
        if (mode_ != Mode::Modal)
          throw EvalError("eval: dia is not part of the intuitionistic language");
        for (int w2 : succ_[static_cast<std::size_t>(w)])
          if (eval_node(w2, env, f->lhs)) return true;
        return false;
      case Op::Forall: {
        if (mode_ == Mode::Modal) {
          for (int x : dom_[static_cast<std::size_t>(w)]) {
            env.emplace_back(f->var, x);
            bool ok = eval_node(w, env, f->lhs);
            env.pop_back();
            if (!ok) return false;
          }
          return true;
        }
        if (mode_ == Mode::Intuitionistic) {
          for (int w2 : succ_[static_cast<std::size_t>(w)])
            for (int x : dom_[static_cast<std::size_t>(w2)]) {
              env.emplace_back(f->var, x);
              bool ok = eval_node(w2, env, f->lhs);
              env.pop_back();
              if (!ok) return false;
            }
          return true;
        }
        // Visser: one maximal block of universal quantifiers per step,
        // ranging jointly over a successor and values in its domain.
        const auto& vars = ni.block_vars;
        for (int w2 : succ_[static_cast<std::size_t>(w)]) {
          const auto& d = dom_[static_cast<std::size_t>(w2)];
          if (d.empty()) continue;  // unreachable on validated models
          std::vector<std::size_t> pick(vars.size(), 0);
          while (true) {
            for (std::size_t i = 0; i < vars.size(); ++i) env.emplace_back(vars[i], d[pick[i]]);
            bool ok = eval_node(w2, env, ni.block_body);
            for (std::size_t i = 0; i < vars.size(); ++i) env.pop_back();
            if (!ok) return false;
            std::size_t i = 0;
            for (; i < vars.size(); ++i) {
              if (++pick[i] < d.size()) break;
              pick[i] = 0;
            }
            if (i == vars.size()) break;
          }
        }
        return true;
      }
      case Op::Exists: {
        for (int x : dom_[static_cast<std::size_t>(w)]) {
          env.emplace_back(f->var, x);
          bool ok = eval_node(w, env, f->lhs);
          env.pop_back();
          if (ok) return true;
        }
        return false;
      }
    }
    return false;
  }
};

// Plain recursive reference implementation (no indices, no memo).
inline bool eval_reference(const Model& m, Mode mode, const WorldId& w, Assignment g,
                           const FormulaPtr& f) {
  auto succ = [&](const WorldId& a) {
    std::vector<WorldId> out;
    for (const auto& [x, y] : m.frame().relation)
      if (x == a) out.push_back(y);
    return out;
  };
  switch (f->op) {
    case Op::Atom: {
      Tuple t;
      for (const auto& v : f->args) {
        auto it = g.find(v);
        if (it == g.end()) throw EvalError("eval: unassigned free variable " + v.name);
        t.push_back(it->second);
      }
      return m.holds(w, f->letter, t);
    }
    case Op::Bot: return false;
    case Op::Top: return true;
    case Op::Neg:
      if (mode == Mode::Modal) return !eval_reference(m, mode, w, g, f->lhs);
      for (const auto& w2 : succ(w))
        if (eval_reference(m, mode, w2, g, f->lhs)) return false;
      return true;
    case Op::And:
      return eval_reference(m, mode, w, g, f->lhs) && eval_reference(m, mode, w, g, f->rhs);
    case Op::Or:
      return eval_reference(m, mode, w, g, f->lhs) || eval_reference(m, mode, w, g, f->rhs);
    case Op::Imp:
      if (mode == Mode::Modal)
        return !eval_reference(m, mode, w, g, f->lhs) || eval_reference(m, mode, w, g, f->rhs);
      for (const auto& w2 : succ(w))
        if (eval_reference(m, mode, w2, g, f->lhs) && !eval_reference(m, mode, w2, g, f->rhs))
          return false;
      return true;
    case Op::Box:
      for (const auto& w2 : succ(w))
        if (!eval_reference(m, mode, w2, g, f->lhs)) return false;
      return true;
    case Op::Dia:
      if (mode != Mode::Modal) throw EvalError("eval: dia is not part of the intuitionistic language");
      for (const auto& w2 : succ(w))
        if (eval_reference(m, mode, w2, g, f->lhs)) return true;
      return false;
    case Op::Forall: {
      if (mode == Mode::Modal) {
        for (const auto& x : m.domain(w)) {
          Assignment g2 = g;
          g2[f->var] = x;
          if (!eval_reference(m, mode, w, g2, f->lhs)) return false;
        }
        return true;
      }
      if (mode == Mode::Intuitionistic) {
        for (const auto& w2 : succ(w))
          for (const auto& x : m.domain(w2)) {
            Assignment g2 = g;
            g2[f->var] = x;
            if (!eval_reference(m, mode, w2, g2, f->lhs)) return false;
          }
        return true;
      }
      std::vector<Variable> vars;
      FormulaPtr body = f;
      while (body->op == Op::Forall) {
        vars.push_back(body->var);
        body = body->lhs;
      }
      for (const auto& w2 : succ(w)) {
        std::vector<Individual> d(m.domain(w2).begin(), m.domain(w2).end());
        if (d.empty()) continue;
        std::vector<std::size_t> pick(vars.size(), 0);
        while (true) {
          Assignment g2 = g;
          for (std::size_t i = 0; i < vars.size(); ++i) g2[vars[i]] = d[pick[i]];
          if (!eval_reference(m, mode, w2, g2, body)) return false;
          std::size_t i = 0;
          for (; i < vars.size(); ++i) {
            if (++pick[i] < d.size()) break;
            pick[i] = 0;
          }
          if (i == vars.size()) break;
        }
      }
      return true;
    }
    case Op::Exists:
      for (const auto& x : m.domain(w)) {
        Assignment g2 = g;
        g2[f->var] = x;
        if (eval_reference(m, mode, w, g2, f->lhs)) return true;
      }
      return false;
  }
  return false;
}

inline bool eval(const Model& m, const WorldId& w, const Assignment& g, const FormulaPtr& f) {
  Evaluator ev(m);
  return ev.eval(w, g, f);
}

inline bool sat_at(const Model& m, const WorldId& w, const FormulaPtr& f) {
  Evaluator ev(m);
  return ev.sat_at(w, f);
}

}  // namespace kripke
