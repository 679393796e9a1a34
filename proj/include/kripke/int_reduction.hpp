#pragma once

// The positive-fragment pipeline: tiling encodings, binary-letter
// elimination with its witness construction, the single-letter substitution
// through the addressing frame, the convergent and irreflexive model
// variants, the quantified Goedel translation, and the symmetric-relation
// simulation.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kripke/eval.hpp"
#include "kripke/formula.hpp"
#include "kripke/frame_f.hpp"
#include "kripke/model.hpp"
#include "kripke/subst.hpp"
#include "kripke/tiles.hpp"

namespace kripke {

struct TileAtomNames {
  std::string H = "H", V = "V", D = "D", q = "q", p = "p";
  std::string tile_prefix = "P_";
  std::string H1 = "H1", H2 = "H2", V1 = "V1", V2 = "V2";
  std::string r1 = "r1", s1 = "s1", r2 = "r2", s2 = "s2";
};

enum class TilingVariant { Int, Visser };

struct TilingEncoding {
  std::vector<FormulaPtr> conjuncts;  // the numbered constraints, in order
  FormulaPtr psi;                     // their conjunction
  FormulaPtr phi;                     // the refutability wrapper
};

// Encodes a tile set: psi constrains one-tile-per-point, colour matching,
// total H/V successors, decidedness of V (and of H in the visser variant),
// and grid commutation; phi wraps psi into the formula whose refutability
// matches tileability.
inline TilingEncoding encode_tiling_full(const TileSet& ts, TilingVariant variant,
                                         const TileAtomNames& names = {}) {
  if (ts.tiles.empty()) throw std::invalid_argument("encode_tiling: empty tile set");
  Variable x{"x"}, y{"y"};
  auto P = [&](const Tile& t, const Variable& v) { return atom(names.tile_prefix + t.name, {v}); };
  FormulaPtr q = prop(names.q);
  FormulaPtr p = prop(names.p);
  FormulaPtr Hxy = atom(names.H, {x, y});
  FormulaPtr Vxy = atom(names.V, {x, y});

  std::vector<FormulaPtr> conjuncts;

  {  // (1) every point carries exactly one tile, up to q
    std::vector<FormulaPtr> choices;
    for (const auto& t : ts.tiles) {
      std::vector<FormulaPtr> parts{P(t, x)};
      for (const auto& t2 : ts.tiles)
        if (t2.name != t.name) parts.push_back(imp(P(t2, x), q));
      choices.push_back(conj_all(parts));
    }
    conjuncts.push_back(forall(x, disj_all(choices)));
  }
  {  // (2) horizontal colour matching
    std::vector<FormulaPtr> cs;
    for (const auto& t : ts.tiles)
      for (const auto& t2 : ts.tiles)
        if (t.right != t2.left)
          cs.push_back(forall(x, forall(y, imp(conj(Hxy, conj(P(t, x), P(t2, y))), q))));
    if (!cs.empty()) conjuncts.push_back(conj_all(cs));
  }
  {  // (3) vertical colour matching
    std::vector<FormulaPtr> cs;
    for (const auto& t : ts.tiles)
      for (const auto& t2 : ts.tiles)
        if (t.up != t2.down)
          cs.push_back(forall(x, forall(y, imp(conj(Vxy, conj(P(t, x), P(t2, y))), q))));
    if (!cs.empty()) conjuncts.push_back(conj_all(cs));
  }
  // (4) total successors
  conjuncts.push_back(conj(forall(x, exists(y, Hxy)), forall(x, exists(y, Vxy))));
  // (5) V is decided
  conjuncts.push_back(forall(x, forall(y, disj(Vxy, imp(Vxy, q)))));
  {  // (6) commutation through the focus letter D
    FormulaPtr ante = conj(Vxy, exists(x, conj(atom(names.D, {x}), atom(names.H, {y, x}))));
    FormulaPtr cons = forall(y, imp(Hxy, forall(x, imp(atom(names.D, {x}), atom(names.V, {y, x})))));
    conjuncts.push_back(forall(x, forall(y, imp(ante, cons))));
  }

  TilingEncoding out;
  if (variant == TilingVariant::Visser)  // (5a) H is decided as well
    conjuncts.push_back(forall(x, forall(y, disj(Hxy, imp(Hxy, q)))));
  out.conjuncts = conjuncts;
  out.psi = conj_all(conjuncts);
  if (variant == TilingVariant::Int) {
    out.phi = imp(out.psi, imp(imp(exists(x, imp(atom(names.D, {x}), q)), p), p));
  } else {
    FormulaPtr box5q = box_power(q, 5, PowerKind::BoxExact);
    out.phi = imp(out.psi, imp(imp(exists(x, imp(atom(names.D, {x}), box5q)), p), box(p)));
  }
  return out;
}

inline std::pair<FormulaPtr, FormulaPtr> encode_tiling(const TileSet& ts, TilingVariant variant,
                                                       const TileAtomNames& names = {}) {
  TilingEncoding e = encode_tiling_full(ts, variant, names);
  return {e.psi, e.phi};
}

struct BinaryElimNames {
  std::string Q1, Q2, r, s;
};

// Replaces every Q(u,v) with (Q1(u) & Q2(v) -> r) | s.
inline FormulaPtr eliminate_binary(const FormulaPtr& chi, const std::string& Q,
                                   const BinaryElimNames& fresh) {
  auto p = profile(chi);
  if (!p.positive) throw std::invalid_argument("eliminate_binary: input must be positive");
  for (const auto& nm : {fresh.Q1, fresh.Q2, fresh.r, fresh.s})
    if (p.letters.count(nm))
      throw std::invalid_argument("eliminate_binary: fresh letter '" + nm + "' occurs in the input");
  auto it = p.letters.find(Q);
  if (it != p.letters.end() && it->second.arity != 2)
    throw std::invalid_argument("eliminate_binary: '" + Q + "' is not binary");
  auto go = [&](auto&& self, const FormulaPtr& g) -> FormulaPtr {
    switch (g->op) {
      case Op::Atom: {
        if (g->letter != Q) return g;
        return disj(imp(conj(atom(fresh.Q1, {g->args[0]}), atom(fresh.Q2, {g->args[1]})),
                        prop(fresh.r)),
                    prop(fresh.s));
      }
      case Op::Bot:
      case Op::Top:
        return g;
      case Op::Neg:
      case Op::Box:
      case Op::Dia:
        return unary(g->op, self(self, g->lhs));
      case Op::And:
      case Op::Or:
      case Op::Imp:
        return binary(g->op, self(self, g->lhs), self(self, g->rhs));
      case Op::Forall:
      case Op::Exists:
        return quant(g->op, g->var, self(self, g->lhs));
    }
    return g;
  };
  return go(go, chi);
}

// The countermodel half of binary elimination: given an intuitionistic model
// refuting chi at w0, adds one terminal world per (w,a,b) with Q[a,b] false
// at w, interpreted so that the simulation formula fails there exactly when
// Q did; the result refutes the eliminated formula at w0.
inline Model witness_eliminate_binary(const Model& m, const WorldId& w0, const FormulaPtr& chi,
                                      const std::string& Q, const BinaryElimNames& fresh) {
  if (m.mode != Mode::Intuitionistic)
    throw std::invalid_argument("witness_eliminate_binary: model must be intuitionistic");
  {
    Evaluator ev(m);
    if (ev.sat_at(w0, chi))
      throw std::invalid_argument("witness_eliminate_binary: chi is not refuted at " + w0);
  }
  auto p = profile(chi);

  Model out;
  out.mode = Mode::Intuitionistic;
  Frame base;
  for (const auto& w : m.frame().worlds) {
    base.add_world(w);
    out.pf.domains[w] = m.domain(w);
  }
  for (const auto& e : m.frame().relation) base.relation.insert(e);
  // Original worlds keep every chi-letter except Q; r, s, Q1, Q2 start empty.
  for (const auto& [key, tuples] : m.interpretation) {
    if (key.second == Q) continue;
    for (const auto& t : tuples) out.set_true(key.first, key.second, t);
  }

  Evaluator ev(m);
  for (const auto& w : m.frame().worlds) {
    const auto& dom = m.domain(w);
    for (const auto& a : dom)
      for (const auto& b : dom) {
        if (m.holds(w, Q, {a, b})) continue;
        WorldId u = w + ":" + a + ":" + b;
        base.add_world(u);
        out.pf.domains[u] = dom;
        base.add_edge(w, u);
        out.set_true(u, fresh.Q1, {a});
        out.set_true(u, fresh.Q2, {b});
        out.set_true(u, fresh.s, {});
        // r stays false; every other chi'-relevant letter is universally true.
        for (const auto& [name, info] : p.letters) {
          if (name == Q) continue;
          std::vector<Tuple> all{{}};
          for (std::size_t i = 0; i < info.arity; ++i) {
            std::vector<Tuple> next;
            for (const auto& t : all)
              for (const auto& c : dom) {
                Tuple t2 = t;
                t2.push_back(c);
                next.push_back(std::move(t2));
              }
            all = std::move(next);
          }
          for (auto& t : all) out.set_true(u, name, std::move(t));
        }
      }
  }
  out.pf.frame = closure(base, ClosureKind::ReflexiveTransitive);
  return out;
}

// phi* : alpha_i substituted for P_i, i = 1..n, with the letters taken in
// sorted order when not supplied explicitly.
inline FormulaPtr star_subst_int(const FormulaPtr& f, int n,
                                 std::vector<std::string> letters = {}) {
  if (n < 2) throw std::invalid_argument("star_subst_int: n must be >= 2");
  auto p = profile(f);
  if (!p.positive) throw std::invalid_argument("star_subst_int: input must be positive");
  if (letters.empty())
    for (const auto& [name, info] : p.letters) {
      if (info.arity != 1)
        throw std::invalid_argument("star_subst_int: letter '" + name + "' is not monadic");
      letters.push_back(name);
    }
  if (letters.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("star_subst_int: expected exactly n letters");
  std::map<std::string, AtomTemplate> map;
  Variable x{"x"};
  for (int i = 0; i < n; ++i)
    map.emplace(letters[static_cast<std::size_t>(i)], AtomTemplate{x, alpha_int(i + 1, n, x)});
  return substitute_atoms(f, map);
}

enum class MstarVariant { Int, Qkc, Qfl };

// The appended-frames surgery: one pivot-suitable copy of the depth-n
// addressing frame per (world, individual), wired from w to the level-n
// worlds a_i / b_i of copy (w,a) exactly when P_i[a] fails at w.  P is empty
// on the original worlds.  The Qkc variant puts a P-total world on top; the
// Qfl variant uses the irreflexive frames and keeps the relation transitive
// only.
inline Model build_mstar_int(const Model& m, int n, const std::vector<std::string>& letters,
                             MstarVariant variant) {
  if (n < 2 || letters.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("build_mstar_int: need n >= 2 letters");
  Mode want = variant == MstarVariant::Qfl ? Mode::Visser : Mode::Intuitionistic;
  if (m.mode != want)
    throw std::invalid_argument("build_mstar_int: host mode does not match the variant");
  for (const auto& w : m.frame().worlds)
    if (m.domain(w).size() < 3)
      throw std::invalid_argument("build_mstar_int: every domain needs >= 3 individuals");

  FrameF ff = build_frame_f(n, variant == MstarVariant::Qfl ? FrameFVariant::Qfl
                                                            : FrameFVariant::Int);
  Model out;
  out.mode = want;
  Frame base;
  for (const auto& w : m.frame().worlds) {
    base.add_world(w);
    out.pf.domains[w] = m.domain(w);
  }
  for (const auto& e : m.frame().relation) base.relation.insert(e);

  Evaluator ev(m);
  Variable x{"x"};
  for (const auto& w : m.frame().worlds) {
    const auto& dom = m.domain(w);
    for (const auto& a : dom) {
      Individual partner;
      for (const auto& c : dom)
        if (c != a) { partner = c; break; }
      Model copy = a_suitable_f(ff, dom, a, partner);
      auto cname = [&](const WorldId& u) { return w + ":" + a + ":" + u; };
      for (const auto& u : copy.frame().worlds) {
        base.add_world(cname(u));
        out.pf.domains[cname(u)] = dom;
      }
      for (const auto& [e1, e2] : copy.frame().relation) base.add_edge(cname(e1), cname(e2));
      for (const auto& [key, tuples] : copy.interpretation)
        for (const auto& t : tuples) out.set_true(cname(key.first), "P", t);
      for (int i = 1; i <= n; ++i) {
        bool holds_pi = ev.eval(w, {{x, a}}, atom(letters[static_cast<std::size_t>(i - 1)], {x}));
        if (holds_pi) continue;
        base.add_edge(w, cname(frame_f_world({n, FKind::A, i})));
        base.add_edge(w, cname(frame_f_world({n, FKind::B, i})));
      }
    }
  }

  if (variant == MstarVariant::Qkc) {
    WorldId d = "top:d";
    base.add_world(d);
    std::set<Individual> all;
    for (const auto& [w, dm] : out.pf.domains) all.insert(dm.begin(), dm.end());
    out.pf.domains[d] = all;
    for (const auto& w : base.worlds)
      if (w != d) base.add_edge(w, d);
    for (const auto& c : all) out.set_true(d, "P", {c});
  }

  out.pf.frame = closure(base, variant == MstarVariant::Qfl ? ClosureKind::Transitive
                                                            : ClosureKind::ReflexiveTransitive);
  return out;
}

// The quantified Goedel translation.  Atoms become atom & box atom (the
// box-plus form agrees with the plain box form on reflexive frames and is
// the one that extends pointwise to the irreflexive semantics); universal
// blocks are guarded as one step.
inline FormulaPtr godel_translate(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Atom:
      return box_plus(f);
    case Op::Bot:
    case Op::Top:
      return f;
    case Op::Neg:
      return box(imp(godel_translate(f->lhs), bot()));
    case Op::And:
      return conj(godel_translate(f->lhs), godel_translate(f->rhs));
    case Op::Or:
      return disj(godel_translate(f->lhs), godel_translate(f->rhs));
    case Op::Imp:
      return box(imp(godel_translate(f->lhs), godel_translate(f->rhs)));
    case Op::Box:  // box g abbreviates top -> g in the intuitionistic dialect
      return box(imp(top(), godel_translate(f->lhs)));
    case Op::Dia:
      throw std::invalid_argument("godel_translate: dia is not part of the intuitionistic language");
    case Op::Forall: {
      std::vector<Variable> block;
      FormulaPtr body = f;
      while (body->op == Op::Forall) {
        block.push_back(body->var);
        body = body->lhs;
      }
      FormulaPtr t = godel_translate(body);
      for (auto it = block.rbegin(); it != block.rend(); ++it) t = forall(*it, t);
      return box(t);
    }
    case Op::Exists:
      return exists(f->var, godel_translate(f->lhs));
  }
  return f;
}

// Simulates the single binary letter S by box(~P(x) | ~P(y)).
inline FormulaPtr sib_simulate(const FormulaPtr& f, const std::string& S, const std::string& P) {
  auto p = profile(f);
  for (const auto& [name, info] : p.letters) {
    if (name != S)
      throw std::invalid_argument("sib_simulate: input must use '" + S + "' as its only letter");
    if (info.arity != 2) throw std::invalid_argument("sib_simulate: '" + S + "' must be binary");
  }
  auto go = [&](auto&& self, const FormulaPtr& g) -> FormulaPtr {
    switch (g->op) {
      case Op::Atom:
        return box(disj(neg(atom(P, {g->args[0]})), neg(atom(P, {g->args[1]}))));
      case Op::Bot:
      case Op::Top:
        return g;
      case Op::Neg:
      case Op::Box:
      case Op::Dia:
        return unary(g->op, self(self, g->lhs));
      case Op::And:
      case Op::Or:
      case Op::Imp:
        return binary(g->op, self(self, g->lhs), self(self, g->rhs));
      case Op::Forall:
      case Op::Exists:
        return quant(g->op, g->var, self(self, g->lhs));
    }
    return g;
  };
  return go(go, f);
}

}  // namespace kripke
