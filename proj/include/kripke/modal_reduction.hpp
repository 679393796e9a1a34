#pragma once

// The single-letter embedding pipeline for quantified modal logics: the
// guard formula B, the guarded-box embedding ', the addressing formulas
// delta/alpha/beta for the GL-style and KTB-style chain gadgets, the gadget
// models themselves, the attach-gadgets model surgery, and the composite
// embedding e(f) = forall x. beta_{n+1}(x) & f*.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kripke/eval.hpp"
#include "kripke/formula.hpp"
#include "kripke/frame.hpp"
#include "kripke/model.hpp"
#include "kripke/subst.hpp"

namespace kripke {

enum class Track { K, GL, Grz, KTB };

inline std::string track_name(Track t) {
  switch (t) {
    case Track::K: return "k";
    case Track::GL: return "gl";
    case Track::Grz: return "grz";
    case Track::KTB: return "ktb";
  }
  return "?";
}

struct ReductionContext {
  std::vector<std::string> sources;  // P_1 .. P_n, monadic
  std::string fresh;                 // P_{n+1}
  std::string target;                // the single letter P
  Track track = Track::GL;

  std::size_t n() const { return sources.size(); }

  // Letter for index k in 1..n+1 (k = n+1 names the fresh guard letter).
  const std::string& letter(std::size_t k) const {
    if (k < 1 || k > sources.size() + 1)
      throw std::invalid_argument("reduction context: index out of range");
    return k <= sources.size() ? sources[k - 1] : fresh;
  }

  void check() const {
    if (sources.empty()) throw std::invalid_argument("reduction context: n must be >= 1");
    std::set<std::string> seen(sources.begin(), sources.end());
    if (seen.size() != sources.size())
      throw std::invalid_argument("reduction context: duplicate source letters");
    if (seen.count(fresh)) throw std::invalid_argument("reduction context: fresh letter collides");
    if (fresh == target || seen.count(target))
      throw std::invalid_argument("reduction context: target letter collides");
  }

  static ReductionContext canonical(std::size_t n, Track track) {
    ReductionContext ctx;
    for (std::size_t i = 1; i <= n; ++i) ctx.sources.push_back("P" + std::to_string(i));
    ctx.fresh = "P" + std::to_string(n + 1);
    ctx.target = "P";
    ctx.track = track;
    ctx.check();
    return ctx;
  }

  // Derives a context from a formula's monadic letters (sorted), choosing a
  // collision-free fresh and target letter.
  static ReductionContext for_formula(const FormulaPtr& f, Track track) {
    ReductionContext ctx;
    auto p = profile(f);
    for (const auto& [name, info] : p.letters) {
      if (info.arity != 1)
        throw std::invalid_argument("reduction context: letter '" + name + "' is not monadic");
      ctx.sources.push_back(name);
    }
    if (ctx.sources.empty())
      throw std::invalid_argument("reduction context: formula has no predicate letters");
    auto taken = [&](const std::string& s) {
      return p.letters.count(s) > 0 || s == ctx.fresh;
    };
    ctx.fresh = "P" + std::to_string(ctx.sources.size() + 1);
    while (p.letters.count(ctx.fresh)) ctx.fresh += "'";
    ctx.target = "P";
    while (taken(ctx.target)) ctx.target += "'";
    ctx.track = track;
    ctx.check();
    return ctx;
  }
};

// B = forall x. P_{n+1}(x)
inline FormulaPtr build_b(const ReductionContext& ctx) {
  return forall("x", atom(ctx.fresh, {Variable{"x"}}));
}

// The guarded-box embedding: homomorphic on atoms, ~, &, forall; boxes
// become box(B -> .).  The input is first rewritten into that basis.
inline FormulaPtr prime_embed(const FormulaPtr& f, const ReductionContext& ctx) {
  auto p = profile(f);
  for (const auto& [name, info] : p.letters) {
    if (name == ctx.fresh || name == ctx.target)
      throw std::invalid_argument("prime_embed: input mentions reserved letter '" + name + "'");
    if (info.arity != 1)
      throw std::invalid_argument("prime_embed: letter '" + name + "' is not monadic");
    bool known = false;
    for (const auto& s : ctx.sources) known = known || s == name;
    if (!known)
      throw std::invalid_argument("prime_embed: letter '" + name + "' not among the sources");
  }
  FormulaPtr b = build_b(ctx);
  auto go = [&](auto&& self, const FormulaPtr& g) -> FormulaPtr {
    switch (g->op) {
      case Op::Atom:
      case Op::Bot:
        return g;
      case Op::Neg:
        return neg(self(self, g->lhs));
      case Op::And:
        return conj(self(self, g->lhs), self(self, g->rhs));
      case Op::Forall:
        return forall(g->var, self(self, g->lhs));
      case Op::Box:
        return box(imp(b, self(self, g->lhs)));
      default:
        throw std::logic_error("prime_embed: input not in basis");
    }
  };
  return go(go, to_box_and_neg_basis(f));
}

// delta_1(x) = P(x) & dia(~P(x) & dia box+ P(x));
// delta_{m+1}(x) = P(x) & dia(~P(x) & dia delta_m(x)).
inline FormulaPtr delta_gl(int m, const Variable& v, const ReductionContext& ctx) {
  if (m < 1) throw std::invalid_argument("delta_gl: index must be >= 1");
  FormulaPtr p = atom(ctx.target, {v});
  FormulaPtr acc = conj(p, dia(conj(neg(p), dia(box_plus(p)))));
  for (int i = 2; i <= m; ++i) acc = conj(p, dia(conj(neg(p), dia(acc))));
  return acc;
}

// alpha_k(x) = delta_k(x) & ~delta_{k+1}(x) & dia box+ ~P(x)
inline FormulaPtr alpha_gl(int k, const Variable& v, const ReductionContext& ctx) {
  if (k < 1 || static_cast<std::size_t>(k) > ctx.n() + 1)
    throw std::invalid_argument("alpha_gl: index out of range");
  FormulaPtr p = atom(ctx.target, {v});
  return conj(delta_gl(k, v, ctx),
              conj(neg(delta_gl(k + 1, v, ctx)), dia(box_plus(neg(p)))));
}

// delta(x) = box+ P(x);
// delta_k^k(x) = box^{<=k} ~P(x) & dia^{k+1} P(x) & dia^{k+2} delta(x);
// delta_i^k(x) = box^{<=i} ~P(x) & dia^{i+1} P(x) & dia^{2i+3} delta_{i+1}^k(x).
inline FormulaPtr delta_ktb(int i, int k, const Variable& v, const ReductionContext& ctx) {
  if (k < 1 || i < 1 || i > k) throw std::invalid_argument("delta_ktb: indices out of range");
  FormulaPtr p = atom(ctx.target, {v});
  FormulaPtr acc = conj(box_power(neg(p), k, PowerKind::BoxUpTo),
                        conj(box_power(p, k + 1, PowerKind::DiaExact),
                             box_power(box_plus(p), k + 2, PowerKind::DiaExact)));
  for (int j = k - 1; j >= i; --j)
    acc = conj(box_power(neg(p), j, PowerKind::BoxUpTo),
               conj(box_power(p, j + 1, PowerKind::DiaExact),
                    box_power(acc, 2 * j + 3, PowerKind::DiaExact)));
  return acc;
}

// alpha_k(x) = P(x) & dia^2 delta_1^k(x)
inline FormulaPtr alpha_ktb(int k, const Variable& v, const ReductionContext& ctx) {
  if (k < 1 || static_cast<std::size_t>(k) > ctx.n() + 1)
    throw std::invalid_argument("alpha_ktb: index out of range");
  FormulaPtr p = atom(ctx.target, {v});
  return conj(p, box_power(delta_ktb(1, k, v, ctx), 2, PowerKind::DiaExact));
}

inline FormulaPtr alpha(int k, const Variable& v, const ReductionContext& ctx) {
  return ctx.track == Track::KTB ? alpha_ktb(k, v, ctx) : alpha_gl(k, v, ctx);
}

// beta_k(x) = ~P(x) & dia alpha_k(x)
inline FormulaPtr beta(int k, const Variable& v, const ReductionContext& ctx) {
  if (k < 1 || static_cast<std::size_t>(k) > ctx.n() + 1)
    throw std::invalid_argument("beta: index out of range");
  return conj(neg(atom(ctx.target, {v})), dia(alpha(k, v, ctx)));
}

// f* : every P_k(v) in a primed formula replaced by beta_k(v).
inline FormulaPtr star_subst(const FormulaPtr& fprime, const ReductionContext& ctx) {
  std::map<std::string, AtomTemplate> map;
  Variable x{"x"};
  for (std::size_t k = 1; k <= ctx.n() + 1; ++k)
    map.emplace(ctx.letter(k), AtomTemplate{x, beta(static_cast<int>(k), x, ctx)});
  return substitute_atoms(fprime, map);
}

// e(f) = forall x. beta_{n+1}(x) & f*
inline FormulaPtr embed_e(const FormulaPtr& f, const ReductionContext& ctx) {
  if (!profile(f).closed) throw std::invalid_argument("embed_e: input must be closed");
  Variable x{"x"};
  FormulaPtr guard = forall(x, beta(static_cast<int>(ctx.n()) + 1, x, ctx));
  return conj(guard, star_subst(prime_embed(f, ctx), ctx));
}

// bf = forall x. box P(x) -> box forall x. P(x)
inline FormulaPtr bf_formula(const std::string& letter = "P") {
  Variable x{"x"};
  return imp(forall(x, box(atom(letter, {x}))), box(forall(x, atom(letter, {x}))));
}

// ---------------------------------------------------------------------------
// Gadget models.

// GL-style chain for level k: worlds w0..w{2k} plus w*, relation the
// transitive closure of the covering chain plus (w0,w*).  P holds of the
// pivot exactly at the even chain worlds; no other individual is ever P.
inline Model build_gadget_gl(int k, const Individual& pivot, const std::set<Individual>& domain) {
  if (k < 1) throw std::invalid_argument("build_gadget_gl: level must be >= 1");
  if (!domain.count(pivot)) throw std::invalid_argument("build_gadget_gl: pivot not in domain");
  Model m;
  m.mode = Mode::Modal;
  m.pf.constant_domains = true;
  auto name = [](int i) { return "w" + std::to_string(i); };
  for (int i = 0; i <= 2 * k; ++i) m.set_domain(name(i), domain);
  m.set_domain("w*", domain);
  Frame base;
  base.worlds = m.frame().worlds;
  for (int i = 0; i < 2 * k; ++i) base.add_edge(name(i), name(i + 1));
  base.add_edge(name(0), "w*");
  m.frame() = closure(base, ClosureKind::Transitive);
  for (int i = 0; i <= k; ++i) m.set_true(name(2 * i), "P", {pivot});
  return m;
}

// KTB-style chain for level k: the root (pivot world), then for each
// i = 1..k a gap of 2i+1 non-pivot worlds followed by the next pivot world,
// the last gap being followed by three final pivot worlds; the relation is
// the reflexive-symmetric closure of the covering chain.
inline Model build_gadget_ktb(int k, const Individual& pivot, const std::set<Individual>& domain) {
  if (k < 1) throw std::invalid_argument("build_gadget_ktb: level must be >= 1");
  if (!domain.count(pivot)) throw std::invalid_argument("build_gadget_ktb: pivot not in domain");
  Model m;
  m.mode = Mode::Modal;
  m.pf.constant_domains = true;
  const int total = k * k + 3 * k + 3;
  auto name = [](int i) { return "w" + std::to_string(i); };
  std::vector<int> pivot_positions;
  {
    int pos = 0;
    for (int i = 1; i <= k; ++i) {
      pivot_positions.push_back(pos);  // block-start pivot world
      pos += 1 + (2 * i + 1);
    }
    pivot_positions.push_back(pos);
    pivot_positions.push_back(pos + 1);
    pivot_positions.push_back(pos + 2);
    if (pos + 3 != total) throw std::logic_error("build_gadget_ktb: world count mismatch");
  }
  for (int i = 0; i < total; ++i) m.set_domain(name(i), domain);
  Frame base;
  base.worlds = m.frame().worlds;
  for (int i = 0; i + 1 < total; ++i) base.add_edge(name(i), name(i + 1));
  m.frame() = closure(base, ClosureKind::ReflexiveSymmetric);
  for (int pos : pivot_positions) m.set_true(name(pos), "P", {pivot});
  return m;
}

inline Model build_gadget(int k, Track track, const Individual& pivot,
                          const std::set<Individual>& domain) {
  return track == Track::KTB ? build_gadget_ktb(k, pivot, domain)
                             : build_gadget_gl(k, pivot, domain);
}

inline WorldId gadget_root(Track track) {
  (void)track;
  return "w0";
}

// ---------------------------------------------------------------------------
// attach_gadgets: the model surgery M*.
//
// For every host world w and every k in 1..n+1, one copy of the level-k
// gadget is appended and its root wired from w; copy worlds are named
// "<host>:<k>:<gadget world>".  Copy domains equal D(w).  The single letter
// P holds of an individual c at a pivot position of copy (w,k) exactly when
// P_k(c) holds at w in the input.  After wiring, the relation is closed per
// track: nothing for K, transitive for GL, reflexive-transitive for Grz,
// reflexive-symmetric for KTB.
inline Model attach_gadgets(const Model& host, const ReductionContext& ctx) {
  if (host.mode != Mode::Modal)
    throw std::invalid_argument("attach_gadgets: host must be a modal model");
  switch (ctx.track) {
    case Track::K:
      break;
    case Track::GL:
      if (!host.frame().transitive() || !host.frame().strict_acyclic() ||
          !host.frame().irreflexive())
        throw std::invalid_argument("attach_gadgets: host frame is not a GL frame");
      break;
    case Track::Grz:
      if (!host.frame().reflexive() || !host.frame().transitive() ||
          !host.frame().antisymmetric())
        throw std::invalid_argument("attach_gadgets: host frame is not a Grz frame");
      break;
    case Track::KTB:
      if (!host.frame().reflexive() || !host.frame().symmetric())
        throw std::invalid_argument("attach_gadgets: host frame is not a KTB frame");
      break;
  }
  // The guard letter must hold of every individual at every world.
  {
    Evaluator ev(host);
    FormulaPtr b = build_b(ctx);
    for (const auto& w : host.frame().worlds)
      if (!ev.sat_at(w, b))
        throw std::invalid_argument("attach_gadgets: host does not globally satisfy B at " + w);
  }

  Model out;
  out.mode = Mode::Modal;
  Frame base;
  for (const auto& w : host.frame().worlds) {
    base.add_world(w);
    out.pf.domains[w] = host.domain(w);
  }
  for (const auto& e : host.frame().relation) base.relation.insert(e);
  // Host letters are replaced by the single target letter; host worlds
  // interpret it as empty.

  for (const auto& w : host.frame().worlds) {
    const auto& dom = host.domain(w);
    for (std::size_t k = 1; k <= ctx.n() + 1; ++k) {
      // Build one gadget skeleton to copy names and pivot positions from.
      // The pivot argument is irrelevant here; we re-derive P per individual.
      Model skeleton = build_gadget(static_cast<int>(k), ctx.track, *dom.begin(), dom);
      auto copy_name = [&](const WorldId& u) {
        return w + ":" + std::to_string(k) + ":" + u;
      };
      for (const auto& u : skeleton.frame().worlds) {
        base.add_world(copy_name(u));
        out.pf.domains[copy_name(u)] = dom;
      }
      // Internal edges only; the per-track closure is reapplied at the end.
      for (const auto& [a, b2] : skeleton.frame().relation)
        base.add_edge(copy_name(a), copy_name(b2));
      base.add_edge(w, copy_name(gadget_root(ctx.track)));
      // P at pivot positions of copy (w,k) tracks P_k at w.  Pivot positions
      // are exactly the worlds where the skeleton makes its own pivot true.
      const std::string& pk = ctx.letter(k);
      for (const auto& u : skeleton.frame().worlds) {
        if (!skeleton.holds(u, "P", {*dom.begin()})) continue;
        for (const auto& c : dom)
          if (host.holds(w, pk, {c})) out.set_true(copy_name(u), ctx.target, {c});
      }
    }
  }

  switch (ctx.track) {
    case Track::K: out.pf.frame.relation = base.relation; out.pf.frame.worlds = base.worlds; break;
    case Track::GL: out.pf.frame = closure(base, ClosureKind::Transitive); break;
    case Track::Grz: out.pf.frame = closure(base, ClosureKind::ReflexiveTransitive); break;
    case Track::KTB: out.pf.frame = closure(base, ClosureKind::ReflexiveSymmetric); break;
  }
  return out;
}

}  // namespace kripke
