#pragma once

// Exhaustive pointwise comparison of intuitionistic (or Visser) truth with
// modal truth of the Goedel translation, over every formula up to a node
// bound and every valid model up to small world/individual bounds.
//
// Enumerating formulas one by one is hopeless (millions at 8 nodes), so the
// suite closes, per model, the set of reachable denotation keys under all
// connectives.  A key carries the source-side denotation, the denotation of
// the translation, and the extra state that keeps the translation and block
// quantification compositional.  Two formulas with equal keys are
// indistinguishable under every connective, so checking each reachable key
// once covers every formula; closing to a fixpoint covers all node counts,
// in particular everything below the requested cap.  The first
// representatives are cross-checked against the production evaluator, so
// the transformer algebra cannot drift from the real semantics.  Models are
// enumerated one per isomorphism class; the compared property is invariant
// under renaming worlds and individuals.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kripke/eval.hpp"
#include "kripke/int_reduction.hpp"
#include "kripke/model.hpp"

namespace kripke {

namespace godel_detail {

// Denotation = bitset over slots (w, gx, gy); slot = w*p*p + gy*p + gx.
using Den = std::uint32_t;

struct ModelCtx {
  int nw = 0, p = 0;
  std::vector<std::vector<int>> succ;
  std::vector<std::uint32_t> dom;
  Den valid = 0;
  Den atom_x = 0, atom_y = 0;

  int slot(int w, int gx, int gy) const { return w * p * p + gy * p + gx; }
  bool bit(Den d, int w, int gx, int gy) const { return (d >> slot(w, gx, gy)) & 1; }

  static ModelCtx from_model(const Model& m) {
    ModelCtx c;
    c.nw = static_cast<int>(m.frame().worlds.size());
    std::set<Individual> pool;
    for (const auto& [w, d] : m.pf.domains) pool.insert(d.begin(), d.end());
    std::vector<Individual> inds(pool.begin(), pool.end());
    c.p = static_cast<int>(inds.size());
    c.succ.resize(static_cast<std::size_t>(c.nw));
    const auto& worlds = m.frame().worlds;
    auto windex = [&](const WorldId& w) {
      for (int i = 0; i < c.nw; ++i)
        if (worlds[static_cast<std::size_t>(i)] == w) return i;
      return -1;
    };
    for (const auto& [a, b] : m.frame().relation)
      c.succ[static_cast<std::size_t>(windex(a))].push_back(windex(b));
    c.dom.assign(static_cast<std::size_t>(c.nw), 0);
    for (int w = 0; w < c.nw; ++w)
      for (int x = 0; x < c.p; ++x)
        if (m.domain(worlds[static_cast<std::size_t>(w)]).count(inds[static_cast<std::size_t>(x)]))
          c.dom[static_cast<std::size_t>(w)] |= 1u << x;
    for (int w = 0; w < c.nw; ++w)
      for (int gx = 0; gx < c.p; ++gx)
        for (int gy = 0; gy < c.p; ++gy) {
          if (!((c.dom[static_cast<std::size_t>(w)] >> gx) & 1)) continue;
          if (!((c.dom[static_cast<std::size_t>(w)] >> gy) & 1)) continue;
          c.valid |= 1u << c.slot(w, gx, gy);
          if (m.holds(worlds[static_cast<std::size_t>(w)], "P", {inds[static_cast<std::size_t>(gx)]}))
            c.atom_x |= 1u << c.slot(w, gx, gy);
          if (m.holds(worlds[static_cast<std::size_t>(w)], "P", {inds[static_cast<std::size_t>(gy)]}))
            c.atom_y |= 1u << c.slot(w, gx, gy);
        }
    return c;
  }

  Den modal_box(Den d) const {
    Den out = 0;
    for (int w = 0; w < nw; ++w)
      for (int gx = 0; gx < p; ++gx)
        for (int gy = 0; gy < p; ++gy) {
          if (!bit(valid, w, gx, gy)) continue;
          bool ok = true;
          for (int w2 : succ[static_cast<std::size_t>(w)])
            if (!bit(d, w2, gx, gy)) { ok = false; break; }
          if (ok) out |= 1u << slot(w, gx, gy);
        }
    return out;
  }

  Den source_imp(Den a, Den b) const {
    Den out = 0;
    for (int w = 0; w < nw; ++w)
      for (int gx = 0; gx < p; ++gx)
        for (int gy = 0; gy < p; ++gy) {
          if (!bit(valid, w, gx, gy)) continue;
          bool ok = true;
          for (int w2 : succ[static_cast<std::size_t>(w)])
            if (bit(a, w2, gx, gy) && !bit(b, w2, gx, gy)) { ok = false; break; }
          if (ok) out |= 1u << slot(w, gx, gy);
        }
    return out;
  }

  Den exists_var(Den d, bool on_x) const {
    Den out = 0;
    for (int w = 0; w < nw; ++w)
      for (int gx = 0; gx < p; ++gx)
        for (int gy = 0; gy < p; ++gy) {
          if (!bit(valid, w, gx, gy)) continue;
          for (int v = 0; v < p; ++v) {
            if (!((dom[static_cast<std::size_t>(w)] >> v) & 1)) continue;
            if (bit(d, w, on_x ? v : gx, on_x ? gy : v)) {
              out |= 1u << slot(w, gx, gy);
              break;
            }
          }
        }
    return out;
  }

  Den modal_forall(Den d, bool on_x) const {
    Den out = 0;
    for (int w = 0; w < nw; ++w)
      for (int gx = 0; gx < p; ++gx)
        for (int gy = 0; gy < p; ++gy) {
          if (!bit(valid, w, gx, gy)) continue;
          bool ok = true;
          for (int v = 0; v < p; ++v) {
            if (!((dom[static_cast<std::size_t>(w)] >> v) & 1)) continue;
            if (!bit(d, w, on_x ? v : gx, on_x ? gy : v)) { ok = false; break; }
          }
          if (ok) out |= 1u << slot(w, gx, gy);
        }
    return out;
  }

  // Universal block over successors; vars bit 0 = x, bit 1 = y.
  Den source_block(Den body, int vars) const {
    Den out = 0;
    for (int w = 0; w < nw; ++w)
      for (int gx = 0; gx < p; ++gx)
        for (int gy = 0; gy < p; ++gy) {
          if (!bit(valid, w, gx, gy)) continue;
          bool ok = true;
          for (int w2 : succ[static_cast<std::size_t>(w)]) {
            for (int vx = 0; vx < p && ok; ++vx) {
              if (vars & 1) {
                if (!((dom[static_cast<std::size_t>(w2)] >> vx) & 1)) continue;
              } else if (vx != gx) {
                continue;
              }
              for (int vy = 0; vy < p; ++vy) {
                if (vars & 2) {
                  if (!((dom[static_cast<std::size_t>(w2)] >> vy) & 1)) continue;
                } else if (vy != gy) {
                  continue;
                }
                if (!bit(body, w2, vx, vy)) { ok = false; break; }
              }
            }
            if (!ok) break;
          }
          if (ok) out |= 1u << slot(w, gx, gy);
        }
    return out;
  }
};

struct Key {
  Den d_src = 0;       // source-side denotation of f
  Den d_tr = 0;        // modal denotation of the translation of f
  bool head_forall = false;
  Den d_tr_tail = 0;   // unboxed universal tail of the translation
  Den d_src_body = 0;  // source denotation of the block body
  int block_vars = 0;  // bit 0 = x, bit 1 = y

  auto tie() const {
    return std::tuple(d_src, d_tr, head_forall, d_tr_tail, d_src_body, block_vars);
  }
  bool operator<(const Key& o) const { return tie() < o.tie(); }
};

struct Entry {
  Key key;
  FormulaPtr repr;
};

// Canonicality of (relation, domains, interpretation) under simultaneous
// world and individual renaming.
inline bool canonical_model_code(std::uint64_t rel, const std::vector<std::uint32_t>& dom,
                                 const std::vector<std::uint32_t>& interp, int nw, int p) {
  auto encode = [&](const std::vector<int>& wp, const std::vector<int>& ip) {
    std::uint64_t r2 = 0;
    std::vector<std::uint32_t> d2(static_cast<std::size_t>(nw)), i2(static_cast<std::size_t>(nw));
    for (int a = 0; a < nw; ++a)
      for (int b = 0; b < nw; ++b)
        if ((rel >> (a * nw + b)) & 1)
          r2 |= 1ull << (wp[static_cast<std::size_t>(a)] * nw + wp[static_cast<std::size_t>(b)]);
    for (int a = 0; a < nw; ++a) {
      std::uint32_t dm = 0, im = 0;
      for (int x = 0; x < p; ++x) {
        if ((dom[static_cast<std::size_t>(a)] >> x) & 1) dm |= 1u << ip[static_cast<std::size_t>(x)];
        if ((interp[static_cast<std::size_t>(a)] >> x) & 1) im |= 1u << ip[static_cast<std::size_t>(x)];
      }
      d2[static_cast<std::size_t>(wp[static_cast<std::size_t>(a)])] = dm;
      i2[static_cast<std::size_t>(wp[static_cast<std::size_t>(a)])] = im;
    }
    return std::tuple(r2, d2, i2);
  };
  std::vector<int> wid(static_cast<std::size_t>(nw)), iid(static_cast<std::size_t>(p));
  for (int i = 0; i < nw; ++i) wid[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < p; ++i) iid[static_cast<std::size_t>(i)] = i;
  auto self_code = encode(wid, iid);
  std::vector<int> wp = wid;
  do {
    std::vector<int> ip = iid;
    do {
      if (encode(wp, ip) < self_code) return false;
    } while (std::next_permutation(ip.begin(), ip.end()));
  } while (std::next_permutation(wp.begin(), wp.end()));
  return true;
}

}  // namespace godel_detail

struct GodelCheckResult {
  long long models = 0;
  long long keys = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> cross_fails;
  std::vector<std::string> monotonicity_fails;

  bool ok() const {
    return mismatches.empty() && cross_fails.empty() && monotonicity_fails.empty();
  }
};

inline void godel_check_model(const Model& m, Mode source_mode, GodelCheckResult& res,
                              int max_keys = 20000, int cross_check_limit = 10) {
  using namespace godel_detail;
  ModelCtx c = ModelCtx::from_model(m);
  const Den valid = c.valid;
  Variable x{"x"}, y{"y"};

  auto leaf = [&](Den src, Den tr, FormulaPtr f) {
    Entry e;
    e.key.d_src = src & valid;
    e.key.d_tr = tr & valid;
    e.key.d_tr_tail = e.key.d_tr;
    e.key.d_src_body = e.key.d_src;
    e.repr = std::move(f);
    return e;
  };

  std::vector<Entry> entries;
  std::set<Key> seen;
  auto add = [&](Entry e) {
    if (seen.insert(e.key).second) entries.push_back(std::move(e));
  };

  add(leaf(c.atom_x, c.atom_x & c.modal_box(c.atom_x), atom("P", {x})));
  add(leaf(c.atom_y, c.atom_y & c.modal_box(c.atom_y), atom("P", {y})));
  add(leaf(0, 0, bot()));
  add(leaf(valid, valid, top()));

  auto combine_binary = [&](Op op, const Entry& a, const Entry& b) {
    Entry e;
    switch (op) {
      case Op::And:
        e.key.d_src = a.key.d_src & b.key.d_src;
        e.key.d_tr = a.key.d_tr & b.key.d_tr;
        break;
      case Op::Or:
        e.key.d_src = a.key.d_src | b.key.d_src;
        e.key.d_tr = a.key.d_tr | b.key.d_tr;
        break;
      default:
        e.key.d_src = c.source_imp(a.key.d_src, b.key.d_src);
        e.key.d_tr = c.modal_box((~a.key.d_tr | b.key.d_tr) & valid);
        break;
    }
    e.key.d_src &= valid;
    e.key.d_tr &= valid;
    e.key.d_tr_tail = e.key.d_tr;
    e.key.d_src_body = e.key.d_src;
    e.repr = binary(op, a.repr, b.repr);
    return e;
  };

  auto combine_neg = [&](const Entry& a) {
    Entry e;
    e.key.d_src = c.source_imp(a.key.d_src, 0);
    e.key.d_tr = c.modal_box((~a.key.d_tr) & valid);
    e.key.d_tr_tail = e.key.d_tr;
    e.key.d_src_body = e.key.d_src;
    e.repr = neg(a.repr);
    return e;
  };

  auto combine_exists = [&](const Entry& a, bool on_x) {
    Entry e;
    e.key.d_src = c.exists_var(a.key.d_src, on_x);
    e.key.d_tr = c.exists_var(a.key.d_tr, on_x);
    e.key.d_tr_tail = e.key.d_tr;
    e.key.d_src_body = e.key.d_src;
    e.repr = exists(on_x ? x : y, a.repr);
    return e;
  };

  auto combine_forall = [&](const Entry& a, bool on_x) {
    Entry e;
    int var_bit = on_x ? 1 : 2;
    if (source_mode == Mode::Visser) {
      Den body = a.key.head_forall ? a.key.d_src_body : a.key.d_src;
      int vars = (a.key.head_forall ? a.key.block_vars : 0) | var_bit;
      e.key.d_src = c.source_block(body, vars);
      e.key.d_src_body = body;
      e.key.block_vars = vars;
    } else {
      e.key.d_src = c.source_block(a.key.d_src, var_bit);
      e.key.d_src_body = a.key.d_src;
      e.key.block_vars = var_bit;
    }
    Den tail = a.key.head_forall ? a.key.d_tr_tail : a.key.d_tr;
    e.key.d_tr_tail = c.modal_forall(tail, on_x);
    e.key.d_tr = c.modal_box(e.key.d_tr_tail);
    e.key.head_forall = true;
    e.repr = forall(on_x ? x : y, a.repr);
    return e;
  };

  std::size_t processed = 0;
  bool truncated = false;
  while (processed < entries.size()) {
    if (static_cast<int>(entries.size()) > max_keys) {
      truncated = true;
      break;
    }
    Entry e = entries[processed];
    add(combine_neg(e));
    add(combine_exists(e, true));
    add(combine_exists(e, false));
    add(combine_forall(e, true));
    add(combine_forall(e, false));
    for (std::size_t j = 0; j <= processed; ++j) {
      Entry other = entries[j];
      for (Op op : {Op::And, Op::Or, Op::Imp}) {
        add(combine_binary(op, e, other));
        add(combine_binary(op, other, e));
      }
    }
    ++processed;
  }
  if (truncated) res.mismatches.push_back("key budget exceeded; closure incomplete");

  ++res.models;
  res.keys += static_cast<long long>(entries.size());

  for (const auto& e : entries) {
    if (e.key.d_src != e.key.d_tr && static_cast<int>(res.mismatches.size()) < 20)
      res.mismatches.push_back("translation differs on: " + print(e.repr));
    for (int w = 0; w < c.nw && static_cast<int>(res.monotonicity_fails.size()) < 20; ++w)
      for (int w2 : c.succ[static_cast<std::size_t>(w)])
        for (int gx = 0; gx < c.p; ++gx)
          for (int gy = 0; gy < c.p; ++gy)
            if (c.bit(valid, w, gx, gy) && c.bit(e.key.d_src, w, gx, gy) &&
                !c.bit(e.key.d_src, w2, gx, gy)) {
              res.monotonicity_fails.push_back("truth not persistent on: " + print(e.repr));
              break;
            }
  }

  std::set<Individual> pool;
  for (const auto& [w, d] : m.pf.domains) pool.insert(d.begin(), d.end());
  std::vector<Individual> inds(pool.begin(), pool.end());
  Evaluator source_ev(m, source_mode);
  Evaluator modal_ev(m, Mode::Modal);
  int checked = 0;
  for (const auto& e : entries) {
    if (checked++ >= cross_check_limit) break;
    FormulaPtr tf = godel_translate(e.repr);
    for (int w = 0; w < c.nw; ++w)
      for (int gx = 0; gx < c.p; ++gx)
        for (int gy = 0; gy < c.p; ++gy) {
          if (!c.bit(valid, w, gx, gy)) continue;
          Assignment g{{x, inds[static_cast<std::size_t>(gx)]},
                       {y, inds[static_cast<std::size_t>(gy)]}};
          const WorldId& wn = m.frame().worlds[static_cast<std::size_t>(w)];
          bool si = source_ev.eval(wn, g, e.repr);
          bool st = modal_ev.eval(wn, g, tf);
          if ((si != c.bit(e.key.d_src, w, gx, gy) || st != c.bit(e.key.d_tr, w, gx, gy)) &&
              static_cast<int>(res.cross_fails.size()) < 20)
            res.cross_fails.push_back("transformer/evaluator disagreement on: " + print(e.repr));
        }
  }
}

// Enumerates valid models with the given source mode (one per isomorphism
// class) and runs the closure check on each.
inline GodelCheckResult godel_check_all(Mode source_mode, int max_worlds, int max_inds) {
  using namespace godel_detail;
  GodelCheckResult res;
  for (int nw = 1; nw <= max_worlds; ++nw) {
    const std::uint64_t rel_bound = 1ull << (nw * nw);
    for (std::uint64_t rel = 0; rel < rel_bound; ++rel) {
      auto edge = [&](int a, int b) { return (rel >> (a * nw + b)) & 1; };
      bool ok = true;
      for (int i = 0; i < nw && ok; ++i) {
        if (source_mode == Mode::Intuitionistic && !edge(i, i)) ok = false;
        for (int j = 0; j < nw && ok; ++j) {
          if (i != j && edge(i, j) && edge(j, i)) ok = false;
          for (int k = 0; k < nw && ok; ++k)
            if (edge(i, j) && edge(j, k) && !edge(i, k)) ok = false;
        }
      }
      if (!ok) continue;
      for (int p = 1; p <= max_inds; ++p) {
        const std::uint32_t full = (1u << p) - 1;
        std::vector<std::uint32_t> dom(static_cast<std::size_t>(nw), 0);
        std::vector<std::uint32_t> interp(static_cast<std::size_t>(nw), 0);
        auto emit = [&] {
          if (!canonical_model_code(rel, dom, interp, nw, p)) return;
          Model m;
          m.mode = source_mode;
          auto wname = [](int i) { return "w" + std::to_string(i); };
          auto iname = [](int i) { return "a" + std::to_string(i); };
          for (int a = 0; a < nw; ++a) {
            std::set<Individual> d;
            for (int xx = 0; xx < p; ++xx)
              if ((dom[static_cast<std::size_t>(a)] >> xx) & 1) d.insert(iname(xx));
            m.set_domain(wname(a), std::move(d));
          }
          for (int a = 0; a < nw; ++a)
            for (int b = 0; b < nw; ++b)
              if (edge(a, b)) m.frame().add_edge(wname(a), wname(b));
          for (int a = 0; a < nw; ++a)
            for (int xx = 0; xx < p; ++xx)
              if ((interp[static_cast<std::size_t>(a)] >> xx) & 1)
                m.set_true(wname(a), "P", {iname(xx)});
          godel_check_model(m, source_mode, res);
        };
        auto rec_int = [&](auto&& self, int w) -> void {
          if (w == nw) {
            for (int a = 0; a < nw; ++a)
              for (int b = 0; b < nw; ++b)
                if (a != b && edge(a, b) &&
                    (interp[static_cast<std::size_t>(a)] & ~interp[static_cast<std::size_t>(b)]))
                  return;
            emit();
            return;
          }
          std::uint32_t d = dom[static_cast<std::size_t>(w)];
          for (std::uint32_t s = 0;; s = (s - d) & d) {
            interp[static_cast<std::size_t>(w)] = s;
            self(self, w + 1);
            if (s == d) break;
          }
        };
        auto rec_dom = [&](auto&& self, int w) -> void {
          if (w == nw) {
            for (int a = 0; a < nw; ++a)
              for (int b = 0; b < nw; ++b)
                if (edge(a, b) &&
                    (dom[static_cast<std::size_t>(a)] & ~dom[static_cast<std::size_t>(b)]))
                  return;
            std::uint32_t used = 0;
            for (int a = 0; a < nw; ++a) used |= dom[static_cast<std::size_t>(a)];
            if (used != full) return;  // smaller pools are covered by smaller p
            rec_int(rec_int, 0);
            return;
          }
          for (std::uint32_t s = 1; s <= full; ++s) {
            dom[static_cast<std::size_t>(w)] = s;
            self(self, w + 1);
          }
        };
        rec_dom(rec_dom, 0);
      }
    }
  }
  return res;
}

}  // namespace kripke
