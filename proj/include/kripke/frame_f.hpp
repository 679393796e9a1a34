#pragma once

// The layered addressing frame used by the intuitionistic single-letter
// reduction: three explicit top levels, then inductively defined levels
// where world m of level k+1 covers a fixed triple of level-k worlds
// determined by the pair (i,j) encoded by m.  A one-free-variable formula is
// attached to every world; on a suitably interpreted model each formula
// fails (with the pivot assigned) exactly at the worlds that see its world.
//
// Two variants: the reflexive one, and an irreflexive one where every world
// gets a terminal "double" that stands in for the missing reflexive point.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kripke/formula.hpp"
#include "kripke/frame.hpp"
#include "kripke/model.hpp"

namespace kripke {

enum class FKind : char { A = 'a', B = 'b', D = 'd' };

struct LevelIndex {
  int level;   // -1 means the top level (d-worlds)
  FKind kind;  // D only at the top
  int index;   // 1-based

  static constexpr int kTop = -1;
};

// Width of one kind (a or b) at the given level; the top level has three
// d-worlds.  Widths grow doubly exponentially, so they saturate at a cap
// well above any index this artifact ever uses.
inline long long level_width(int level) {
  constexpr long long cap = 1'000'000'000;
  if (level == LevelIndex::kTop) return 3;
  if (level == 0) return 2;
  if (level == 1) return 3;
  long long w = 3;  // level 1
  for (int k = 2; k <= level; ++k) {
    w = (w - 1) * (w - 1);
    if (w > cap) return cap;
  }
  return w;
}

inline void check_level_index(const LevelIndex& idx) {
  if (idx.level == LevelIndex::kTop) {
    if (idx.kind != FKind::D) throw std::invalid_argument("level index: top level holds d-worlds");
    if (idx.index < 1 || idx.index > 3) throw std::invalid_argument("level index: d index out of range");
    return;
  }
  if (idx.level < 0) throw std::invalid_argument("level index: negative level");
  if (idx.kind == FKind::D) throw std::invalid_argument("level index: d only at the top level");
  if (idx.index < 1 || static_cast<long long>(idx.index) > level_width(idx.level))
    throw std::invalid_argument("level index: index out of range for level " +
                                std::to_string(idx.level));
}

inline WorldId frame_f_world(const LevelIndex& idx) {
  check_level_index(idx);
  if (idx.level == LevelIndex::kTop) return "d" + std::to_string(idx.index);
  return std::string(1, static_cast<char>(idx.kind)) + std::to_string(idx.level) + "_" +
         std::to_string(idx.index);
}

enum class FrameFVariant { Int, Qfl };

struct FrameF {
  int depth = 1;
  FrameFVariant variant = FrameFVariant::Int;
  Frame frame;                                      // closed per variant
  std::set<std::pair<WorldId, WorldId>> covering;   // pre-closure edges
  std::vector<WorldId> originals;                   // undoubled worlds
};

namespace detail {

// Pair (i,j) with i,j in {2..n_k} encoded lexicographically as m = 1,2,...
inline std::pair<long long, long long> unpair(long long m, long long prev_width) {
  long long span = prev_width - 1;  // choices per coordinate
  long long z = m - 1;
  return {2 + z / span, 2 + z % span};
}

}  // namespace detail

inline FrameF build_frame_f(int depth, FrameFVariant variant) {
  if (depth < 1) throw std::invalid_argument("build_frame_f: depth must be >= 1");
  FrameF out;
  out.depth = depth;
  out.variant = variant;

  auto aw = [](int level, int m) { return frame_f_world({level, FKind::A, m}); };
  auto bw = [](int level, int m) { return frame_f_world({level, FKind::B, m}); };
  auto dw = [](int m) { return frame_f_world({LevelIndex::kTop, FKind::D, m}); };

  Frame base;
  auto edge = [&](const WorldId& from, const WorldId& to) {
    base.add_edge(from, to);
    out.covering.emplace(from, to);
  };
  for (int m = 1; m <= 3; ++m) base.add_world(dw(m));
  for (int m = 1; m <= 2; ++m) { base.add_world(aw(0, m)); base.add_world(bw(0, m)); }
  for (int m = 1; m <= 3; ++m) { base.add_world(aw(1, m)); base.add_world(bw(1, m)); }
  for (int k = 2; k <= depth; ++k)
    for (int m = 1; static_cast<long long>(m) <= level_width(k); ++m) {
      base.add_world(aw(k, m));
      base.add_world(bw(k, m));
    }

  // Level 0 to the top.
  edge(aw(0, 1), dw(1)); edge(aw(0, 1), dw(3));
  edge(aw(0, 2), dw(1)); edge(aw(0, 2), dw(2));
  edge(bw(0, 1), dw(2)); edge(bw(0, 1), dw(3));
  edge(bw(0, 2), dw(1)); edge(bw(0, 2), dw(2)); edge(bw(0, 2), dw(3));
  // Level 1 to level 0.
  edge(aw(1, 1), bw(0, 1)); edge(aw(1, 1), bw(0, 2));
  edge(aw(1, 2), aw(0, 2)); edge(aw(1, 2), bw(0, 2));
  edge(aw(1, 3), aw(0, 2)); edge(aw(1, 3), bw(0, 1));
  edge(bw(1, 1), aw(0, 1)); edge(bw(1, 1), bw(0, 2));
  edge(bw(1, 2), aw(0, 1)); edge(bw(1, 2), bw(0, 1));
  edge(bw(1, 3), aw(0, 1)); edge(bw(1, 3), aw(0, 2));
  // Inductive levels.
  for (int k = 2; k <= depth; ++k) {
    long long prev = level_width(k - 1);
    for (int m = 1; static_cast<long long>(m) <= level_width(k); ++m) {
      auto [i, j] = detail::unpair(m, prev);
      int ii = static_cast<int>(i), jj = static_cast<int>(j);
      edge(aw(k, m), bw(k - 1, 1)); edge(aw(k, m), aw(k - 1, ii)); edge(aw(k, m), bw(k - 1, jj));
      edge(bw(k, m), aw(k - 1, 1)); edge(bw(k, m), aw(k - 1, ii)); edge(bw(k, m), bw(k - 1, jj));
    }
  }

  out.originals = base.worlds;

  if (variant == FrameFVariant::Int) {
    out.frame = closure(base, ClosureKind::ReflexiveTransitive);
    return out;
  }

  // Irreflexive variant: doubles for d2, d3 and for every a/b world (d1 is
  // not doubled).  Each double inherits its original's covering out-edges,
  // so it stands in for the missing reflexive point; the doubles of d2 and
  // d3 are terminal because their originals cover nothing.
  auto dbl = [](const WorldId& w) { return w + "'"; };
  const auto original_covering = out.covering;
  std::vector<WorldId> doubled{dw(2), dw(3)};
  for (int m = 1; m <= 2; ++m) { doubled.push_back(aw(0, m)); doubled.push_back(bw(0, m)); }
  for (int k = 1; k <= depth; ++k)
    for (int m = 1; static_cast<long long>(m) <= level_width(k); ++m) {
      doubled.push_back(aw(k, m));
      doubled.push_back(bw(k, m));
    }
  for (const auto& w : doubled) {
    edge(w, dbl(w));
    for (const auto& [from, to] : original_covering)
      if (from == w) edge(dbl(w), to);
  }
  out.frame = closure(base, ClosureKind::Transitive);
  return out;
}

// The interpretation making the frame's formulas address its worlds: with a
// pivot a and a partner b, P holds of everyone but a at d2, of a and b at
// d3, of b alone at the level-0 first b-world, and nowhere else.  In the
// irreflexive variant doubles copy their original's P-set.
inline Model a_suitable_f(const FrameF& fr, const std::set<Individual>& Z, const Individual& a,
                          const Individual& b) {
  if (Z.size() < 3) throw std::invalid_argument("a_suitable_f: domain must have >= 3 individuals");
  if (a == b || !Z.count(a) || !Z.count(b))
    throw std::invalid_argument("a_suitable_f: pivot and partner must be distinct domain members");
  Model m;
  m.mode = fr.variant == FrameFVariant::Int ? Mode::Intuitionistic : Mode::Visser;
  m.pf.constant_domains = true;
  m.pf.frame = fr.frame;
  for (const auto& w : fr.frame.worlds) m.pf.domains[w] = Z;
  auto set_for = [&](const WorldId& w, const std::set<Individual>& s) {
    for (const auto& c : s) m.set_true(w, "P", {c});
    if (fr.variant == FrameFVariant::Qfl) {
      WorldId d = w + "'";
      if (fr.frame.has_world(d))
        for (const auto& c : s) m.set_true(d, "P", {c});
    }
  };
  std::set<Individual> all_but_a = Z;
  all_but_a.erase(a);
  set_for("d2", all_but_a);
  set_for("d3", {a, b});
  set_for(frame_f_world({0, FKind::B, 1}), {b});
  return m;
}

// The world formulas.  Explicit tables for the top three levels, then
// A_m^{k+1} = A_1^k -> B_1^k | A_i^k | B_j^k and
// B_m^{k+1} = B_1^k -> A_1^k | A_i^k | B_j^k.
inline FormulaPtr level_formula(const LevelIndex& idx, const Variable& v) {
  check_level_index(idx);
  std::map<std::string, FormulaPtr> memo;
  auto key = [](const LevelIndex& i) {
    return std::string(1, static_cast<char>(i.kind)) + std::to_string(i.level) + "_" +
           std::to_string(i.index);
  };
  auto go = [&](auto&& self, const LevelIndex& i) -> FormulaPtr {
    auto it = memo.find(key(i));
    if (it != memo.end()) return it->second;
    FormulaPtr out;
    FormulaPtr pv = atom("P", {v});
    auto D = [&](int m) { return self(self, LevelIndex{LevelIndex::kTop, FKind::D, m}); };
    auto A = [&](int lv, int m) { return self(self, LevelIndex{lv, FKind::A, m}); };
    auto B = [&](int lv, int m) { return self(self, LevelIndex{lv, FKind::B, m}); };
    if (i.level == LevelIndex::kTop) {
      if (i.index == 1) out = exists(v, pv);
      else if (i.index == 2) out = imp(exists(v, pv), pv);
      else out = imp(pv, forall(v, pv));
    } else if (i.level == 0) {
      if (i.kind == FKind::A && i.index == 1) out = imp(D(2), disj(D(1), D(3)));
      else if (i.kind == FKind::A && i.index == 2) out = imp(D(3), disj(D(1), D(2)));
      else if (i.kind == FKind::B && i.index == 1) out = imp(D(1), disj(D(2), D(3)));
      else out = imp(conj(A(0, 1), conj(A(0, 2), B(0, 1))), disj(D(1), disj(D(2), D(3))));
    } else if (i.level == 1) {
      if (i.kind == FKind::A) {
        if (i.index == 1) out = imp(conj(A(0, 1), A(0, 2)), disj(B(0, 1), B(0, 2)));
        else if (i.index == 2) out = imp(conj(A(0, 1), B(0, 1)), disj(A(0, 2), B(0, 2)));
        else out = imp(conj(A(0, 1), B(0, 2)), disj(A(0, 2), B(0, 1)));
      } else {
        if (i.index == 1) out = imp(conj(A(0, 2), B(0, 1)), disj(A(0, 1), B(0, 2)));
        else if (i.index == 2) out = imp(conj(A(0, 2), B(0, 2)), disj(A(0, 1), B(0, 1)));
        else out = imp(conj(B(0, 1), B(0, 2)), disj(A(0, 1), A(0, 2)));
      }
    } else {
      auto [pi, pj] = detail::unpair(i.index, level_width(i.level - 1));
      int ii = static_cast<int>(pi), jj = static_cast<int>(pj);
      int k = i.level - 1;
      if (i.kind == FKind::A)
        out = imp(A(k, 1), disj(B(k, 1), disj(A(k, ii), B(k, jj))));
      else
        out = imp(B(k, 1), disj(A(k, 1), disj(A(k, ii), B(k, jj))));
    }
    memo.emplace(key(i), out);
    return out;
  };
  return go(go, idx);
}

// alpha_i(x) = A_i^n(x) | B_i^n(x), the substitution template for P_i.
inline FormulaPtr alpha_int(int i, int n, const Variable& v) {
  if (n < 2) throw std::invalid_argument("alpha_int: n must be >= 2");
  if (i < 1 || static_cast<long long>(i) > level_width(n))
    throw std::invalid_argument("alpha_int: index out of range");
  return disj(level_formula({n, FKind::A, i}, v), level_formula({n, FKind::B, i}, v));
}

}  // namespace kripke
