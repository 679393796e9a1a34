#pragma once

// Finite Kripke frames over string world identifiers, frame property
// predicates, and relation closures.  Properties are computed, never assumed.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kripke {

using WorldId = std::string;

struct Frame {
  std::vector<WorldId> worlds;  // kept sorted and unique
  std::set<std::pair<WorldId, WorldId>> relation;

  void add_world(const WorldId& w) {
    auto it = std::lower_bound(worlds.begin(), worlds.end(), w);
    if (it == worlds.end() || *it != w) worlds.insert(it, w);
  }

  bool has_world(const WorldId& w) const {
    return std::binary_search(worlds.begin(), worlds.end(), w);
  }

  void add_edge(const WorldId& a, const WorldId& b) {
    add_world(a);
    add_world(b);
    relation.emplace(a, b);
  }

  bool rel(const WorldId& a, const WorldId& b) const {
    return relation.count({a, b}) > 0;
  }

  bool reflexive() const {
    for (const auto& w : worlds)
      if (!rel(w, w)) return false;
    return true;
  }

  bool irreflexive() const {
    for (const auto& w : worlds)
      if (rel(w, w)) return false;
    return true;
  }

  bool symmetric() const {
    for (const auto& [a, b] : relation)
      if (!rel(b, a)) return false;
    return true;
  }

  bool antisymmetric() const {
    for (const auto& [a, b] : relation)
      if (a != b && rel(b, a)) return false;
    return true;
  }

  bool transitive() const {
    for (const auto& [a, b] : relation)
      for (const auto& [c, d] : relation)
        if (b == c && !rel(a, d)) return false;
    return true;
  }

  bool convergent() const {
    for (const auto& w : worlds)
      for (const auto& v1 : worlds) {
        if (!rel(w, v1)) continue;
        for (const auto& v2 : worlds) {
          if (!rel(w, v2)) continue;
          bool ok = false;
          for (const auto& u : worlds)
            if (rel(v1, u) && rel(v2, u)) { ok = true; break; }
          if (!ok) return false;
        }
      }
    return true;
  }

  // No directed cycle in the relation with self-loops removed.  On finite
  // transitive antisymmetric frames this is the converse-well-foundedness
  // check; a self-loop under transitivity would show up as a 2-cycle.
  bool strict_acyclic() const {
    std::vector<int> state(worlds.size(), 0);  // 0 new, 1 open, 2 done
    auto index = [&](const WorldId& w) {
      return static_cast<std::size_t>(
          std::lower_bound(worlds.begin(), worlds.end(), w) - worlds.begin());
    };
    auto dfs = [&](auto&& self, std::size_t i) -> bool {
      state[i] = 1;
      for (const auto& [a, b] : relation) {
        if (a != worlds[i] || a == b) continue;
        std::size_t j = index(b);
        if (state[j] == 1) return false;
        if (state[j] == 0 && !self(self, j)) return false;
      }
      state[i] = 2;
      return true;
    };
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (state[i] == 0 && !dfs(dfs, i)) return false;
    return true;
  }

  bool converse_well_founded() const { return strict_acyclic(); }
};

enum class ClosureKind { Reflexive, Transitive, ReflexiveTransitive, ReflexiveSymmetric };

// Least superset of the relation with the named property; worlds unchanged.
inline Frame closure(const Frame& fr, ClosureKind kind) {
  Frame out = fr;
  auto add_loops = [&] {
    for (const auto& w : out.worlds) out.relation.emplace(w, w);
  };
  auto add_symmetric = [&] {
    std::set<std::pair<WorldId, WorldId>> rev;
    for (const auto& [a, b] : out.relation) rev.emplace(b, a);
    out.relation.insert(rev.begin(), rev.end());
  };
  auto add_transitive = [&] {
    const std::size_t n = out.worlds.size();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    auto index = [&](const WorldId& w) {
      return static_cast<std::size_t>(
          std::lower_bound(out.worlds.begin(), out.worlds.end(), w) - out.worlds.begin());
    };
    for (const auto& [a, b] : out.relation) m[index(a)][index(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (m[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (m[k][j]) m[i][j] = true;
    out.relation.clear();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][j]) out.relation.emplace(out.worlds[i], out.worlds[j]);
  };
  switch (kind) {
    case ClosureKind::Reflexive: add_loops(); break;
    case ClosureKind::Transitive: add_transitive(); break;
    case ClosureKind::ReflexiveTransitive: add_loops(); add_transitive(); break;
    case ClosureKind::ReflexiveSymmetric: add_loops(); add_symmetric(); break;
  }
  return out;
}

}  // namespace kripke
