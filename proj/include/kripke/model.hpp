#pragma once

// Finite predicate Kripke models over expanding (or constant) domains, with
// per-mode structural validation.  Violations are data, not errors: validate
// returns a list naming the offending world pair / letter.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kripke/formula.hpp"
#include "kripke/frame.hpp"

namespace kripke {

using Individual = std::string;
using Tuple = std::vector<Individual>;

enum class Mode { Modal, Intuitionistic, Visser };

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Modal: return "modal";
    case Mode::Intuitionistic: return "intuitionistic";
    case Mode::Visser: return "visser";
  }
  return "?";
}

struct PredicateFrame {
  Frame frame;
  std::map<WorldId, std::set<Individual>> domains;
  bool constant_domains = false;
};

struct Model {
  PredicateFrame pf;
  // (world, letter) -> set of tuples over that world's domain
  std::map<std::pair<WorldId, std::string>, std::set<Tuple>> interpretation;
  Mode mode = Mode::Modal;

  const Frame& frame() const { return pf.frame; }
  Frame& frame() { return pf.frame; }

  const std::set<Individual>& domain(const WorldId& w) const {
    static const std::set<Individual> empty;
    auto it = pf.domains.find(w);
    return it == pf.domains.end() ? empty : it->second;
  }

  void set_domain(const WorldId& w, std::set<Individual> d) {
    pf.frame.add_world(w);
    pf.domains[w] = std::move(d);
  }

  void set_true(const WorldId& w, const std::string& letter, Tuple t) {
    interpretation[{w, letter}].insert(std::move(t));
  }

  bool holds(const WorldId& w, const std::string& letter, const Tuple& t) const {
    auto it = interpretation.find({w, letter});
    return it != interpretation.end() && it->second.count(t) > 0;
  }
};

using Assignment = std::map<Variable, Individual>;

// Structural checks for the model's mode.  Empty result iff valid.
inline std::vector<std::string> validate(const Model& m) {
  std::vector<std::string> bad;
  const Frame& fr = m.frame();

  for (const auto& [a, b] : fr.relation) {
    if (!fr.has_world(a) || !fr.has_world(b))
      bad.push_back("relation edge (" + a + "," + b + ") mentions an unknown world");
  }
  for (const auto& w : fr.worlds) {
    auto it = m.pf.domains.find(w);
    if (it == m.pf.domains.end() || it->second.empty())
      bad.push_back("world " + w + " has an empty or missing domain");
  }
  for (const auto& [a, b] : fr.relation) {
    const auto& da = m.domain(a);
    const auto& db = m.domain(b);
    for (const auto& x : da)
      if (!db.count(x)) {
        bad.push_back("expanding domains violated at (" + a + "," + b + "): individual " + x);
        break;
      }
  }
  if (m.pf.constant_domains) {
    const std::set<Individual>* first = nullptr;
    for (const auto& w : fr.worlds) {
      const auto& d = m.domain(w);
      if (!first) first = &d;
      else if (*first != d) {
        bad.push_back("constant domains violated at world " + w);
        break;
      }
    }
  }

  std::map<std::string, std::size_t> arity;
  for (const auto& [key, tuples] : m.interpretation) {
    const auto& [w, letter] = key;
    if (!fr.has_world(w)) {
      bad.push_back("interpretation mentions unknown world " + w);
      continue;
    }
    const auto& dom = m.domain(w);
    for (const auto& t : tuples) {
      auto [it, fresh] = arity.try_emplace(letter, t.size());
      if (!fresh && it->second != t.size())
        bad.push_back("letter " + letter + " interpreted with mixed tuple widths");
      for (const auto& x : t)
        if (!dom.count(x))
          bad.push_back("tuple for " + letter + " at " + w + " uses " + x +
                        " outside the world's domain");
    }
  }

  if (m.mode == Mode::Intuitionistic || m.mode == Mode::Visser) {
    for (const auto& [a, b] : fr.relation) {
      if (a == b) continue;
      for (const auto& [key, tuples] : m.interpretation) {
        if (key.first != a) continue;
        for (const auto& t : tuples)
          if (!m.holds(b, key.second, t)) {
            bad.push_back("heredity violated at (" + a + "," + b + ") for letter " + key.second);
            goto next_edge;
          }
      }
    next_edge:;
    }
    if (!fr.antisymmetric()) bad.push_back("frame is not antisymmetric");
    if (!fr.transitive()) bad.push_back("frame is not transitive");
    if (m.mode == Mode::Intuitionistic && !fr.reflexive())
      bad.push_back("frame is not reflexive");
  }
  return bad;
}

}  // namespace kripke
