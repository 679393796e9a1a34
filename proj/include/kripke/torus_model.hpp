#pragma once

// Finite countermodel generation from a verified torus tiling: a root below
// one stage world per cell, the stage world focusing the letter D on its
// cell.  The construction is best-effort-with-verification: the model
// checker must confirm the defining properties or the operation fails.

#include <stdexcept>
#include <string>

#include "kripke/eval.hpp"
#include "kripke/int_reduction.hpp"
#include "kripke/model.hpp"
#include "kripke/tiles.hpp"

namespace kripke {

struct TorusCountermodel {
  Model model;
  WorldId root;
};

class TorusVerificationError : public std::runtime_error {
 public:
  explicit TorusVerificationError(const std::string& what) : std::runtime_error(what) {}
};

// Builds and verifies an intuitionistic model whose root satisfies psi and
// refutes phi for the tile set's encoding.  Requires a valid torus tiling.
inline TorusCountermodel torus_countermodel(const TileSet& ts, const Tiling& tau,
                                            const TileAtomNames& names = {}) {
  if (!tau.torus) throw std::invalid_argument("torus_countermodel: tiling must be a torus");
  if (!check_tiling(ts, tau)) throw std::invalid_argument("torus_countermodel: tiling is invalid");

  Model m;
  m.mode = Mode::Intuitionistic;
  m.pf.constant_domains = true;

  auto cell = [&](int i, int j) { return "c" + std::to_string(i) + "_" + std::to_string(j); };
  std::set<Individual> dom;
  for (int j = 0; j < tau.height; ++j)
    for (int i = 0; i < tau.width; ++i) dom.insert(cell(i, j));

  const WorldId root = "w0";
  Frame base;
  base.add_world(root);
  std::vector<WorldId> stages;
  for (int j = 0; j < tau.height; ++j)
    for (int i = 0; i < tau.width; ++i) {
      WorldId u = "w:" + cell(i, j);
      base.add_world(u);
      base.add_edge(root, u);
      stages.push_back(u);
    }
  m.pf.frame = closure(base, ClosureKind::ReflexiveTransitive);
  for (const auto& w : m.frame().worlds) m.pf.domains[w] = dom;

  // Constant across worlds: adjacency and the tile labelling.
  auto everywhere = [&](const std::string& letter, const Tuple& t) {
    m.set_true(root, letter, t);
    for (const auto& u : stages) m.set_true(u, letter, t);
  };
  for (int j = 0; j < tau.height; ++j)
    for (int i = 0; i < tau.width; ++i) {
      everywhere(names.H, {cell(i, j), cell((i + 1) % tau.width, j)});
      everywhere(names.V, {cell(i, j), cell(i, (j + 1) % tau.height)});
      everywhere(names.tile_prefix + tau.at(i, j), {cell(i, j)});
    }
  // Staged: D focuses one cell per stage world; p holds off the root; q never.
  for (int j = 0; j < tau.height; ++j)
    for (int i = 0; i < tau.width; ++i) {
      m.set_true("w:" + cell(i, j), names.D, {cell(i, j)});
      m.set_true("w:" + cell(i, j), names.p, {});
    }

  auto bad = validate(m);
  if (!bad.empty()) throw TorusVerificationError("torus_countermodel: " + bad.front());

  auto [psi, phi] = encode_tiling(ts, TilingVariant::Int, names);
  Evaluator ev(m);
  if (!ev.sat_at(root, psi))
    throw TorusVerificationError("torus_countermodel: psi fails at the root");
  if (ev.sat_at(root, phi))
    throw TorusVerificationError("torus_countermodel: phi unexpectedly holds at the root");
  return {std::move(m), root};
}

}  // namespace kripke
