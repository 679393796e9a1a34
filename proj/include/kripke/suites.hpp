#pragma once

// Named verification suites.  Each suite machine-checks one of the finite
// model properties the reductions rely on and reports failures as data; the
// CLI `verify` subcommand and the acceptance binary are thin wrappers.

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kripke/bounded_sat.hpp"
#include "kripke/corpus.hpp"
#include "kripke/eval.hpp"
#include "kripke/frame_f.hpp"
#include "kripke/godel_check.hpp"
#include "kripke/int_reduction.hpp"
#include "kripke/modal_reduction.hpp"
#include "kripke/tiles.hpp"
#include "kripke/torus_model.hpp"

namespace kripke {

struct SuiteFailure {
  std::string case_id;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  long long cases = 0;
  std::vector<SuiteFailure> failures;
  double wall_ms = 0;

  bool ok() const { return failures.empty(); }
};

struct SuiteParams {
  int n = 3;                      // letter-count bound for the gadget lemmas
  int size_cap = 8;               // formula size bound (godel suite)
  int max_worlds = 3;             // bounded-search world bound
  int max_domain = 2;             // bounded-search domain bound
  long long budget = 50'000'000;  // enumeration budget
  unsigned seed = 0;              // reserved for randomized corpora
};

namespace suite_detail {

inline void fail(SuiteReport& r, std::string case_id, std::string detail) {
  r.failures.push_back({std::move(case_id), std::move(detail)});
}

// ---- gadget chain lemmas ----------------------------------------------

inline SuiteReport gadget_lemma(const std::string& name, Track track, bool reflexive_closure,
                                const SuiteParams& p) {
  SuiteReport r;
  r.suite = name;
  ReductionContext ctx = ReductionContext::canonical(static_cast<std::size_t>(p.n), track);
  for (int k = 1; k <= p.n + 1; ++k) {
    Model g = build_gadget(k, track, "a", {"a", "b"});
    if (reflexive_closure) g.frame() = closure(g.frame(), ClosureKind::Reflexive);
    if (auto bad = validate(g); !bad.empty()) {
      fail(r, "gadget k=" + std::to_string(k), bad.front());
      continue;
    }
    Evaluator ev(g);
    Assignment as{{Variable{"x"}, "a"}};
    for (int m = 1; m <= p.n + 1; ++m) {
      FormulaPtr am = alpha(m, Variable{"x"}, ctx);
      for (const auto& w : g.frame().worlds) {
        ++r.cases;
        bool got = ev.eval(w, as, am);
        bool want = (k == m && w == gadget_root(track));
        if (got != want)
          fail(r, "k=" + std::to_string(k) + " m=" + std::to_string(m) + " w=" + w,
               got ? "alpha holds off the distinguished world" : "alpha fails at the root");
      }
    }
  }
  return r;
}

// ---- guard letter lemma -------------------------------------------------

inline SuiteReport vp_b_suite(const SuiteParams&) {
  SuiteReport r;
  r.suite = "vp-b";
  for (const auto& c : vp_b_corpus()) {
    ++r.cases;
    ReductionContext ctx = ReductionContext::canonical(c.n, Track::K);
    Evaluator ev(c.model);
    if (!ev.eval(c.w0, {}, c.phi)) {
      fail(r, c.name, "corpus precondition: phi not true at w0");
      continue;
    }
    FormulaPtr guarded = conj(build_b(ctx), prime_embed(c.phi, ctx));

    // Forward: making the fresh letter total satisfies B & phi'.
    Model ext = c.model;
    for (const auto& w : ext.frame().worlds)
      for (const auto& x : ext.domain(w)) ext.set_true(w, ctx.fresh, {x});
    {
      Evaluator ev2(ext);
      if (!ev2.eval(c.w0, {}, guarded)) {
        fail(r, c.name, "extension does not satisfy B & phi'");
        continue;
      }
    }

    // Backward: a model with a non-B world still satisfies B & phi' at w0
    // (the guards confine evaluation), and its B-restriction satisfies phi.
    Model junked = ext;
    WorldId j0 = "junk";
    junked.set_domain(j0, junked.domain(c.w0));
    junked.frame().add_edge(c.w0, j0);
    {
      Evaluator ev3(junked);
      if (!ev3.eval(c.w0, {}, guarded)) {
        fail(r, c.name, "junk world broke B & phi' at w0");
        continue;
      }
      Model restricted;
      restricted.mode = Mode::Modal;
      FormulaPtr b = build_b(ctx);
      std::set<WorldId> keep;
      for (const auto& w : junked.frame().worlds)
        if (ev3.sat_at(w, b)) keep.insert(w);
      for (const auto& w : keep) restricted.set_domain(w, junked.domain(w));
      for (const auto& [a2, b2] : junked.frame().relation)
        if (keep.count(a2) && keep.count(b2)) restricted.frame().add_edge(a2, b2);
      for (const auto& [key, tuples] : junked.interpretation)
        if (keep.count(key.first))
          for (const auto& t : tuples) restricted.set_true(key.first, key.second, t);
      if (!keep.count(c.w0)) {
        fail(r, c.name, "w0 dropped by the B-restriction");
        continue;
      }
      Evaluator ev4(restricted);
      if (!ev4.eval(c.w0, {}, c.phi)) fail(r, c.name, "B-restriction does not satisfy phi");
    }
  }
  return r;
}

// ---- attach-gadgets suites ---------------------------------------------

inline bool track_frame_ok(Track track, const Frame& fr) {
  switch (track) {
    case Track::K: return true;
    case Track::GL: return fr.transitive() && fr.irreflexive() && fr.strict_acyclic();
    case Track::Grz: return fr.reflexive() && fr.transitive() && fr.antisymmetric();
    case Track::KTB: return fr.reflexive() && fr.symmetric();
  }
  return false;
}

inline SuiteReport vp_ast_suite(Track track, const SuiteParams&) {
  SuiteReport r;
  r.suite = "vp-ast-" + track_name(track);
  Variable x{"x"};
  for (const auto& c : vp_ast_corpus(track)) {
    ++r.cases;
    ReductionContext ctx = ReductionContext::canonical(c.n, track);
    if (!track_frame_ok(track, c.model.frame())) {
      fail(r, c.name, "corpus precondition: host frame not in the track class");
      continue;
    }
    Evaluator ev(c.model);
    if (!ev.eval(c.w0, {}, c.phi)) {
      fail(r, c.name, "corpus precondition: phi not true at w0");
      continue;
    }
    Model star;
    try {
      star = attach_gadgets(c.model, ctx);
    } catch (const std::exception& e) {
      fail(r, c.name, std::string("attach_gadgets rejected the host: ") + e.what());
      continue;
    }
    if (auto bad = validate(star); !bad.empty()) {
      fail(r, c.name, "output fails validation: " + bad.front());
      continue;
    }
    if (!track_frame_ok(track, star.frame())) {
      fail(r, c.name, "output frame leaves the track class");
      continue;
    }
    FormulaPtr target = conj(forall(x, beta(static_cast<int>(c.n) + 1, x, ctx)),
                             star_subst(prime_embed(c.phi, ctx), ctx));
    Evaluator evs(star);
    if (!evs.eval(c.w0, {}, target)) {
      fail(r, c.name, "forall x. beta_{n+1} & phi* fails at w0");
      continue;
    }
    for (const auto& w : c.model.frame().worlds)
      for (const auto& a : c.model.domain(w))
        for (std::size_t k = 1; k <= c.n + 1; ++k) {
          bool lhs = ev.eval(w, {{x, a}}, atom(ctx.letter(k), {x}));
          bool rhs = evs.eval(w, {{x, a}}, beta(static_cast<int>(k), x, ctx));
          if (lhs != rhs)
            fail(r, c.name, "bridging fails at (" + w + "," + a + ",k=" + std::to_string(k) + ")");
        }
  }
  return r;
}

// ---- binary-letter elimination ------------------------------------------

inline SuiteReport binary_elim_suite(const SuiteParams&) {
  SuiteReport r;
  r.suite = "lemma-3.2";
  BinaryElimNames fresh{"Q1", "Q2", "r", "s"};
  Variable x{"x"}, y{"y"};
  FormulaPtr sim = disj(imp(conj(atom("Q1", {x}), atom("Q2", {y})), prop("r")), prop("s"));
  for (const auto& c : binary_elim_corpus()) {
    ++r.cases;
    if (auto bad = validate(c.model); !bad.empty()) {
      fail(r, c.name, "corpus model invalid: " + bad.front());
      continue;
    }
    Model witness;
    try {
      witness = witness_eliminate_binary(c.model, c.w0, c.chi, c.Q, fresh);
    } catch (const std::exception& e) {
      fail(r, c.name, std::string("witness construction rejected: ") + e.what());
      continue;
    }
    if (auto bad = validate(witness); !bad.empty()) {
      fail(r, c.name, "witness model invalid: " + bad.front());
      continue;
    }
    FormulaPtr chi2 = eliminate_binary(c.chi, c.Q, fresh);
    Evaluator evw(witness);
    if (evw.sat_at(c.w0, chi2)) {
      fail(r, c.name, "chi' not refuted at w0 in the witness model");
      continue;
    }
    Evaluator evm(c.model);
    for (const auto& w : c.model.frame().worlds)
      for (const auto& a : c.model.domain(w))
        for (const auto& b : c.model.domain(w)) {
          bool had = evm.eval(w, {{x, a}, {y, b}}, atom(c.Q, {x, y}));
          bool has = evw.eval(w, {{x, a}, {y, b}}, sim);
          if (had != has)
            fail(r, c.name, "base case fails at (" + w + "," + a + "," + b + ")");
        }
  }
  return r;
}

// ---- addressing frame suites ---------------------------------------------

inline SuiteReport frame_f_suite(bool qfl, const SuiteParams&) {
  SuiteReport r;
  r.suite = qfl ? "frame-f-qfl" : "frame-f";
  Variable x{"x"};
  Assignment as{{x, "a"}};
  for (int n : {2, 3}) {
    FrameF ff = build_frame_f(n, qfl ? FrameFVariant::Qfl : FrameFVariant::Int);
    Model m = a_suitable_f(ff, {"a", "b", "c"}, "a", "b");
    ++r.cases;
    if (auto bad = validate(m); !bad.empty()) {
      fail(r, "heredity n=" + std::to_string(n), bad.front());
      continue;
    }
    Evaluator ev(m);
    auto check = [&](const LevelIndex& idx) {
      FormulaPtr f = level_formula(idx, x);
      // In the irreflexive variant each formula addresses its world's
      // double, which every seer of the world (and the world itself)
      // reaches; on the reflexive variant the world addresses itself.
      WorldId target = frame_f_world(idx);
      if (qfl) target += "'";
      for (const auto& w : ff.originals) {
        ++r.cases;
        bool fails_here = !ev.eval(w, as, f);
        bool sees = ff.frame.rel(w, target);
        if (fails_here != sees)
          fail(r,
               "n=" + std::to_string(n) + " " + frame_f_world(idx) + " at " + w,
               fails_here ? "formula fails without seeing the world"
                          : "formula holds although the world is seen");
      }
    };
    // The lemma speaks of the level formulas A/B; the top-level D
    // correspondence additionally holds on the reflexive variant (on the
    // irreflexive one the terminal double of d3 satisfies P -> forall P
    // vacuously, so D3 does not address its own world there).
    if (!qfl)
      for (int d = 1; d <= 3; ++d) check({LevelIndex::kTop, FKind::D, d});
    for (int lev = 0; lev <= n; ++lev)
      for (int i = 1; i <= level_width(lev); ++i) {
        check({lev, FKind::A, i});
        check({lev, FKind::B, i});
      }
  }
  return r;
}

// ---- single-letter substitution suites ------------------------------------

inline SuiteReport mstar_suite(const std::string& name, MstarVariant variant,
                               const SuiteParams&) {
  SuiteReport r;
  r.suite = name;
  Variable x{"x"};
  auto corpus = variant == MstarVariant::Qfl ? qfl_corpus() : qint_corpus();
  for (const auto& c : corpus) {
    ++r.cases;
    std::vector<std::string> letters;
    for (int i = 1; i <= c.n; ++i) letters.push_back("P" + std::to_string(i));
    if (auto bad = validate(c.model); !bad.empty()) {
      fail(r, c.name, "corpus model invalid: " + bad.front());
      continue;
    }
    if (!profile(c.phi).positive) {
      fail(r, c.name, "corpus formula not positive");
      continue;
    }
    Evaluator evh(c.model);
    if (evh.sat_at(c.w0, c.phi)) {
      fail(r, c.name, "corpus precondition: phi not refuted at w0");
      continue;
    }
    Model star;
    try {
      star = build_mstar_int(c.model, c.n, letters, variant);
    } catch (const std::exception& e) {
      fail(r, c.name, std::string("construction rejected: ") + e.what());
      continue;
    }
    if (auto bad = validate(star); !bad.empty()) {
      fail(r, c.name, "output fails validation: " + bad.front());
      continue;
    }
    if (variant == MstarVariant::Qkc && !star.frame().convergent()) {
      fail(r, c.name, "output frame not convergent");
      continue;
    }
    if (variant == MstarVariant::Qfl && !star.frame().strict_acyclic()) {
      fail(r, c.name, "output frame not acyclic");
      continue;
    }
    Evaluator evs(star);
    for (const auto& w : c.model.frame().worlds)
      for (const auto& a : c.model.domain(w))
        for (int i = 1; i <= c.n; ++i) {
          bool lhs = evh.eval(w, {{x, a}}, atom(letters[static_cast<std::size_t>(i - 1)], {x}));
          bool rhs = evs.eval(w, {{x, a}}, alpha_int(i, c.n, x));
          if (lhs != rhs)
            fail(r, c.name, "bridging fails at (" + w + "," + a + ",i=" + std::to_string(i) + ")");
        }
    // Confinement: the alphas hold under every assignment at every appended
    // world some original world reaches, which is what sends implication
    // witnesses back into the original part.
    {
      std::set<WorldId> hosts(c.model.frame().worlds.begin(), c.model.frame().worlds.end());
      for (const auto& u : star.frame().worlds) {
        if (hosts.count(u)) continue;
        bool reachable = false;
        for (const auto& w : hosts) reachable = reachable || star.frame().rel(w, u);
        if (!reachable) continue;
        for (int i = 1; i <= c.n && r.failures.size() < 50; ++i)
          if (!evs.sat_at(u, alpha_int(i, c.n, x)))
            fail(r, c.name, "alpha_" + std::to_string(i) + " fails at appended world " + u);
      }
    }
    FormulaPtr phistar = star_subst_int(c.phi, c.n, letters);
    if (evs.sat_at(c.w0, phistar)) fail(r, c.name, "phi* not refuted at w0");
  }
  return r;
}

// ---- translation correspondence ------------------------------------------

inline SuiteReport godel_suite(const SuiteParams& p) {
  SuiteReport r;
  r.suite = "godel";
  (void)p;
  GodelCheckResult ri = godel_check_all(Mode::Intuitionistic, 3, 2);
  GodelCheckResult rv = godel_check_all(Mode::Visser, 3, 2);
  r.cases = ri.models + rv.models;
  auto drain = [&](const char* tag, const GodelCheckResult& g) {
    for (const auto& s : g.mismatches) fail(r, tag, s);
    for (const auto& s : g.cross_fails) fail(r, tag, s);
    for (const auto& s : g.monotonicity_fails) fail(r, tag, s);
  };
  drain("intuitionistic", ri);
  drain("visser", rv);
  return r;
}

// ---- tiling ---------------------------------------------------------------

inline TileSet uniform_tileset() { return TileSet{{{"t0", "c", "c", "c", "c"}}}; }
inline TileSet checkerboard_tileset() {
  return TileSet{{{"t0", "a", "b", "a", "b"}, {"t1", "b", "a", "b", "a"}}};
}
inline TileSet stripe_tileset() {
  return TileSet{{{"t0", "a", "b", "u", "u"}, {"t1", "b", "a", "v", "v"}, {"t2", "c", "d", "e", "e"}}};
}
inline TileSet mismatch_tileset_one() { return TileSet{{{"t0", "a", "b", "c", "c"}}}; }
inline TileSet mismatch_tileset_two() {
  return TileSet{{{"t0", "a", "b", "c", "c"}, {"t1", "a", "b", "d", "d"}}};
}

inline SuiteReport tiling_suite(const SuiteParams& p) {
  SuiteReport r;
  r.suite = "tiling-torus";
  struct Positive {
    const char* name;
    TileSet ts;
    int w, h;
  };
  std::vector<Positive> pos{{"uniform", uniform_tileset(), 1, 1},
                            {"checkerboard", checkerboard_tileset(), 2, 2},
                            {"stripe", stripe_tileset(), 2, 1}};
  for (auto& c : pos) {
    ++r.cases;
    auto found = find_periodic_tiling(c.ts, c.w, c.h, p.budget);
    if (found.status != TilingSearchResult::Status::Found) {
      fail(r, c.name, "no periodic tiling found at the known period");
      continue;
    }
    if (!check_tiling(c.ts, *found.tiling)) {
      fail(r, c.name, "search returned an invalid tiling");
      continue;
    }
    TorusCountermodel tc;
    try {
      tc = torus_countermodel(c.ts, *found.tiling);
    } catch (const std::exception& e) {
      fail(r, c.name, std::string("countermodel construction failed: ") + e.what());
      continue;
    }
    auto enc = encode_tiling_full(c.ts, TilingVariant::Int);
    Evaluator ev(tc.model);
    for (std::size_t i = 0; i < enc.conjuncts.size(); ++i) {
      ++r.cases;
      if (!ev.sat_at(tc.root, enc.conjuncts[i]))
        fail(r, c.name, "conjunct " + std::to_string(i + 1) + " fails at the root");
    }
    if (ev.sat_at(tc.root, enc.phi)) fail(r, c.name, "phi unexpectedly holds at the root");
  }
  int idx = 0;
  for (const TileSet& ts : {mismatch_tileset_one(), mismatch_tileset_two()}) {
    ++idx;
    for (int w = 1; w <= 3; ++w)
      for (int h = 1; h <= 3; ++h) {
        ++r.cases;
        auto res = find_periodic_tiling(ts, w, h, p.budget);
        if (res.status != TilingSearchResult::Status::None)
          fail(r, "untileable-" + std::to_string(idx),
               "unexpected result at period " + std::to_string(w) + "x" + std::to_string(h));
      }
  }
  return r;
}

// ---- bounded-search cross check -------------------------------------------

// The phi*-side oracle: hosts within (max_worlds, max_domain) with the guard
// letter total, gadgets attached literally, the target model-checked on the
// result.  Exhaustive over the host space up to renaming.
inline bool gadget_oracle_finds(const FormulaPtr& target, const ReductionContext& ctx,
                                int max_worlds, int pool, long long budget,
                                long long& candidates) {
  for (int nw = 1; nw <= max_worlds; ++nw) {
    const std::uint64_t rel_bound = 1ull << (nw * nw);
    for (std::uint64_t rel = 0; rel < rel_bound; ++rel) {
      std::vector<std::uint32_t> dom(static_cast<std::size_t>(nw), 1);
      const std::uint32_t dom_bound = 1u << pool;
      bool dom_done = false;
      while (!dom_done) {
        bool expanding = true;
        for (int a = 0; a < nw && expanding; ++a)
          for (int b = 0; b < nw; ++b)
            if (((rel >> (a * nw + b)) & 1) &&
                (dom[static_cast<std::size_t>(a)] & ~dom[static_cast<std::size_t>(b)])) {
              expanding = false;
              break;
            }
        if (expanding) {
          // one interpretation mask per world for the single source letter
          std::vector<std::uint32_t> p1(static_cast<std::size_t>(nw), 0);
          bool int_done = false;
          while (!int_done) {
            bool within = true;
            for (int a = 0; a < nw; ++a)
              if (p1[static_cast<std::size_t>(a)] & ~dom[static_cast<std::size_t>(a)]) {
                within = false;
                break;
              }
            if (within) {
              if (++candidates > budget) return false;
              Model host;
              host.mode = Mode::Modal;
              auto wname = [](int i) { return "h" + std::to_string(i); };
              auto iname = [](int i) { return "a" + std::to_string(i); };
              for (int a = 0; a < nw; ++a) {
                std::set<Individual> d;
                for (int v = 0; v < pool; ++v)
                  if ((dom[static_cast<std::size_t>(a)] >> v) & 1) d.insert(iname(v));
                host.set_domain(wname(a), std::move(d));
              }
              for (int a = 0; a < nw; ++a)
                for (int b = 0; b < nw; ++b)
                  if ((rel >> (a * nw + b)) & 1) host.frame().add_edge(wname(a), wname(b));
              for (int a = 0; a < nw; ++a)
                for (int v = 0; v < pool; ++v)
                  if ((p1[static_cast<std::size_t>(a)] >> v) & 1)
                    host.set_true(wname(a), ctx.sources[0], {iname(v)});
              for (const auto& w : host.frame().worlds)
                for (const auto& cc : host.domain(w)) host.set_true(w, ctx.fresh, {cc});
              Model star = attach_gadgets(host, ctx);
              Evaluator ev(star);
              for (const auto& w : host.frame().worlds)
                if (ev.eval(w, {}, target)) return true;
            }
            int_done = true;
            for (int a = 0; a < nw; ++a) {
              std::uint32_t& cur = p1[static_cast<std::size_t>(a)];
              if (cur + 1 < dom_bound) {
                ++cur;
                int_done = false;
                break;
              }
              cur = 0;
            }
          }
        }
        dom_done = true;
        for (int a = 0; a < nw; ++a) {
          std::uint32_t& cur = dom[static_cast<std::size_t>(a)];
          if (cur + 1 < dom_bound) {
            ++cur;
            dom_done = false;
            break;
          }
          cur = 1;
        }
      }
    }
  }
  return false;
}

inline SuiteReport oracle_cross_suite(const SuiteParams& p) {
  SuiteReport r;
  r.suite = "oracle-cross";
  ReductionContext ctx = ReductionContext::canonical(1, Track::K);
  Variable x{"x"};
  std::vector<std::pair<std::string, FormulaPtr>> formulas{
      {"all", parse("forall x. P1(x)")},
      {"not-all", parse("~forall x. P1(x)")},
      {"contradiction", parse("forall x. P1(x) & ~forall x. P1(x)")},
      {"exists-vs-none", parse("exists x. P1(x) & forall x. ~P1(x)")},
      {"dia-all", parse("dia forall x. P1(x)")}};
  for (const auto& [name, f] : formulas) {
    ++r.cases;
    FormulaPtr fp = prime_embed(f, ctx);
    SearchBounds b;
    b.max_worlds = p.max_worlds;
    b.max_domain = p.max_domain;
    b.mode = Mode::Modal;
    b.budget = p.budget;
    SatResult sideA = bounded_sat(conj(build_b(ctx), fp), b);
    if (sideA.status == SatResult::Status::Budget) {
      fail(r, name, "guard-side search exceeded its budget");
      continue;
    }
    FormulaPtr target = conj(forall(x, beta(2, x, ctx)), star_subst(fp, ctx));
    long long candidates = 0;
    bool sideB = gadget_oracle_finds(target, ctx, p.max_worlds, p.max_domain, p.budget,
                                     candidates);
    bool foundA = sideA.status == SatResult::Status::Found;
    if (foundA != sideB)
      fail(r, name,
           std::string("verdicts disagree: guard side ") + (foundA ? "found" : "none") +
               ", star side " + (sideB ? "found" : "none"));
  }
  return r;
}

// ---- syntactic claims -------------------------------------------------------

inline SuiteReport syntactic_suite(const SuiteParams&) {
  SuiteReport r;
  r.suite = "syntactic-claims";
  auto two_var = [](const SyntaxProfile& pr) {
    for (const auto& v : pr.all_variables)
      if (v.name != "x" && v.name != "y") return false;
    return true;
  };
  // Single-letter embedding: one letter, variables within the input's.
  for (const auto& c : vp_ast_corpus(Track::GL)) {
    ++r.cases;
    ReductionContext ctx = ReductionContext::canonical(c.n, Track::GL);
    FormulaPtr e = embed_e(c.phi, ctx);
    auto pr = profile(e);
    if (pr.letters.size() != 1 || pr.letters.begin()->first != ctx.target)
      fail(r, "embed-" + c.name, "output letters are not exactly the target letter");
    auto in_vars = profile(c.phi).all_variables;
    for (const auto& v : pr.all_variables)
      if (!in_vars.count(v)) fail(r, "embed-" + c.name, "output variable beyond the input's");
  }
  // Tiling encodings: positive, closed, two variables; both variants.
  for (const auto& [name, ts] :
       std::vector<std::pair<std::string, TileSet>>{{"uniform", uniform_tileset()},
                                                    {"checkerboard", checkerboard_tileset()},
                                                    {"stripe", stripe_tileset()}}) {
    for (TilingVariant v : {TilingVariant::Int, TilingVariant::Visser}) {
      ++r.cases;
      auto [psi, phi] = encode_tiling(ts, v);
      for (const auto& [tag, f] : {std::pair<const char*, FormulaPtr>{"psi", psi}, {"phi", phi}}) {
        auto pr = profile(f);
        if (!pr.positive) fail(r, name + std::string("-") + tag, "encoding not positive");
        if (!pr.closed) fail(r, name + std::string("-") + tag, "encoding not closed");
        if (!two_var(pr)) fail(r, name + std::string("-") + tag, "encoding exceeds two variables");
      }
    }
  }
  // The full elimination pipeline keeps positivity, closure, two variables,
  // and ends with a single letter.
  {
    ++r.cases;
    auto [psi, phi] = encode_tiling(checkerboard_tileset(), TilingVariant::Int);
    (void)psi;
    FormulaPtr f = eliminate_binary(phi, "H", {"H1", "H2", "r1", "s1"});
    f = eliminate_binary(f, "V", {"V1", "V2", "r2", "s2"});
    auto pr1 = profile(f);
    if (!pr1.positive || !two_var(pr1)) fail(r, "pipeline", "binary elimination broke the shape");
    f = expand_propositional(f);
    auto pr2 = profile(f);
    for (const auto& [name, info] : pr2.letters)
      if (info.arity != 1) fail(r, "pipeline", "letter " + name + " not monadic after expansion");
    int n = static_cast<int>(pr2.letters.size());
    FormulaPtr g = star_subst_int(f, n);
    auto pr3 = profile(g);
    if (pr3.letters.size() != 1 || pr3.letters.begin()->first != "P")
      fail(r, "pipeline", "final formula is not single-letter");
    if (!pr3.positive || !pr3.closed || !two_var(pr3))
      fail(r, "pipeline", "final formula broke positivity, closure, or the variable bound");
  }
  return r;
}

}  // namespace suite_detail

inline std::vector<std::string> suite_names() {
  return {"lemma-2.2", "lemma-2.2-reflexive", "lemma-2.6", "vp-b",
          "vp-ast-k", "vp-ast-gl", "vp-ast-grz", "vp-ast-ktb",
          "lemma-3.2", "frame-f", "frame-f-qfl",
          "qint-main", "qkc-main", "qfl-main",
          "godel", "tiling-torus", "oracle-cross", "syntactic-claims"};
}

inline SuiteReport run_suite(const std::string& name, const SuiteParams& p = {}) {
  using namespace suite_detail;
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport r;
  if (name == "lemma-2.2") r = gadget_lemma(name, Track::GL, false, p);
  else if (name == "lemma-2.2-reflexive") r = gadget_lemma(name, Track::GL, true, p);
  else if (name == "lemma-2.6") r = gadget_lemma(name, Track::KTB, false, p);
  else if (name == "vp-b") r = vp_b_suite(p);
  else if (name == "vp-ast-k") r = vp_ast_suite(Track::K, p);
  else if (name == "vp-ast-gl") r = vp_ast_suite(Track::GL, p);
  else if (name == "vp-ast-grz") r = vp_ast_suite(Track::Grz, p);
  else if (name == "vp-ast-ktb") r = vp_ast_suite(Track::KTB, p);
  else if (name == "lemma-3.2") r = binary_elim_suite(p);
  else if (name == "frame-f") r = frame_f_suite(false, p);
  else if (name == "frame-f-qfl") r = frame_f_suite(true, p);
  else if (name == "qint-main") r = mstar_suite("qint-main", MstarVariant::Int, p);
  else if (name == "qkc-main") r = mstar_suite("qkc-main", MstarVariant::Qkc, p);
  else if (name == "qfl-main") r = mstar_suite("qfl-main", MstarVariant::Qfl, p);
  else if (name == "godel") r = godel_suite(p);
  else if (name == "tiling-torus") r = tiling_suite(p);
  else if (name == "oracle-cross") r = oracle_cross_suite(p);
  else if (name == "syntactic-claims") r = syntactic_suite(p);
  else throw std::invalid_argument("unknown suite '" + name + "'");
  auto t1 = std::chrono::steady_clock::now();
  r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::sort(r.failures.begin(), r.failures.end(),
            [](const SuiteFailure& a, const SuiteFailure& b) {
              return std::tie(a.case_id, a.detail) < std::tie(b.case_id, b.detail);
            });
  return r;
}

}  // namespace kripke
