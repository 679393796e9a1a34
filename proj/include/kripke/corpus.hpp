#pragma once

// Hand-built
// (model, formula) corpora backing the verification suites.  Every entry is
// re-checked against its stated precondition inside the suite that consumes
// it, so a mis-built entry shows up as a suite failure, not as silence.

#include <string>
#include <vector>

#include "kripke/frame.hpp"
#include "kripke/model.hpp"
#include "kripke/modal_reduction.hpp"
#include "kripke/parse.hpp"

namespace kripke {

struct ModalCase {
  std::string name;
  Model model;
  WorldId w0;
  FormulaPtr phi;
  std::size_t n;  // number of source letters P1..Pn
};

struct IntCase {
  std::string name;
  Model model;
  WorldId w0;
  FormulaPtr phi;
  int n;
};

struct BinaryElimCase {
  std::string name;
  Model model;
  WorldId w0;
  FormulaPtr chi;
  std::string Q;
};

namespace corpus_detail {

inline Model chain(std::vector<std::set<Individual>> doms) {
  Model m;
  m.mode = Mode::Modal;
  for (std::size_t i = 0; i < doms.size(); ++i)
    m.set_domain("u" + std::to_string(i), doms[i]);
  for (std::size_t i = 0; i + 1 < doms.size(); ++i)
    m.frame().add_edge("u" + std::to_string(i), "u" + std::to_string(i + 1));
  return m;
}

inline void totalize(Model& m, const std::string& letter) {
  for (const auto& w : m.frame().worlds)
    for (const auto& c : m.domain(w)) m.set_true(w, letter, {c});
}

}  // namespace corpus_detail

// Pairs (model over P1..Pn, phi true at w0) for the guard-letter lemma; the
// models do not interpret the fresh letter.
inline std::vector<ModalCase> vp_b_corpus() {
  using namespace corpus_detail;
  std::vector<ModalCase> out;
  {
    Model m = chain({{"a"}});
    m.set_true("u0", "P1", {"a"});
    out.push_back({"single-total", m, "u0", parse("forall x. P1(x)"), 1});
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    out.push_back({"single-partial", m, "u0", parse("exists x. P1(x) & ~forall x. P1(x)"), 1});
  }
  {
    Model m = chain({{"a"}, {"a"}});
    m.set_true("u1", "P1", {"a"});
    out.push_back({"chain-box", m, "u0", parse("box exists x. P1(x)"), 1});
  }
  {
    Model m = chain({{"a"}, {"a"}});
    m.set_true("u1", "P1", {"a"});
    out.push_back({"chain-dia", m, "u0", parse("dia forall x. P1(x)"), 1});
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"b"});
    out.push_back({"two-letters", m, "u0", parse("exists x. (P1(x) & ~P2(x))"), 2});
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"a"});
    m.set_true("u0", "P2", {"b"});
    out.push_back({"inclusion", m, "u0", parse("forall x. (P1(x) -> P2(x))"), 2});
  }
  {
    Model m = chain({{"a"}, {"a"}, {"a"}});
    m.set_true("u2", "P1", {"a"});
    out.push_back({"chain3", m, "u0", parse("dia dia exists x. P1(x)"), 1});
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"b"});
    m.set_true("u0", "P3", {"a"});
    m.set_true("u0", "P3", {"b"});
    out.push_back({"three-letters", m, "u0",
                   parse("exists x. (P1(x) & P3(x)) & exists x. (P2(x) & P3(x))"), 3});
  }
  {
    Model m = chain({{"a"}, {"a"}});
    out.push_back({"box-empty", m, "u0", parse("box ~exists x. P1(x)"), 1});
  }
  {
    Model m = chain({{"a"}});
    m.frame().add_edge("u0", "u0");
    m.set_true("u0", "P1", {"a"});
    out.push_back({"loop", m, "u0", parse("exists x. P1(x) & dia exists x. P1(x)"), 1});
  }
  return out;
}

// Hosts for the attach-gadgets suite: the fresh letter is total everywhere
// (so B holds globally), the frame is in the track's class, phi holds at w0.
// For the transitive tracks the source letters never grow along the
// relation; with the closure applied after wiring, a world sees its
// successors' gadget copies, and a letter appearing only above would give
// beta_k a spurious witness (see the ledgered pollution note).
inline std::vector<ModalCase> vp_ast_corpus(Track track) {
  using namespace corpus_detail;
  std::vector<ModalCase> out;
  auto close_for_track = [&](Model m) {
    switch (track) {
      case Track::K:
        break;
      case Track::GL:
        m.pf.frame = closure(m.pf.frame, ClosureKind::Transitive);
        break;
      case Track::Grz:
        m.pf.frame = closure(m.pf.frame, ClosureKind::ReflexiveTransitive);
        break;
      case Track::KTB:
        m.pf.frame = closure(m.pf.frame, ClosureKind::ReflexiveSymmetric);
        break;
    }
    return m;
  };
  auto push = [&](std::string name, Model m, std::size_t n, const std::string& phi) {
    totalize(m, "P" + std::to_string(n + 1));
    out.push_back({std::move(name), close_for_track(std::move(m)), "u0", parse(phi),
                   n});
  };

  {
    Model m = chain({{"a"}});
    m.set_true("u0", "P1", {"a"});
    push("single-total", m, 1, "forall x. P1(x)");
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    push("single-partial", m, 1, "exists x. P1(x) & ~forall x. P1(x)");
  }
  {
    Model m = chain({{"a"}});
    push("empty-letter", m, 1, "~exists x. P1(x)");
  }
  {
    Model m = chain({{"a"}, {"a"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u1", "P1", {"a"});
    push("chain-const", m, 1, "exists x. P1(x) & box exists x. P1(x)");
  }
  {
    Model m = chain({{"a"}, {"a"}});
    m.set_true("u0", "P1", {"a"});  // shrinks upward
    push("chain-shrink", m, 1, "exists x. P1(x) & dia ~exists x. P1(x)");
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"b"});
    push("two-letters", m, 2, "exists x. (P1(x) & ~P2(x)) & exists x. (P2(x) & ~P1(x))");
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"a"});
    m.set_true("u0", "P2", {"b"});
    push("inclusion", m, 2, "forall x. (P1(x) -> P2(x))");
  }
  {
    Model m = chain({{"a"}, {"a"}, {"a"}});
    for (const auto& w : {"u0", "u1", "u2"}) m.set_true(w, "P1", {"a"});
    push("chain3", m, 1, "box box forall x. P1(x)");
  }
  {
    Model m = chain({{"a", "b"}, {"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P1", {"b"});
    m.set_true("u1", "P1", {"a"});
    m.set_true("u1", "P1", {"b"});
    m.set_true("u0", "P2", {"a"});
    push("two-world-two-letter", m, 2, "forall x. P1(x) & exists x. (P1(x) & ~P2(x))");
  }
  {
    Model m = chain({{"a", "b"}});
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"b"});
    m.set_true("u0", "P3", {"a"});
    m.set_true("u0", "P3", {"b"});
    push("three-letters", m, 3, "forall x. P3(x) & exists x. P1(x) & exists x. P2(x)");
  }
  return out;
}

// Intuitionistic countermodels for positive binary-letter formulas.
inline std::vector<BinaryElimCase> binary_elim_corpus() {
  std::vector<BinaryElimCase> out;
  auto single = [&](std::set<Individual> dom) {
    Model m;
    m.mode = Mode::Intuitionistic;
    m.set_domain("u0", std::move(dom));
    m.frame().add_edge("u0", "u0");
    return m;
  };
  auto two_chain = [&](std::set<Individual> dom) {
    Model m;
    m.mode = Mode::Intuitionistic;
    m.set_domain("u0", dom);
    m.set_domain("u1", dom);
    m.frame().add_edge("u0", "u1");
    m.pf.frame = closure(m.pf.frame, ClosureKind::ReflexiveTransitive);
    return m;
  };
  {
    Model m = single({"a", "b"});
    out.push_back({"total-empty", m, "u0", parse("forall x. forall y. Q(x,y)"), "Q"});
  }
  {
    Model m = single({"a", "b"});
    m.set_true("u0", "Q", {"a", "a"});
    out.push_back({"total-partial", m, "u0", parse("forall x. forall y. Q(x,y)"), "Q"});
  }
  {
    Model m = single({"a", "b"});
    out.push_back({"serial-empty", m, "u0", parse("forall x. exists y. Q(x,y)"), "Q"});
  }
  {
    Model m = single({"a", "b"});
    m.set_true("u0", "Q", {"a", "b"});
    out.push_back({"diag", m, "u0", parse("exists x. Q(x,x)"), "Q"});
  }
  {
    Model m = single({"a", "b"});
    m.set_true("u0", "Q", {"a", "b"});
    out.push_back({"symmetry", m, "u0", parse("forall x. forall y. (Q(x,y) -> Q(y,x))"), "Q"});
  }
  {
    Model m = two_chain({"a", "b"});
    m.set_true("u1", "Q", {"a", "b"});
    out.push_back({"decided", m, "u0", parse("forall x. forall y. (Q(x,y) | (Q(x,y) -> q))"), "Q"});
  }
  {
    Model m = single({"a", "b"});
    m.set_true("u0", "Q", {"a", "a"});
    m.set_true("u0", "Q", {"b", "b"});
    out.push_back({"no-common-target", m, "u0", parse("exists y. forall x. Q(x,y)"), "Q"});
  }
  {
    Model m = single({"a", "b"});
    m.set_true("u0", "Q", {"a", "b"});
    out.push_back({"converse", m, "u0",
                   parse("forall x. ((exists y. Q(x,y)) -> exists y. Q(y,x))"), "Q"});
  }
  {
    Model m = single({"a", "b"});
    m.set_true("u0", "Q", {"a", "b"});
    out.push_back({"reflexive-head", m, "u0", parse("forall x. forall y. (Q(x,y) -> Q(x,x))"), "Q"});
  }
  {
    Model m = two_chain({"a", "b"});
    m.set_true("u1", "Q", {"a", "a"});
    m.set_true("u1", "Q", {"a", "b"});
    m.set_true("u1", "Q", {"b", "a"});
    m.set_true("u1", "Q", {"b", "b"});
    out.push_back({"eventually-total", m, "u0", parse("forall x. ((forall y. Q(x,y)) -> q)"), "Q"});
  }
  return out;
}

// Positive two-variable countermodel corpus for the single-letter
// substitution; domains have at least three individuals.
inline std::vector<IntCase> qint_corpus() {
  std::vector<IntCase> out;
  auto single = [&] {
    Model m;
    m.mode = Mode::Intuitionistic;
    m.set_domain("u0", {"a", "b", "c"});
    m.frame().add_edge("u0", "u0");
    return m;
  };
  auto two_chain = [&] {
    Model m;
    m.mode = Mode::Intuitionistic;
    m.set_domain("u0", {"a", "b", "c"});
    m.set_domain("u1", {"a", "b", "c"});
    m.frame().add_edge("u0", "u1");
    m.pf.frame = closure(m.pf.frame, ClosureKind::ReflexiveTransitive);
    return m;
  };
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    out.push_back({"forall", m, "u0", parse("forall x. P1(x)"), 2});
  }
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    out.push_back({"imp", m, "u0", parse("forall x. (P1(x) -> P2(x))"), 2});
  }
  {
    Model m = single();
    out.push_back({"exists", m, "u0", parse("exists x. P1(x)"), 2});
  }
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"b"});
    out.push_back({"cover", m, "u0", parse("forall x. (P1(x) | P2(x))"), 2});
  }
  {
    Model m = two_chain();
    m.set_true("u1", "P1", {"a"});
    out.push_back({"growth", m, "u0", parse("(exists x. P1(x)) -> exists x. P2(x)"), 2});
  }
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    out.push_back({"spread", m, "u0", parse("forall x. forall y. (P1(x) -> P1(y))"), 2});
  }
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"a"});
    out.push_back({"guarded-all", m, "u0", parse("forall x. (P1(x) -> forall y. P2(y))"), 2});
  }
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P1", {"b"});
    m.set_true("u0", "P2", {"c"});
    out.push_back({"split", m, "u0", parse("(forall x. P1(x)) | forall x. P2(x)"), 2});
  }
  {
    Model m = two_chain();
    m.set_true("u1", "P1", {"a"});
    m.set_true("u1", "P1", {"b"});
    m.set_true("u1", "P1", {"c"});
    out.push_back({"late-total", m, "u0", parse("(forall x. P1(x)) | exists x. P2(x)"), 2});
  }
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    m.set_true("u0", "P2", {"b"});
    m.set_true("u0", "P3", {"c"});
    out.push_back({"three-letters", m, "u0",
                   parse("(forall x. (P1(x) | P2(x) | P3(x))) -> exists x. (P1(x) & P2(x))"), 3});
  }
  return out;
}

// Visser-semantics countermodels (transitive, antisymmetric, irreflexive).
inline std::vector<IntCase> qfl_corpus() {
  std::vector<IntCase> out;
  auto single = [&] {
    Model m;
    m.mode = Mode::Visser;
    m.set_domain("u0", {"a", "b", "c"});
    return m;
  };
  auto two_chain = [&] {
    Model m;
    m.mode = Mode::Visser;
    m.set_domain("u0", {"a", "b", "c"});
    m.set_domain("u1", {"a", "b", "c"});
    m.frame().add_edge("u0", "u1");
    return m;
  };
  auto three_chain = [&] {
    Model m;
    m.mode = Mode::Visser;
    for (int i = 0; i < 3; ++i) m.set_domain("u" + std::to_string(i), {"a", "b", "c"});
    m.frame().add_edge("u0", "u1");
    m.frame().add_edge("u1", "u2");
    m.frame().add_edge("u0", "u2");
    return m;
  };
  {
    Model m = single();
    out.push_back({"exists-empty", m, "u0", parse("exists x. P1(x)"), 2});
  }
  {
    Model m = two_chain();
    m.set_true("u1", "P1", {"a"});
    out.push_back({"forall-partial", m, "u0", parse("forall x. P1(x)"), 2});
  }
  {
    // terminal worlds satisfy every implication vacuously, so the failing
    // implication needs a world with a successor
    Model m = three_chain();
    m.set_true("u1", "P1", {"a"});
    m.set_true("u2", "P1", {"a"});
    out.push_back({"imp", m, "u0", parse("forall x. (P1(x) -> P2(x))"), 2});
  }
  {
    Model m = two_chain();
    m.set_true("u1", "P1", {"a"});
    m.set_true("u1", "P2", {"b"});
    out.push_back({"cover", m, "u0", parse("forall x. (P1(x) | P2(x))"), 2});
  }
  {
    Model m = three_chain();
    m.set_true("u2", "P1", {"a"});
    out.push_back({"block", m, "u0", parse("forall x. forall y. (P1(x) | P1(y) -> P2(x))"), 2});
  }
  {
    Model m = three_chain();
    m.set_true("u1", "P1", {"a"});
    m.set_true("u2", "P1", {"a"});
    out.push_back({"sing", m, "u0", parse("forall x. forall y. (P1(x) -> P1(y))"), 2});
  }
  {
    Model m = single();
    m.set_true("u0", "P1", {"a"});
    out.push_back({"local-exists", m, "u0", parse("exists x. (P1(x) & P2(x))"), 2});
  }
  {
    Model m = three_chain();
    m.set_true("u2", "P2", {"a"});
    m.set_true("u2", "P2", {"b"});
    m.set_true("u2", "P2", {"c"});
    out.push_back({"late", m, "u0", parse("(forall x. P2(x)) -> forall x. P1(x)"), 2});
  }
  {
    Model m = two_chain();
    m.set_true("u1", "P1", {"a"});
    m.set_true("u1", "P1", {"b"});
    m.set_true("u1", "P2", {"c"});
    out.push_back({"split", m, "u0", parse("(forall x. P1(x)) | forall x. P2(x)"), 2});
  }
  {
    Model m = two_chain();
    m.set_true("u1", "P1", {"a"});
    m.set_true("u1", "P2", {"b"});
    m.set_true("u1", "P3", {"a"});
    out.push_back({"three-letters", m, "u0", parse("forall x. (P1(x) | P2(x) | P3(x))"), 3});
  }
  return out;
}

}  // namespace kripke
