#include <doctest.h>

#include <random>

#include "kripke/formula.hpp"
#include "kripke/parse.hpp"
#include "kripke/subst.hpp"

using namespace kripke;

namespace {

// Random formula generator for round-trip and substitution properties.
FormulaPtr random_formula(std::mt19937& rng, int depth, bool positive_only) {
  std::uniform_int_distribution<int> pick(0, positive_only ? 8 : 10);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<int> var(0, 1);
  const char* letters[] = {"P", "Q", "R"};
  const char* vars[] = {"x", "y"};
  if (depth <= 0) {
    int c = pick(rng) % (positive_only ? 3 : 4);
    switch (c) {
      case 0: return atom(letters[letter(rng)], {Variable{vars[var(rng)]}});
      case 1: return prop("q0");
      case 2: return top();
      default: return bot();
    }
  }
  switch (pick(rng)) {
    case 0: return conj(random_formula(rng, depth - 1, positive_only),
                        random_formula(rng, depth - 1, positive_only));
    case 1: return disj(random_formula(rng, depth - 1, positive_only),
                        random_formula(rng, depth - 1, positive_only));
    case 2: return imp(random_formula(rng, depth - 1, positive_only),
                       random_formula(rng, depth - 1, positive_only));
    case 3: return box(random_formula(rng, depth - 1, positive_only));
    case 4: return dia(random_formula(rng, depth - 1, positive_only));
    case 5: return forall(Variable{vars[var(rng)]}, random_formula(rng, depth - 1, positive_only));
    case 6: return exists(Variable{vars[var(rng)]}, random_formula(rng, depth - 1, positive_only));
    case 7: return atom(letters[letter(rng)], {Variable{vars[var(rng)]}});
    case 8: return top();
    case 9: return neg(random_formula(rng, depth - 1, positive_only));
    default: return bot();
  }
}

}  // namespace

TEST_CASE("parse: grammar basics") {
  CHECK(eq(parse("P(x) & box P(x)"), conj(atom("P", {"x"}), box(atom("P", {"x"})))));
  // top -> P(x) is the intuitionistic box of P(x)
  CHECK(eq(parse("top -> P(x)"), imp(top(), atom("P", {"x"}))));
  // & and | bind tighter than ->
  auto f = parse("P(x) & Q(x) -> R(x) | S(x)");
  CHECK(f->op == Op::Imp);
  CHECK(f->lhs->op == Op::And);
  CHECK(f->rhs->op == Op::Or);
  // -> is right-associative
  auto g = parse("P(x) -> Q(x) -> R(x)");
  CHECK(g->op == Op::Imp);
  CHECK(g->rhs->op == Op::Imp);
  // quantifiers scope to the end or a closing paren
  auto h = parse("forall x. P(x) -> Q(x)");
  CHECK(h->op == Op::Forall);
  CHECK(h->lhs->op == Op::Imp);
  auto h2 = parse("(forall x. P(x)) -> Q(y)");
  CHECK(h2->op == Op::Imp);
}

TEST_CASE("parse: errors carry positions") {
  CHECK_THROWS_AS(parse("P(x) &"), ParseError);
  CHECK_THROWS_AS(parse("P(x) Q(x)"), ParseError);
  CHECK_THROWS_AS(parse("P(x) & P(x,y)"), ParseError);  // arity mismatch
  CHECK_THROWS_AS(parse("forall x. x"), ParseError);    // variable as proposition
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("P(x) & P(x,y)");
  } catch (const ParseError& e) {
    CHECK(e.position > 0);
  }
}

TEST_CASE("print: canonical forms") {
  CHECK(print(box(atom("P", {"x"}))) == "box P(x)");
  CHECK(print(box_plus(atom("P", {"x"}))) == "(P(x) & box P(x))");
  CHECK(print(forall(Variable{"x"}, atom("P", {"x"}))) == "forall x. P(x)");
}

TEST_CASE("print/parse round trip on a generated corpus") {
  std::mt19937 rng(0);
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_formula(rng, 4, false);
    CAPTURE(print(f));
    CHECK(eq(parse(print(f)), f));
  }
}

TEST_CASE("profile: letters, variables, positivity, closedness") {
  auto p1 = profile(atom("P", {"x"}));
  CHECK(p1.letters.at("P").arity == 1);
  CHECK(p1.letters.at("P").occurrences == 1);
  CHECK(p1.positive);
  CHECK(!p1.closed);

  CHECK(!profile(neg(atom("P", {"x"}))).positive);
  CHECK(!profile(bot()).positive);
  CHECK(profile(top()).positive);

  auto p2 = profile(parse("forall x. exists y. (P(x) & Q(x,y))"));
  CHECK(p2.closed);
  CHECK(p2.variable_count() == 2);
  CHECK(p2.letters.at("Q").arity == 2);
}

TEST_CASE("substitute_atoms: renaming, capture, identity") {
  Variable x{"x"}, y{"y"};
  std::map<std::string, AtomTemplate> map;
  map.emplace("P", AtomTemplate{x, dia(atom("R", {x}))});
  // renaming the parameter to the atom's variable
  CHECK(eq(substitute_atoms(atom("P", {y}), map), dia(atom("R", {y}))));
  // letters not in the map are untouched
  CHECK(eq(substitute_atoms(atom("Q", {y}), map), atom("Q", {y})));
  // capture: a template binding the target variable renames it apart
  std::map<std::string, AtomTemplate> cap;
  cap.emplace("P", AtomTemplate{x, forall(y, conj(atom("R", {x}), atom("S", {y})))});
  FormulaPtr out = substitute_atoms(atom("P", {y}), cap);
  CHECK(out->op == Op::Forall);
  CHECK(out->var.name == "y'");
  CHECK(eq(out->lhs, conj(atom("R", {y}), atom("S", {Variable{"y'"}}))));
  // rebinding of the same name inside the body shadows the parameter
  std::map<std::string, AtomTemplate> shadow;
  shadow.emplace("P", AtomTemplate{x, imp(exists(x, atom("R", {x})), atom("R", {x}))});
  FormulaPtr out2 = substitute_atoms(atom("P", {y}), shadow);
  CHECK(eq(out2, imp(exists(x, atom("R", {x})), atom("R", {y}))));
  // template with a stray free variable is rejected
  std::map<std::string, AtomTemplate> badmap;
  badmap.emplace("P", AtomTemplate{x, atom("R", {y})});
  CHECK_THROWS(substitute_atoms(atom("P", {x}), badmap));
  // arity mismatch is rejected
  std::map<std::string, AtomTemplate> mono;
  mono.emplace("P", AtomTemplate{x, atom("R", {x})});
  CHECK_THROWS(substitute_atoms(atom("P", {x, y}), mono));
}

TEST_CASE("substitution preserves positivity for positive templates") {
  std::mt19937 rng(7);
  Variable x{"x"};
  std::map<std::string, AtomTemplate> map;
  map.emplace("P", AtomTemplate{x, disj(atom("T", {x}), exists(Variable{"y"}, atom("U", {Variable{"y"}})))});
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = random_formula(rng, 4, true);
    if (!profile(f).positive) continue;
    CHECK(profile(substitute_atoms(f, map)).positive);
  }
}

TEST_CASE("substitution keeps variables within the template/input union") {
  std::mt19937 rng(11);
  Variable x{"x"};
  std::map<std::string, AtomTemplate> map;
  map.emplace("P", AtomTemplate{x, dia(atom("R", {x}))});
  map.emplace("Q", AtomTemplate{x, conj(atom("R", {x}), box(atom("R", {x})))});
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = random_formula(rng, 4, false);
    auto before = profile(f).all_variables;
    auto after = profile(substitute_atoms(f, map)).all_variables;
    for (const auto& v : after) {
      bool known = before.count(v) > 0 || v.name == "x";
      CHECK(known);
    }
  }
}

TEST_CASE("box_power: shapes and exact node counts") {
  FormulaPtr p = atom("P", {"x"});
  CHECK(eq(box_power(p, 0, PowerKind::BoxExact), p));
  CHECK(eq(box_power(p, 2, PowerKind::BoxExact), box(box(p))));
  CHECK(eq(box_power(p, 1, PowerKind::BoxUpTo), conj(p, box(p))));
  CHECK(eq(box_power(p, 1, PowerKind::DiaExact), neg(box(neg(p)))));
  CHECK_THROWS(box_power(p, -1, PowerKind::BoxExact));

  // independent recursive size oracle for the up-to form
  auto exact_count = [&](int n) { return static_cast<std::size_t>(n) + node_count(p); };
  std::size_t upto = node_count(p);  // box^{<=0}
  for (int n = 1; n <= 5; ++n) {
    upto = upto + 1 + exact_count(n);  // conj node + box^n
    CHECK(node_count(box_power(p, n, PowerKind::BoxUpTo)) == upto);
  }
}

TEST_CASE("expand_propositional replaces 0-ary letters with fresh monadic ones") {
  FormulaPtr f = parse("q & (P(x) -> q)");
  FormulaPtr g = expand_propositional(f);
  auto pr = profile(g);
  CHECK(pr.letters.count("Q") == 1);
  CHECK(pr.letters.at("Q").arity == 1);
  CHECK(pr.letters.count("q") == 0);
  // collision: a 0-ary letter whose capitalisation is taken gets primed
  FormulaPtr h = expand_propositional(parse("p & P(x)"));
  auto pr2 = profile(h);
  CHECK(pr2.letters.count("P'") == 1);
  CHECK(pr2.letters.at("P").arity == 1);
}

TEST_CASE("node_count is the written-out tree size") {
  FormulaPtr p = atom("P", {"x"});
  CHECK(node_count(p) == 1);
  CHECK(node_count(conj(p, p)) == 3);  // shared child counts per occurrence
  CHECK(node_count(forall(Variable{"x"}, box(p))) == 3);
}
