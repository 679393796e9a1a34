#include <doctest.h>

#include "kripke/bounded_sat.hpp"
#include "kripke/modal_reduction.hpp"
#include "kripke/model_json.hpp"
#include "kripke/parse.hpp"
#include "kripke/tiles.hpp"
#include "kripke/torus_model.hpp"

using namespace kripke;

namespace {
TileSet uniform_ts() { return TileSet{{{"t0", "c", "c", "c", "c"}}}; }
TileSet checker_ts() {
  return TileSet{{{"t0", "a", "b", "a", "b"}, {"t1", "b", "a", "b", "a"}}};
}
}  // namespace

TEST_CASE("check_tiling: adjacency with and without wrap") {
  Tiling one{1, 1, true, {{"t0"}}};
  CHECK(check_tiling(uniform_ts(), one));
  TileSet stripes{{{"t0", "c", "c", "u", "d"}, {"t1", "c", "c", "d", "u"}}};
  Tiling bad{1, 2, true, {{"t0"}, {"t0"}}};
  CHECK(!check_tiling(stripes, bad));
  Tiling good{1, 2, true, {{"t0"}, {"t1"}}};
  CHECK(check_tiling(stripes, good));
  CHECK_THROWS(check_tiling(uniform_ts(), Tiling{1, 1, true, {{"nope"}}}));
}

TEST_CASE("periodic tilings unfold to valid plain grids") {
  auto r = find_periodic_tiling(checker_ts(), 2, 2);
  REQUIRE(r.status == TilingSearchResult::Status::Found);
  Tiling grid = unfold(*r.tiling, 3, 3);
  CHECK(grid.width == 6);
  CHECK(!grid.torus);
  CHECK(check_tiling(checker_ts(), grid));
}

TEST_CASE("find_periodic_tiling: verdicts and determinism") {
  CHECK(find_periodic_tiling(uniform_ts(), 1, 1).status == TilingSearchResult::Status::Found);
  CHECK(find_periodic_tiling(checker_ts(), 1, 1).status == TilingSearchResult::Status::None);
  auto a = find_periodic_tiling(checker_ts(), 2, 2);
  auto b = find_periodic_tiling(checker_ts(), 2, 2);
  REQUIRE(a.status == TilingSearchResult::Status::Found);
  CHECK(a.tiling->cells == b.tiling->cells);  // identical runs, identical output
  TileSet nomatch{{{"t0", "a", "b", "c", "c"}}};
  for (int w = 1; w <= 3; ++w)
    for (int h = 1; h <= 3; ++h)
      CHECK(find_periodic_tiling(nomatch, w, h).status == TilingSearchResult::Status::None);
  CHECK(find_periodic_tiling(checker_ts(), 3, 3, 5).status == TilingSearchResult::Status::Budget);
}

TEST_CASE("torus countermodel: verified construction") {
  auto r = find_periodic_tiling(uniform_ts(), 1, 1);
  auto tc = torus_countermodel(uniform_ts(), *r.tiling);
  CHECK(validate(tc.model).empty());
  Evaluator ev(tc.model);
  auto enc = encode_tiling_full(uniform_ts(), TilingVariant::Int);
  CHECK(ev.sat_at(tc.root, enc.psi));
  CHECK(!ev.sat_at(tc.root, enc.phi));
  // every cell has horizontal and vertical successors on a torus
  CHECK(ev.sat_at(tc.root, parse("forall x. exists y. H(x,y) & forall x. exists y. V(x,y)")));
  // q is false at every world
  for (const auto& w : tc.model.frame().worlds) CHECK(!ev.sat_at(w, parse("q")));
  Tiling fake{1, 1, false, {{"t0"}}};
  CHECK_THROWS(torus_countermodel(uniform_ts(), fake));
}

TEST_CASE("bounded_sat: basic verdicts") {
  SearchBounds b;
  b.max_worlds = 1;
  b.max_domain = 1;
  auto r = bounded_sat(parse("exists x. P(x)"), b);
  REQUIRE(r.status == SatResult::Status::Found);
  CHECK(r.model->holds(*r.world, "P", {"a0"}));
  CHECK(bounded_sat(parse("forall x. (P(x) & ~P(x))"), b).status == SatResult::Status::None);
  SearchBounds tiny = b;
  tiny.budget = 1;
  CHECK(bounded_sat(parse("box bot & dia top"), tiny).status == SatResult::Status::Budget);
  CHECK_THROWS(bounded_sat(parse("P(x)"), b));  // open formulas rejected
}

TEST_CASE("bounded_sat finds the bf countermodel with expanding domains") {
  SearchBounds b;
  b.max_worlds = 2;
  b.max_domain = 2;
  auto r = bounded_sat(neg(bf_formula()), b);
  REQUIRE(r.status == SatResult::Status::Found);
  CHECK(validate(*r.model).empty());
  // and with constant domains forced there is none at this scale
  SearchBounds c = b;
  c.constant_domains = true;
  CHECK(bounded_sat(neg(bf_formula()), c).status == SatResult::Status::None);
}

TEST_CASE("bounded_sat: minimal bounds on a known-model library") {
  struct Entry {
    const char* formula;
    int worlds, domain;
    Mode mode;
  };
  // minimal (worlds, domain) verified by finding at the bound and
  // exhausting below it
  std::vector<Entry> lib{
      {"exists x. P(x)", 1, 1, Mode::Modal},
      {"exists x. exists y. (P(x) & ~P(y))", 1, 2, Mode::Modal},
      {"dia box bot", 2, 1, Mode::Modal},
      {"exists x. (P(x) & dia ~P(x))", 2, 1, Mode::Modal},
      {"dia dia top & box box box bot", 3, 1, Mode::Modal},
      {"exists x. (P(x) & dia (~P(x) & dia (P(x) & box P(x))))", 3, 1, Mode::Modal},
      {"exists x. (top -> P(x)) & exists x. ((top -> P(x)) -> bot)", 1, 2, Mode::Intuitionistic},
      {"exists x. ((top -> P(x)) -> bot)", 1, 1, Mode::Intuitionistic},
      {"forall x. bot", 1, 1, Mode::Visser},
      {"exists x. P(x) & ~forall x. P(x)", 1, 2, Mode::Modal},
  };
  for (const auto& e : lib) {
    CAPTURE(e.formula);
    FormulaPtr f = parse(e.formula);
    SearchBounds at;
    at.max_worlds = e.worlds;
    at.max_domain = e.domain;
    at.mode = e.mode;
    CHECK(bounded_sat(f, at).status == SatResult::Status::Found);
    if (e.worlds > 1) {
      SearchBounds below = at;
      below.max_worlds = e.worlds - 1;
      CHECK(bounded_sat(f, below).status == SatResult::Status::None);
    }
    if (e.domain > 1) {
      SearchBounds below = at;
      below.max_domain = e.domain - 1;
      CHECK(bounded_sat(f, below).status == SatResult::Status::None);
    }
  }
}

TEST_CASE("bounded_sat: frame class filters") {
  SearchBounds b;
  b.max_worlds = 2;
  b.max_domain = 1;
  b.frame_class = {FrameProperty::Reflexive};
  CHECK(bounded_sat(parse("box bot"), b).status == SatResult::Status::None);
  b.frame_class = {FrameProperty::Transitive, FrameProperty::Acyclic};
  auto r = bounded_sat(parse("dia top"), b);
  REQUIRE(r.status == SatResult::Status::Found);
  CHECK(r.model->frame().irreflexive());
}

TEST_CASE("symmetry reduction never changes the verdict") {
  const char* formulas[] = {
      "exists x. P(x) & dia forall x. ~P(x)",
      "box exists x. P(x) & dia top",
      "forall x. (P(x) -> box P(x)) & exists x. P(x)",
      "dia dia top & box box bot",
  };
  for (const char* s : formulas) {
    FormulaPtr f = parse(s);
    for (int w = 1; w <= 2; ++w) {
      SearchBounds plain;
      plain.max_worlds = w;
      plain.max_domain = 2;
      plain.symmetry_reduction = false;
      SearchBounds reduced = plain;
      reduced.symmetry_reduction = true;
      CHECK(bounded_sat(f, plain).status == bounded_sat(f, reduced).status);
    }
  }
}

TEST_CASE("bounded_sat output is deterministic and verified") {
  FormulaPtr f = parse("exists x. (P(x) & dia ~P(x))");
  SearchBounds b;
  b.max_worlds = 2;
  b.max_domain = 1;
  auto r1 = bounded_sat(f, b);
  auto r2 = bounded_sat(f, b);
  REQUIRE(r1.status == SatResult::Status::Found);
  CHECK(model_to_json(*r1.model).dump() == model_to_json(*r2.model).dump());
  CHECK(*r1.world == *r2.world);
}
