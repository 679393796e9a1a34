// kwb: a workbench for quantified modal and intuitionistic Kripke logics:
// parsing and printing, model checking, the single-letter reduction passes,
// gadget and addressing-frame emission, tiling tools, bounded model search,
// and the named verification suites.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kripke/bounded_sat.hpp"
#include "kripke/corpus.hpp"
#include "kripke/eval.hpp"
#include "kripke/frame_f.hpp"
#include "kripke/int_reduction.hpp"
#include "kripke/modal_reduction.hpp"
#include "kripke/model_json.hpp"
#include "kripke/parse.hpp"
#include "kripke/suites.hpp"
#include "kripke/tiles.hpp"
#include "kripke/torus_model.hpp"

using namespace kripke;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  unsigned seed = 0;
  long long budget = 50'000'000;
  bool trace = false;
  std::string format = "json";
};

std::string read_input(const std::string& formula_arg) {
  if (!formula_arg.empty()) return formula_arg;
  std::ostringstream ss;
  ss << std::cin.rdbuf();
  return ss.str();
}

ordered_json formula_ast(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Atom: {
      ordered_json j{{"op", "atom"}, {"letter", f->letter}};
      auto args = ordered_json::array();
      for (const auto& v : f->args) args.push_back(v.name);
      j["args"] = args;
      return j;
    }
    case Op::Bot: return {{"op", "bot"}};
    case Op::Top: return {{"op", "top"}};
    case Op::Neg: return {{"op", "neg"}, {"body", formula_ast(f->lhs)}};
    case Op::Box: return {{"op", "box"}, {"body", formula_ast(f->lhs)}};
    case Op::Dia: return {{"op", "dia"}, {"body", formula_ast(f->lhs)}};
    case Op::And: return {{"op", "and"}, {"lhs", formula_ast(f->lhs)}, {"rhs", formula_ast(f->rhs)}};
    case Op::Or: return {{"op", "or"}, {"lhs", formula_ast(f->lhs)}, {"rhs", formula_ast(f->rhs)}};
    case Op::Imp: return {{"op", "imp"}, {"lhs", formula_ast(f->lhs)}, {"rhs", formula_ast(f->rhs)}};
    case Op::Forall:
      return {{"op", "forall"}, {"var", f->var.name}, {"body", formula_ast(f->lhs)}};
    case Op::Exists:
      return {{"op", "exists"}, {"var", f->var.name}, {"body", formula_ast(f->lhs)}};
  }
  return {};
}

TileSet tiles_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tile file " + path);
  json j;
  in >> j;
  if (!j.is_object() || !j.contains("tiles"))
    throw std::runtime_error("tile json: expected {\"tiles\": [...]}");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "tiles") throw std::runtime_error("tile json: unknown key '" + key + "'");
  }
  TileSet ts;
  for (const auto& t : j["tiles"]) {
    for (const auto& [key, value] : t.items()) {
      (void)value;
      if (key != "name" && key != "left" && key != "right" && key != "up" && key != "down")
        throw std::runtime_error("tile json: unknown tile key '" + key + "'");
    }
    ts.tiles.push_back({t.at("name").get<std::string>(), t.at("left").get<std::string>(),
                        t.at("right").get<std::string>(), t.at("up").get<std::string>(),
                        t.at("down").get<std::string>()});
  }
  ts.check();
  return ts;
}

Tiling tiling_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tiling file " + path);
  json j;
  in >> j;
  Tiling t;
  t.width = j.at("width").get<int>();
  t.height = j.at("height").get<int>();
  t.torus = j.at("torus").get<bool>();
  for (const auto& row : j.at("cells")) {
    std::vector<std::string> r;
    for (const auto& c : row) r.push_back(c.get<std::string>());
    t.cells.push_back(std::move(r));
  }
  return t;
}

ordered_json tiling_to_json(const Tiling& t) {
  ordered_json j;
  j["width"] = t.width;
  j["height"] = t.height;
  j["torus"] = t.torus;
  j["cells"] = t.cells;
  return j;
}

Model model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path);
  json j;
  in >> j;
  return model_from_json(j);
}

Mode mode_from_name(const std::string& s) {
  if (s == "modal") return Mode::Modal;
  if (s == "intuitionistic" || s == "int") return Mode::Intuitionistic;
  if (s == "visser") return Mode::Visser;
  throw std::runtime_error("unknown mode '" + s + "'");
}

Track track_from_name(const std::string& s) {
  if (s == "k") return Track::K;
  if (s == "gl") return Track::GL;
  if (s == "grz") return Track::Grz;
  if (s == "ktb") return Track::KTB;
  throw std::runtime_error("unknown track '" + s + "'");
}

// A formula-to-formula pass, configurable from the command line; shared by
// `transform` and `pipe`.
struct PassOptions {
  int n = 0;  // 0 = infer from the formula
  std::string track = "gl";
  std::string letter;                      // eliminate-binary / sib subject
  std::vector<std::string> fresh;          // eliminate-binary fresh letters
  std::string target = "P";                // sib target
};

FormulaPtr run_pass(const std::string& spec, FormulaPtr f, const PassOptions& opt) {
  std::string name = spec;
  std::vector<std::string> args;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) args.push_back(item);
  }
  auto ctx_for = [&](const FormulaPtr& g) {
    if (opt.n > 0) {
      auto ctx = ReductionContext::canonical(static_cast<std::size_t>(opt.n),
                                             track_from_name(opt.track));
      // fall back to a derived context when the formula's letters do not
      // fit the canonical naming (e.g. re-embedding an already-reduced
      // formula at the end of a pipe)
      bool fits = true;
      for (const auto& [name, info] : profile(g).letters) {
        bool known = name == ctx.fresh;
        for (const auto& srcname : ctx.sources) known = known || srcname == name;
        fits = fits && known;
      }
      if (fits) return ctx;
    }
    return ReductionContext::for_formula(g, track_from_name(opt.track));
  };
  if (name == "prime") return prime_embed(f, ctx_for(f));
  if (name == "star") return star_subst(f, ctx_for(f));
  if (name == "embed-e") return embed_e(f, ctx_for(f));
  if (name == "bf") return bf_formula(opt.target.empty() ? "P" : opt.target);
  if (name == "godel") return godel_translate(f);
  if (name == "expand-prop") return expand_propositional(f);
  if (name == "sib") {
    std::string s = !args.empty() ? args[0] : (opt.letter.empty() ? "S" : opt.letter);
    std::string p = args.size() > 1 ? args[1] : opt.target;
    return sib_simulate(f, s, p);
  }
  if (name == "eliminate-binary") {
    std::string q = !args.empty() ? args[0] : opt.letter;
    if (q.empty()) throw std::runtime_error("eliminate-binary needs a letter (use --letter or :Q,...)");
    BinaryElimNames names{q + "1", q + "2", "r_" + q, "s_" + q};
    if (args.size() == 5) names = {args[1], args[2], args[3], args[4]};
    else if (!opt.fresh.empty()) {
      if (opt.fresh.size() != 4) throw std::runtime_error("--fresh wants four names");
      names = {opt.fresh[0], opt.fresh[1], opt.fresh[2], opt.fresh[3]};
    }
    return eliminate_binary(f, q, names);
  }
  if (name == "star-int") {
    int n = opt.n;
    if (n == 0) {
      for (const auto& [nm, info] : profile(f).letters)
        if (info.arity == 1) ++n;
    }
    return star_subst_int(f, n);
  }
  throw std::runtime_error("unknown pass '" + name + "'");
}

const std::vector<std::string> kFormulaPasses = {
    "prime", "star", "embed-e", "bf", "godel", "expand-prop", "sib", "eliminate-binary",
    "star-int"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kwb, a Kripke logic workbench"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for randomized corpora (default 0)");
  app.add_option("--budget", g.budget, "enumeration budget");
  app.add_flag("--trace", g.trace, "dump intermediate artifacts to stderr");
  app.add_option("--format", g.format, "output format: json or plain")
      ->check(CLI::IsMember({"json", "plain"}));

  std::string formula_arg, model_path, world, assign_arg, mode_name_arg = "modal";
  std::string tiles_path, tiling_path, variant = "int", suite, pass_name;
  std::string track = "gl", pivot = "a", partner = "b", letter, target = "P";
  std::vector<std::string> fresh_names, domain_list{"a", "b"}, pipe_passes, class_list;
  int k_level = 1, depth = 2, width = 1, height = 1, n_opt = 0, size_cap = 8;
  int max_worlds = 2, max_domain = 1;
  bool constant_domains = false;
  std::string which = "phi";

  auto* cparse = app.add_subcommand("parse", "parse a formula and print its tree");
  cparse->add_option("formula", formula_arg, "formula text (stdin when omitted)");

  auto* cprint = app.add_subcommand("print", "parse a formula and print its canonical form");
  cprint->add_option("formula", formula_arg);

  auto* cprofile = app.add_subcommand("profile", "letters, variables, positivity, closedness");
  cprofile->add_option("formula", formula_arg);

  auto* ceval = app.add_subcommand("eval", "evaluate a formula in a model");
  ceval->add_option("--model", model_path, "model JSON file")->required();
  ceval->add_option("--world", world, "world to evaluate at")->required();
  ceval->add_option("--formula,-f,formula", formula_arg);
  ceval->add_option("--assign", assign_arg, "assignment, e.g. x=a,y=b (omit for all assignments)");

  auto* ctransform = app.add_subcommand("transform", "apply one reduction pass");
  ctransform->add_option("--pass", pass_name, "pass name")
      ->required()
      ->check(CLI::IsMember(kFormulaPasses));
  ctransform->add_option("--formula,-f,formula", formula_arg);
  ctransform->add_option("--n", n_opt, "number of source letters (0 = infer)");
  ctransform->add_option("--track", track)->check(CLI::IsMember({"k", "gl", "grz", "ktb"}));
  ctransform->add_option("--letter", letter, "subject letter (eliminate-binary, sib)");
  ctransform->add_option("--fresh", fresh_names)->delimiter(',');
  ctransform->add_option("--target", target, "target letter (bf, sib)");

  auto* cgadget = app.add_subcommand("gadget", "emit a chain gadget model");
  cgadget->add_option("--track", track, "gl or ktb")->check(CLI::IsMember({"gl", "ktb"}));
  cgadget->add_option("--k", k_level, "chain level")->required();
  cgadget->add_option("--pivot", pivot, "pivot individual");
  cgadget->add_option("--domain", domain_list, "domain individuals")->delimiter(',');

  auto* cframef = app.add_subcommand("frame-f", "emit a suitably interpreted addressing frame");
  cframef->add_option("--depth", depth, "truncation depth")->required();
  cframef->add_option("--variant", variant)->check(CLI::IsMember({"int", "qfl"}));
  cframef->add_option("--domain", domain_list, "domain (>= 3 individuals)")->delimiter(',');
  cframef->add_option("--pivot", pivot);
  cframef->add_option("--partner", partner);

  auto* ctile = app.add_subcommand("encode-tiling", "encode a tile set as formulas");
  ctile->add_option("--tiles", tiles_path, "tile set JSON")->required();
  ctile->add_option("--variant", variant)->check(CLI::IsMember({"int", "visser"}));
  ctile->add_option("--which", which, "psi, phi, or both")
      ->check(CLI::IsMember({"psi", "phi", "both"}));

  auto* ccheck = app.add_subcommand("tile-check", "check a tiling against a tile set");
  ccheck->add_option("--tiles", tiles_path)->required();
  ccheck->add_option("--tiling", tiling_path)->required();

  auto* cfind = app.add_subcommand("tile-find", "search for a periodic torus tiling");
  cfind->add_option("--tiles", tiles_path)->required();
  cfind->add_option("--width", width)->required();
  cfind->add_option("--height", height)->required();

  auto* csat = app.add_subcommand("sat", "bounded satisfiability search");
  csat->add_option("--formula,-f,formula", formula_arg);
  csat->add_option("--mode", mode_name_arg)->check(CLI::IsMember({"modal", "intuitionistic", "visser"}));
  csat->add_option("--max-worlds", max_worlds)->required();
  csat->add_option("--max-domain", max_domain)->required();
  csat->add_option("--class", class_list, "required frame properties")->delimiter(',');
  csat->add_flag("--constant-domains", constant_domains);

  auto* cverify = app.add_subcommand("verify", "run a named verification suite");
  cverify->add_option("--suite", suite, "suite name")->required();
  cverify->add_option("--n", n_opt, "letter bound for the gadget lemmas");
  cverify->add_option("--size-cap", size_cap, "formula size bound");
  cverify->add_option("--max-worlds", max_worlds);
  cverify->add_option("--max-domain", max_domain);

  bool profile_output = false;
  auto* cpipe = app.add_subcommand("pipe", "compose passes left to right");
  cpipe->add_option("passes", pipe_passes, "pass names (encode-tiling may come first)");
  cpipe->add_option("--formula,-f", formula_arg);
  cpipe->add_option("--tiles", tiles_path, "tile set JSON (for a leading encode-tiling)");
  cpipe->add_option("--variant", variant)->check(CLI::IsMember({"int", "visser"}));
  cpipe->add_option("--n", n_opt);
  cpipe->add_option("--track", track)->check(CLI::IsMember({"k", "gl", "grz", "ktb"}));
  cpipe->add_flag("--profile", profile_output,
                  "print the result's profile instead of its text (deep pipelines print "
                  "exponentially larger than they evaluate)");
  ctransform->add_flag("--profile", profile_output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cparse) {
      FormulaPtr f = parse(read_input(formula_arg));
      if (g.format == "plain") std::cout << print(f) << "\n";
      else std::cout << formula_ast(f).dump(2) << "\n";
      return 0;
    }
    if (*cprint) {
      std::cout << print(parse(read_input(formula_arg))) << "\n";
      return 0;
    }
    if (*cprofile) {
      auto p = profile(parse(read_input(formula_arg)));
      ordered_json j;
      auto fv = ordered_json::array(), av = ordered_json::array();
      for (const auto& v : p.free_variables) fv.push_back(v.name);
      for (const auto& v : p.all_variables) av.push_back(v.name);
      j["freeVariables"] = fv;
      j["variables"] = av;
      auto letters = ordered_json::object();
      for (const auto& [name, info] : p.letters)
        letters[name] = {{"arity", info.arity}, {"occurrences", info.occurrences}};
      j["letters"] = letters;
      j["positive"] = p.positive;
      j["closed"] = p.closed;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*ceval) {
      Model m = model_from_file(model_path);
      if (auto bad = validate(m); !bad.empty()) {
        for (const auto& b : bad) std::cerr << "invalid model: " << b << "\n";
        return 2;
      }
      FormulaPtr f = parse(read_input(formula_arg));
      Evaluator ev(m);
      bool result;
      if (assign_arg.empty()) {
        result = ev.sat_at(world, f);
      } else {
        Assignment as;
        std::stringstream ss(assign_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
          auto eq = item.find('=');
          if (eq == std::string::npos) throw std::runtime_error("bad assignment item " + item);
          as[Variable{item.substr(0, eq)}] = item.substr(eq + 1);
        }
        result = ev.eval(world, as, f);
      }
      std::cout << (result ? "true" : "false") << "\n";
      return 0;
    }
    if (*ctransform || *cpipe) {
      PassOptions opt;
      opt.n = n_opt;
      opt.track = track;
      opt.letter = letter;
      opt.fresh = fresh_names;
      opt.target = target;
      std::vector<std::string> passes = *cpipe ? pipe_passes : std::vector<std::string>{pass_name};
      FormulaPtr f;
      std::size_t start = 0;
      if (!passes.empty() && passes[0].rfind("encode-tiling", 0) == 0) {
        TileSet ts = tiles_from_file(tiles_path);
        auto enc = encode_tiling(ts, variant == "visser" ? TilingVariant::Visser : TilingVariant::Int);
        f = enc.second;
        start = 1;
      } else if (!passes.empty() && passes[0] == "bf") {
        f = bf_formula(target);
        start = 1;
      } else {
        f = parse(read_input(formula_arg));
      }
      if (g.trace) std::cerr << "input: " << print(f) << "\n";
      for (std::size_t i = start; i < passes.size(); ++i) {
        f = run_pass(passes[i], f, opt);
        if (g.trace && !profile_output)
          std::cerr << "after " << passes[i] << ": " << print(f) << "\n";
      }
      if (profile_output) {
        auto p = profile(f);
        ordered_json j;
        auto letters = ordered_json::object();
        for (const auto& [name, info] : p.letters)
          letters[name] = {{"arity", info.arity}, {"occurrences", info.occurrences}};
        j["letters"] = letters;
        auto av = ordered_json::array();
        for (const auto& v : p.all_variables) av.push_back(v.name);
        j["variables"] = av;
        j["positive"] = p.positive;
        j["closed"] = p.closed;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << print(f) << "\n";
      }
      return 0;
    }
    if (*cgadget) {
      std::set<Individual> dom(domain_list.begin(), domain_list.end());
      Model m = build_gadget(k_level, track_from_name(track), pivot, dom);
      std::cout << model_to_json(m).dump(2) << "\n";
      return 0;
    }
    if (*cframef) {
      FrameF ff = build_frame_f(depth, variant == "qfl" ? FrameFVariant::Qfl : FrameFVariant::Int);
      std::set<Individual> dom(domain_list.begin(), domain_list.end());
      if (dom.size() < 3) dom = {"a", "b", "c"};
      Model m = a_suitable_f(ff, dom, pivot, partner);
      std::cout << model_to_json(m).dump(2) << "\n";
      return 0;
    }
    if (*ctile) {
      TileSet ts = tiles_from_file(tiles_path);
      auto enc =
          encode_tiling(ts, variant == "visser" ? TilingVariant::Visser : TilingVariant::Int);
      if (g.format == "plain") {
        if (which != "phi") std::cout << print(enc.first) << "\n";
        if (which != "psi") std::cout << print(enc.second) << "\n";
      } else {
        ordered_json j;
        if (which != "phi") j["psi"] = print(enc.first);
        if (which != "psi") j["phi"] = print(enc.second);
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
    if (*ccheck) {
      TileSet ts = tiles_from_file(tiles_path);
      Tiling t = tiling_from_file(tiling_path);
      bool ok = check_tiling(ts, t);
      std::cout << (ok ? "VALID" : "INVALID") << "\n";
      return ok ? 0 : 1;
    }
    if (*cfind) {
      TileSet ts = tiles_from_file(tiles_path);
      auto res = find_periodic_tiling(ts, width, height, g.budget);
      if (res.status == TilingSearchResult::Status::Budget) {
        std::cout << "BUDGET\n";
        return 3;
      }
      if (res.status == TilingSearchResult::Status::None) {
        std::cout << "NONE\n";
        return 1;
      }
      std::cout << tiling_to_json(*res.tiling).dump(2) << "\n";
      return 0;
    }
    if (*csat) {
      FormulaPtr f = parse(read_input(formula_arg));
      SearchBounds b;
      b.max_worlds = max_worlds;
      b.max_domain = max_domain;
      b.mode = mode_from_name(mode_name_arg);
      b.constant_domains = constant_domains;
      b.budget = g.budget;
      for (const auto& c : class_list) {
        auto pr = frame_property_from_name(c);
        if (!pr) throw std::runtime_error("unknown frame class '" + c + "'");
        b.frame_class.insert(*pr);
      }
      SatResult res = bounded_sat(f, b);
      if (res.status == SatResult::Status::Budget) {
        std::cout << "BUDGET\n";
        return 3;
      }
      if (res.status == SatResult::Status::None) {
        std::cout << "NONE\n";
        return 1;
      }
      std::cerr << "witness world: " << *res.world << " (candidates: " << res.candidates << ")\n";
      std::cout << model_to_json(*res.model).dump(2) << "\n";
      return 0;
    }
    if (*cverify) {
      SuiteParams p;
      if (n_opt > 0) p.n = n_opt;
      p.size_cap = size_cap;
      if (cverify->count("--max-worlds")) p.max_worlds = max_worlds;
      if (cverify->count("--max-domain")) p.max_domain = max_domain;
      p.budget = g.budget;
      p.seed = g.seed;
      SuiteReport r = run_suite(suite, p);
      ordered_json j;
      j["suite"] = r.suite;
      j["cases"] = r.cases;
      auto fails = ordered_json::array();
      for (const auto& f : r.failures) fails.push_back({{"case", f.case_id}, {"detail", f.detail}});
      j["failures"] = fails;
      j["wall_ms"] = r.wall_ms;
      std::cout << j.dump(2) << "\n";
      std::cerr << r.suite << ": " << r.cases << " cases, " << r.failures.size()
                << " failures, " << static_cast<long long>(r.wall_ms) << " ms\n";
      return r.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
