#pragma once

// Exhaustive bounded model search: all models up to the given world and
// domain counts, enumerated in a fixed order (worlds ascending, relations in
// bitmask order, then domain assignments, then interpretations), optionally
// quotiented by world/individual renaming.  Sound by construction: any model
// found is re-verified with the reference evaluator before it is returned.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kripke/eval.hpp"
#include "kripke/formula.hpp"
#include "kripke/model.hpp"

namespace kripke {

enum class FrameProperty { Reflexive, Transitive, Symmetric, Antisymmetric, Convergent, Acyclic };

inline std::optional<FrameProperty> frame_property_from_name(const std::string& s) {
  if (s == "reflexive") return FrameProperty::Reflexive;
  if (s == "transitive") return FrameProperty::Transitive;
  if (s == "symmetric") return FrameProperty::Symmetric;
  if (s == "antisymmetric") return FrameProperty::Antisymmetric;
  if (s == "convergent") return FrameProperty::Convergent;
  if (s == "acyclic") return FrameProperty::Acyclic;
  return std::nullopt;
}

struct SearchBounds {
  int max_worlds = 2;
  int max_domain = 1;
  std::set<FrameProperty> frame_class;
  Mode mode = Mode::Modal;
  bool constant_domains = false;
  long long budget = 50'000'000;
  bool symmetry_reduction = true;
  bool refute = false;  // search for a world where the formula fails
};

struct SatResult {
  enum class Status { Found, None, Budget } status = Status::None;
  std::optional<Model> model;
  std::optional<WorldId> world;
  long long candidates = 0;
};

namespace detail {

struct LetterSig {
  std::string name;
  int arity;
};

// A candidate model over int ids: world count nw, pool size p, relation as
// an nw*nw bitmask, one domain bitmask per world, and per (letter, world) a
// bitmask over tuple indices (tuple = sum of ind_i * p^i).
struct Candidate {
  int nw = 0, p = 0;
  std::uint64_t rel = 0;
  std::vector<std::uint32_t> dom;
  std::vector<std::vector<std::uint32_t>> interp;  // [letter][world]

  bool edge(int a, int b) const { return (rel >> (a * nw + b)) & 1; }
};

inline bool frame_ok(std::uint64_t rel, int nw, const std::set<FrameProperty>& props) {
  auto edge = [&](int a, int b) { return (rel >> (a * nw + b)) & 1; };
  for (FrameProperty pr : props) {
    switch (pr) {
      case FrameProperty::Reflexive:
        for (int i = 0; i < nw; ++i)
          if (!edge(i, i)) return false;
        break;
      case FrameProperty::Symmetric:
        for (int i = 0; i < nw; ++i)
          for (int j = 0; j < nw; ++j)
            if (edge(i, j) && !edge(j, i)) return false;
        break;
      case FrameProperty::Antisymmetric:
        for (int i = 0; i < nw; ++i)
          for (int j = i + 1; j < nw; ++j)
            if (edge(i, j) && edge(j, i)) return false;
        break;
      case FrameProperty::Transitive:
        for (int i = 0; i < nw; ++i)
          for (int j = 0; j < nw; ++j)
            if (edge(i, j))
              for (int k = 0; k < nw; ++k)
                if (edge(j, k) && !edge(i, k)) return false;
        break;
      case FrameProperty::Convergent:
        for (int w = 0; w < nw; ++w)
          for (int v1 = 0; v1 < nw; ++v1) {
            if (!edge(w, v1)) continue;
            for (int v2 = 0; v2 < nw; ++v2) {
              if (!edge(w, v2)) continue;
              bool ok = false;
              for (int u = 0; u < nw; ++u)
                if (edge(v1, u) && edge(v2, u)) { ok = true; break; }
              if (!ok) return false;
            }
          }
        break;
      case FrameProperty::Acyclic: {
        std::vector<int> state(static_cast<std::size_t>(nw), 0);
        auto dfs = [&](auto&& self, int i) -> bool {
          state[static_cast<std::size_t>(i)] = 1;
          for (int j = 0; j < nw; ++j) {
            if (i == j || !edge(i, j)) continue;
            if (state[static_cast<std::size_t>(j)] == 1) return false;
            if (state[static_cast<std::size_t>(j)] == 0 && !self(self, j)) return false;
          }
          state[static_cast<std::size_t>(i)] = 2;
          return true;
        };
        bool loops_bad = false;
        for (int i = 0; i < nw && !loops_bad; ++i)
          if (edge(i, i)) loops_bad = true;
        if (loops_bad) return false;
        for (int i = 0; i < nw; ++i)
          if (state[static_cast<std::size_t>(i)] == 0 && !dfs(dfs, i)) return false;
        break;
      }
    }
  }
  return true;
}

// Compiled evaluation over a candidate, recursion with an explicit binding
// stack.  Modes follow eval.hpp exactly; differential tests hold the two
// implementations together.
class CandidateEval {
 public:
  CandidateEval(const Candidate& c, Mode mode, const std::vector<LetterSig>& letters)
      : c_(c), mode_(mode), letters_(letters) {}

  bool eval(int w, const FormulaPtr& f) {
    env_.clear();
    return go(w, f);
  }

 private:
  const Candidate& c_;
  Mode mode_;
  const std::vector<LetterSig>& letters_;
  std::vector<std::pair<Variable, int>> env_;

  int lookup(const Variable& v) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == v) return it->second;
    throw EvalError("bounded_sat: unassigned free variable " + v.name);
  }

  int letter_id(const std::string& name) const {
    for (std::size_t i = 0; i < letters_.size(); ++i)
      if (letters_[i].name == name) return static_cast<int>(i);
    throw EvalError("bounded_sat: unknown letter " + name);
  }

  bool go(int w, const FormulaPtr& f) {
    switch (f->op) {
      case Op::Atom: {
        int l = letter_id(f->letter);
        int idx = 0, mul = 1;
        for (const auto& v : f->args) {
          idx += lookup(v) * mul;
          mul *= c_.p;
        }
        return (c_.interp[static_cast<std::size_t>(l)][static_cast<std::size_t>(w)] >> idx) & 1;
      }
      case Op::Bot: return false;
      case Op::Top: return true;
      case Op::Neg:
        if (mode_ == Mode::Modal) return !go(w, f->lhs);
        for (int w2 = 0; w2 < c_.nw; ++w2)
          if (c_.edge(w, w2) && go(w2, f->lhs)) return false;
        return true;
      case Op::And: return go(w, f->lhs) && go(w, f->rhs);
      case Op::Or: return go(w, f->lhs) || go(w, f->rhs);
      case Op::Imp:
        if (mode_ == Mode::Modal) return !go(w, f->lhs) || go(w, f->rhs);
        for (int w2 = 0; w2 < c_.nw; ++w2)
          if (c_.edge(w, w2) && go(w2, f->lhs) && !go(w2, f->rhs)) return false;
        return true;
      case Op::Box:
        for (int w2 = 0; w2 < c_.nw; ++w2)
          if (c_.edge(w, w2) && !go(w2, f->lhs)) return false;
        return true;
      case Op::Dia:
        if (mode_ != Mode::Modal)
          throw EvalError("bounded_sat: dia is not part of the intuitionistic language");
        for (int w2 = 0; w2 < c_.nw; ++w2)
          if (c_.edge(w, w2) && go(w2, f->lhs)) return true;
        return false;
      case Op::Forall: {
        if (mode_ == Mode::Modal) {
          for (int x = 0; x < c_.p; ++x) {
            if (!((c_.dom[static_cast<std::size_t>(w)] >> x) & 1)) continue;
            env_.emplace_back(f->var, x);
            bool ok = go(w, f->lhs);
            env_.pop_back();
            if (!ok) return false;
          }
          return true;
        }
        if (mode_ == Mode::Intuitionistic) {
          for (int w2 = 0; w2 < c_.nw; ++w2) {
            if (!c_.edge(w, w2)) continue;
            for (int x = 0; x < c_.p; ++x) {
              if (!((c_.dom[static_cast<std::size_t>(w2)] >> x) & 1)) continue;
              env_.emplace_back(f->var, x);
              bool ok = go(w2, f->lhs);
              env_.pop_back();
              if (!ok) return false;
            }
          }
          return true;
        }
        std::vector<Variable> vars;
        FormulaPtr body = f;
        while (body->op == Op::Forall) {
          vars.push_back(body->var);
          body = body->lhs;
        }
        for (int w2 = 0; w2 < c_.nw; ++w2) {
          if (!c_.edge(w, w2)) continue;
          std::vector<int> d;
          for (int x = 0; x < c_.p; ++x)
            if ((c_.dom[static_cast<std::size_t>(w2)] >> x) & 1) d.push_back(x);
          if (d.empty()) continue;
          std::vector<std::size_t> pick(vars.size(), 0);
          while (true) {
            for (std::size_t i = 0; i < vars.size(); ++i) env_.emplace_back(vars[i], d[pick[i]]);
            bool ok = go(w2, body);
            for (std::size_t i = 0; i < vars.size(); ++i) env_.pop_back();
            if (!ok) return false;
            std::size_t i = 0;
            for (; i < vars.size(); ++i) {
              if (++pick[i] < d.size()) break;
              pick[i] = 0;
            }
            if (i == vars.size()) break;
          }
        }
        return true;
      }
      case Op::Exists:
        for (int x = 0; x < c_.p; ++x) {
          if (!((c_.dom[static_cast<std::size_t>(w)] >> x) & 1)) continue;
          env_.emplace_back(f->var, x);
          bool ok = go(w, f->lhs);
          env_.pop_back();
          if (ok) return true;
        }
        return false;
    }
    return false;
  }
};

inline Model candidate_to_model(const Candidate& c, Mode mode, bool constant_domains,
                                const std::vector<LetterSig>& letters) {
  Model m;
  m.mode = mode;
  m.pf.constant_domains = constant_domains;
  auto wname = [](int i) { return "w" + std::to_string(i); };
  auto iname = [](int i) { return "a" + std::to_string(i); };
  for (int w = 0; w < c.nw; ++w) {
    std::set<Individual> d;
    for (int x = 0; x < c.p; ++x)
      if ((c.dom[static_cast<std::size_t>(w)] >> x) & 1) d.insert(iname(x));
    m.set_domain(wname(w), std::move(d));
  }
  for (int a = 0; a < c.nw; ++a)
    for (int b = 0; b < c.nw; ++b)
      if (c.edge(a, b)) m.frame().add_edge(wname(a), wname(b));
  for (std::size_t l = 0; l < letters.size(); ++l) {
    int tuples = 1;
    for (int i = 0; i < letters[l].arity; ++i) tuples *= c.p;
    for (int w = 0; w < c.nw; ++w)
      for (int t = 0; t < tuples; ++t) {
        if (!((c.interp[l][static_cast<std::size_t>(w)] >> t) & 1)) continue;
        Tuple tup;
        int z = t;
        for (int i = 0; i < letters[l].arity; ++i) {
          tup.push_back(iname(z % c.p));
          z /= c.p;
        }
        m.set_true(wname(w), letters[l].name, std::move(tup));
      }
  }
  return m;
}

// Permutations of 0..n-1 in lexicographic order.
inline std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  return out;
}

}  // namespace detail

inline SatResult bounded_sat(const FormulaPtr& f, const SearchBounds& b) {
  using namespace detail;
  if (!profile(f).closed) throw std::invalid_argument("bounded_sat: formula must be closed");
  if (b.max_worlds < 1 || b.max_worlds > 6 || b.max_domain < 1 || b.max_domain > 4)
    throw std::invalid_argument("bounded_sat: bounds out of the supported range");

  std::vector<LetterSig> letters;
  for (const auto& [name, info] : profile(f).letters)
    letters.push_back({name, static_cast<int>(info.arity)});

  std::set<FrameProperty> props = b.frame_class;
  if (b.mode == Mode::Intuitionistic) {
    props.insert(FrameProperty::Reflexive);
    props.insert(FrameProperty::Transitive);
    props.insert(FrameProperty::Antisymmetric);
  } else if (b.mode == Mode::Visser) {
    props.insert(FrameProperty::Transitive);
    props.insert(FrameProperty::Antisymmetric);
  }

  SatResult res;
  const int p = b.max_domain;
  const std::uint32_t full_dom_bound = 1u << p;

  for (int nw = 1; nw <= b.max_worlds; ++nw) {
    auto wperms = permutations(nw);
    auto iperms = permutations(p);
    const std::uint64_t rel_bound = 1ull << (nw * nw);
    for (std::uint64_t rel = 0; rel < rel_bound; ++rel) {
      if (!frame_ok(rel, nw, props)) continue;

      // Domain assignments: per-world nonempty masks; expanding along edges
      // unless constant.
      std::vector<std::uint32_t> dom(static_cast<std::size_t>(nw), 1);
      auto dom_ok = [&] {
        if (b.constant_domains) return true;
        for (int a = 0; a < nw; ++a)
          for (int bb = 0; bb < nw; ++bb)
            if (((rel >> (a * nw + bb)) & 1) &&
                (dom[static_cast<std::size_t>(a)] & ~dom[static_cast<std::size_t>(bb)]))
              return false;
        return true;
      };
      auto permute_mask = [&](std::uint32_t mask, const std::vector<int>& ip) {
        std::uint32_t out = 0;
        for (int x = 0; x < p; ++x)
          if ((mask >> x) & 1) out |= 1u << ip[static_cast<std::size_t>(x)];
        return out;
      };
      auto permute_rel = [&](std::uint64_t r, const std::vector<int>& wp) {
        std::uint64_t out = 0;
        for (int a = 0; a < nw; ++a)
          for (int bb = 0; bb < nw; ++bb)
            if ((r >> (a * nw + bb)) & 1)
              out |= 1ull << (wp[static_cast<std::size_t>(a)] * nw + wp[static_cast<std::size_t>(bb)]);
        return out;
      };

      bool advance_dom = false;
      while (!advance_dom) {
        if (dom_ok()) {
          // Symmetry: find automorphism candidates of (rel, dom); skip the
          // branch when some renaming yields a strictly smaller encoding.
          std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>> autos;
          bool smaller = false;
          if (b.symmetry_reduction) {
            for (const auto& wp : wperms) {
              std::uint64_t rel2 = permute_rel(rel, wp);
              if (rel2 > rel) continue;
              for (const auto& ip : iperms) {
                std::vector<std::uint32_t> dom2(static_cast<std::size_t>(nw));
                for (int w = 0; w < nw; ++w)
                  dom2[static_cast<std::size_t>(wp[static_cast<std::size_t>(w)])] =
                      permute_mask(dom[static_cast<std::size_t>(w)], ip);
                if (rel2 < rel || dom2 < dom) { smaller = true; break; }
                if (rel2 == rel && dom2 == dom) autos.emplace_back(&wp, &ip);
              }
              if (smaller) break;
            }
          }
          if (!smaller) {
            // Interpretations: one mask per (letter, world) over tuples drawn
            // from that world's domain.
            std::vector<std::vector<std::uint32_t>> allowed(letters.size());
            std::vector<std::vector<std::uint32_t>> interp(letters.size());
            for (std::size_t l = 0; l < letters.size(); ++l) {
              allowed[l].resize(static_cast<std::size_t>(nw));
              interp[l].assign(static_cast<std::size_t>(nw), 0);
              int tuples = 1;
              for (int i = 0; i < letters[l].arity; ++i) tuples *= p;
              for (int w = 0; w < nw; ++w) {
                std::uint32_t mask = 0;
                for (int t = 0; t < tuples; ++t) {
                  bool ok = true;
                  int z = t;
                  for (int i = 0; i < letters[l].arity; ++i) {
                    if (!((dom[static_cast<std::size_t>(w)] >> (z % p)) & 1)) ok = false;
                    z /= p;
                  }
                  if (ok) mask |= 1u << t;
                }
                allowed[l][static_cast<std::size_t>(w)] = mask;
              }
            }
            auto permute_tuple_mask = [&](std::uint32_t mask, int arity, const std::vector<int>& ip) {
              std::uint32_t out = 0;
              int tuples = 1;
              for (int i = 0; i < arity; ++i) tuples *= p;
              for (int t = 0; t < tuples; ++t) {
                if (!((mask >> t) & 1)) continue;
                int z = t, t2 = 0, mul = 1;
                for (int i = 0; i < arity; ++i) {
                  t2 += ip[static_cast<std::size_t>(z % p)] * mul;
                  z /= p;
                  mul *= p;
                }
                out |= 1u << t2;
              }
              return out;
            };

            Candidate c;
            c.nw = nw;
            c.p = p;
            c.rel = rel;
            c.dom = dom;
            bool exhausted = false;
            while (!exhausted) {
              if (++res.candidates > b.budget) {
                res.status = SatResult::Status::Budget;
                return res;
              }
              bool valid = true;
              if (b.mode != Mode::Modal) {
                // heredity along every edge
                for (std::size_t l = 0; l < letters.size() && valid; ++l)
                  for (int a = 0; a < nw && valid; ++a)
                    for (int bb = 0; bb < nw; ++bb)
                      if (a != bb && ((rel >> (a * nw + bb)) & 1) &&
                          (interp[l][static_cast<std::size_t>(a)] &
                           ~interp[l][static_cast<std::size_t>(bb)])) {
                        valid = false;
                        break;
                      }
              }
              if (valid && b.symmetry_reduction && !autos.empty()) {
                for (const auto& [wp, ip] : autos) {
                  if (wp->at(0) == 0 && ip->at(0) == 0) {
                    bool identity = true;
                    for (int i = 0; i < nw; ++i) identity = identity && wp->at(static_cast<std::size_t>(i)) == i;
                    for (int i = 0; i < p; ++i) identity = identity && ip->at(static_cast<std::size_t>(i)) == i;
                    if (identity) continue;
                  }
                  std::vector<std::vector<std::uint32_t>> interp2(letters.size());
                  for (std::size_t l = 0; l < letters.size(); ++l) {
                    interp2[l].resize(static_cast<std::size_t>(nw));
                    for (int w = 0; w < nw; ++w)
                      interp2[l][static_cast<std::size_t>(wp->at(static_cast<std::size_t>(w)))] =
                          permute_tuple_mask(interp[l][static_cast<std::size_t>(w)], letters[l].arity, *ip);
                  }
                  if (interp2 < interp) { valid = false; break; }
                }
              }
              if (valid) {
                c.interp = interp;
                CandidateEval ce(c, b.mode, letters);
                for (int w = 0; w < nw; ++w) {
                  if (ce.eval(w, f) == b.refute) continue;
                  Model m = candidate_to_model(c, b.mode, b.constant_domains, letters);
                  if (!validate(m).empty())
                    throw std::logic_error("bounded_sat: candidate failed validation");
                  Evaluator ev(m);
                  if (ev.eval("w" + std::to_string(w), {}, f) == b.refute)
                    throw std::logic_error("bounded_sat: verification disagreed with search");
                  res.status = SatResult::Status::Found;
                  res.model = std::move(m);
                  res.world = "w" + std::to_string(w);
                  return res;
                }
              }
              // advance interpretation odometer (letter-major, world-minor)
              exhausted = true;
              for (std::size_t l = 0; l < letters.size() && exhausted; ++l)
                for (int w = 0; w < nw; ++w) {
                  std::uint32_t& cur = interp[l][static_cast<std::size_t>(w)];
                  std::uint32_t al = allowed[l][static_cast<std::size_t>(w)];
                  // next subset of al after cur, in increasing numeric order
                  std::uint32_t nxt = (cur - al) & al;  // standard subset-increment
                  if (nxt != 0) {
                    cur = nxt;
                    exhausted = false;
                    break;
                  }
                  cur = 0;  // wrapped; carry to the next position
                }
              if (letters.empty()) exhausted = true;
            }
          }
        }
        // advance domain odometer
        if (b.constant_domains) {
          std::uint32_t cur = dom[0];
          cur = cur + 1;
          if (cur >= full_dom_bound) { advance_dom = true; }
          else
            for (auto& d : dom) d = cur;
        } else {
          advance_dom = true;
          for (int w = 0; w < nw; ++w) {
            std::uint32_t& cur = dom[static_cast<std::size_t>(w)];
            if (cur + 1 < full_dom_bound) {
              ++cur;
              advance_dom = false;
              break;
            }
            cur = 1;
          }
        }
      }
    }
  }
  res.status = SatResult::Status::None;
  return res;
}

}  // namespace kripke
