// Acceptance gate: one line per criterion, pass/fail with wall time against
// the stated budget.  Exit status is the number of failed criteria.

#include <cstdio>
#include <string>
#include <vector>

#include "kripke/suites.hpp"

using namespace kripke;

namespace {

struct Criterion {
  int id;
  std::string description;
  std::vector<std::string> suites;
  double budget_ms;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "chain-gadget addressing (transitive track, plain and reflexive closure, n=3)",
       {"lemma-2.2", "lemma-2.2-reflexive"}, 10'000},
      {2, "chain-gadget addressing (reflexive-symmetric track, n=3)", {"lemma-2.6"}, 30'000},
      {3, "guard-letter extension and restriction", {"vp-b"}, 10'000},
      {4, "attachment surgery: target truth, frame class, bridging (per track)",
       {"vp-ast-k", "vp-ast-gl", "vp-ast-grz", "vp-ast-ktb"}, 240'000},
      {5, "bounded-search cross check of both reduction sides", {"oracle-cross"}, 300'000},
      {6, "binary-letter elimination witnesses", {"lemma-3.2"}, 10'000},
      {7, "addressing-frame biconditional and heredity (both variants)",
       {"frame-f", "frame-f-qfl"}, 60'000},
      {8, "single-letter substitution: refutation, bridging, frame variants",
       {"qint-main", "qkc-main", "qfl-main"}, 300'000},
      {9, "torus countermodels and untileable searches", {"tiling-torus"}, 300'000},
      {10, "syntactic claims: single letter, positivity, two variables",
       {"syntactic-claims"}, 5'000},
      {11, "translation correspondence, exhaustive at desk scale", {"godel"}, 600'000},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    long long cases = 0, failures = 0;
    double ms = 0;
    std::string first_failure;
    for (const auto& s : c.suites) {
      SuiteParams p;
      SuiteReport r = run_suite(s, p);
      cases += r.cases;
      failures += static_cast<long long>(r.failures.size());
      ms += r.wall_ms;
      if (first_failure.empty() && !r.failures.empty())
        first_failure = r.suite + ": [" + r.failures.front().case_id + "] " +
                        r.failures.front().detail;
    }
    bool in_budget = ms <= c.budget_ms;
    bool pass = failures == 0 && in_budget;
    if (!pass) ++failed;
    std::printf("[%s] criterion %2d: %s: %lld cases, %lld failures, %.0f ms (budget %.0f ms)\n",
                pass ? "PASS" : "FAIL", c.id, c.description.c_str(), cases, failures, ms,
                c.budget_ms);
    if (!pass && !first_failure.empty())
      std::printf("       first failure: %s\n", first_failure.c_str());
    if (!pass && !in_budget) std::printf("       over budget\n");
    std::fflush(stdout);
  }
  if (failed)
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failed;
}
