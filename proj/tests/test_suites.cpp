#include <doctest.h>

#include "kripke/suites.hpp"

using namespace kripke;

// The fast suites run green as unit tests; the heavyweight ones (godel,
// oracle-cross) run in the acceptance binary.

TEST_CASE("gadget lemma suites") {
  CHECK(run_suite("lemma-2.2").ok());
  CHECK(run_suite("lemma-2.2-reflexive").ok());
}

TEST_CASE("the ktb chain suite reports the documented off-root hits") {
  // The transcription of the reflexive-symmetric chains does not satisfy the
  // every-world uniqueness claim (see the decisions notes).  The failures
  // are all of one shape: alpha firing at a non-root world; the root itself
  // is never wrong, which is what the attachment surgery relies on.
  SuiteReport r = run_suite("lemma-2.6");
  CHECK(!r.ok());
  for (const auto& f : r.failures) {
    CHECK(f.detail == "alpha holds off the distinguished world");
    CHECK(f.case_id.find("w=w0") == std::string::npos);
  }
}

TEST_CASE("guard-letter and attachment suites") {
  CHECK(run_suite("vp-b").ok());
  CHECK(run_suite("vp-ast-k").ok());
  CHECK(run_suite("vp-ast-gl").ok());
  CHECK(run_suite("vp-ast-grz").ok());
  CHECK(run_suite("vp-ast-ktb").ok());
}

TEST_CASE("binary elimination suite") { CHECK(run_suite("lemma-3.2").ok()); }

TEST_CASE("addressing frame suites") {
  CHECK(run_suite("frame-f").ok());
  CHECK(run_suite("frame-f-qfl").ok());
}

TEST_CASE("single-letter substitution suites") {
  CHECK(run_suite("qint-main").ok());
  CHECK(run_suite("qkc-main").ok());
  CHECK(run_suite("qfl-main").ok());
}

TEST_CASE("tiling and syntactic suites") {
  CHECK(run_suite("tiling-torus").ok());
  CHECK(run_suite("syntactic-claims").ok());
}

TEST_CASE("unknown suites are rejected") { CHECK_THROWS(run_suite("no-such-suite")); }
