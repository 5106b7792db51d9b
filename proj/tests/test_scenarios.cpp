#include <doctest.h>

#include "domcalc/errors.hpp"
#include "domcalc/inference.hpp"
#include "domcalc/normalize.hpp"
#include "domcalc/scenario.hpp"

using namespace domcalc;

TEST_CASE("catalog propositions") {
  for (const std::string& name : scenario_names()) {
    CAPTURE(name);
    Report r = run_proposition(name);
    CHECK(r.pass);
    for (const ReportRow& row : r.rows) {
      CAPTURE(row.judgment);
      CHECK(row.error.empty());
      CHECK(row.match);
      REQUIRE(row.derivation);
      CHECK(verify_derivation(row.derivation, scenario(name).facts));
    }
  }
}

TEST_CASE("cube derivation cites the product axiom") {
  Scenario s = scenario("cube");
  VerdictResult r = verdict_of(ex::power(s.named_exprs.at("T"), 3), s.facts);
  CHECK(r.verdict == Verdict::trivial);
  auto ax = cited_axioms(r.proof);
  CHECK(std::find(ax.begin(), ax.end(), "dom(A*B) = trivial") != ax.end());
}

TEST_CASE("paired adjoint claims agree") {
  // every power row for T has a matching row for T' with the same verdict,
  // except where the construction itself is asymmetric (adjoint-trivial).
  for (const std::string& name : {"cube", "fourth", "sixth"}) {
    Scenario s = scenario(name);
    for (const Expectation& x : s.expected) {
      if (x.expr_name != "T" || x.adjoint) continue;
      for (const Expectation& y : s.expected)
        if (y.expr_name == "T" && y.adjoint && y.power == x.power) {
          CAPTURE(name);
          CAPTURE(x.power);
          CHECK(verdict_of(s.expression_for(x), s.facts).verdict == verdict_of(s.expression_for(y), s.facts).verdict);
        }
    }
  }
}

TEST_CASE("nested scenarios") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    Report r = run_proposition("nested:" + std::to_string(n));
    CHECK(r.pass);
    CHECK(r.rows.size() == 4);
  }
  CHECK_THROWS_AS(run_proposition("nested:0"), OutOfRange);
  CHECK_THROWS_AS(run_proposition("nested:x"), UnknownScenario);
  CHECK_THROWS_AS(run_proposition("septic"), UnknownScenario);
}

TEST_CASE("verdict matching") {
  CHECK(verdict_matches(Verdict::nontrivial, Verdict::dense));
  CHECK(verdict_matches(Verdict::trivial, Verdict::trivial));
  CHECK_FALSE(verdict_matches(Verdict::dense, Verdict::nontrivial));
  CHECK_FALSE(verdict_matches(Verdict::trivial, Verdict::unknown));
  CHECK_FALSE(verdict_matches(Verdict::nontrivial, Verdict::trivial));
}

TEST_CASE("conjecture status") {
  CHECK(conjecture_status(3).scenario == "cube");
  CHECK(conjecture_status(4).settled);
  CHECK(conjecture_status(6).scenario == "sixth");
  CHECK(conjecture_status(2).settled);
  CHECK(conjecture_status(16).scenario == "nested:4");
  CHECK(conjecture_status(1024).scenario == "nested:10");
  CHECK_FALSE(conjecture_status(5).settled);
  CHECK_FALSE(conjecture_status(7).settled);
  CHECK_FALSE(conjecture_status(12).settled);
  CHECK_THROWS_AS(conjecture_status(1), OutOfRange);
}

TEST_CASE("report serialization") {
  Report r = run_proposition("kosaki");
  auto j = report_json(r);
  CHECK(j["scenario"] == "kosaki");
  CHECK(j["pass"] == true);
  CHECK(report_text(r).find("PASS") != std::string::npos);
}
