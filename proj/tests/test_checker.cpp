#include <doctest.h>

#include <random>

#include <json.hpp>

#include "domcalc/errors.hpp"
#include "domcalc/inference.hpp"
#include "domcalc/scenario.hpp"
#include "support.hpp"

using namespace domcalc;

namespace {

VerdictResult cube_t3() {
  Scenario s = scenario("cube");
  return verdict_of(ex::power(s.named_exprs.at("T"), 3), s.facts);
}

}  // namespace

TEST_CASE("export schema") {
  const Scenario s = scenario("cube");
  const VerdictResult r = cube_t3();
  const std::string js = export_trace(r.proof, s.facts, TraceFormat::json);
  const auto j = nlohmann::json::parse(js);
  CHECK(j.contains("rule"));
  CHECK(j.contains("conclusion"));
  CHECK(j["premises"].is_array());
  CHECK(j["axioms"].is_array());
  CHECK(js == export_trace(r.proof, s.facts, TraceFormat::json));

  const std::string md = export_trace(r.proof, s.facts, TraceFormat::markdown);
  CHECK(md.rfind("- " + r.proof->rule + ": ", 0) == 0);
  CHECK(md.find("\n  - ") != std::string::npos);
}

TEST_CASE("unverified derivations are not exported") {
  const Scenario s = scenario("cube");
  CHECK_THROWS_AS(export_trace(nullptr, s.facts, TraceFormat::json), UnverifiedDerivation);
  Derivation empty;
  empty.conclusion = judge::verdict(ex::atom("A"), Verdict::trivial);
  CHECK_THROWS_AS(export_trace(std::make_shared<const Derivation>(empty), s.facts, TraceFormat::json),
                  UnverifiedDerivation);
  CHECK_THROWS_AS(export_trace(cube_t3().proof, load_facts(""), TraceFormat::markdown), UnverifiedDerivation);
}

TEST_CASE("every rule name is known to the checker") {
  const auto& rules = rule_names();
  CHECK(std::find(rules.begin(), rules.end(), "FACT-MATCH") != rules.end());
  CHECK(std::find(rules.begin(), rules.end(), "NORM-MONOMIAL") != rules.end());
  const VerdictResult r = cube_t3();
  const auto nodes = testsupport::nodes_of(r.proof);
  for (const Derivation* n : nodes) CHECK(std::find(rules.begin(), rules.end(), n->rule) != rules.end());
}

TEST_CASE("mutants are rejected") {
  std::mt19937 rng(11);
  for (const std::string& name : scenario_names()) {
    const Scenario s = scenario(name);
    const Report r = run_scenario(s);
    for (const ReportRow& row : r.rows) {
      REQUIRE(verify_derivation(row.derivation, s.facts));
      for (int i = 0; i < 10; ++i) {
        std::string what;
        DerivationPtr bad = testsupport::mutate(rng, row.derivation, s.facts, &what);
        INFO(name << " " << row.judgment << ": " << what);
        CHECK_FALSE(verify_derivation(bad, s.facts));
      }
    }
  }
}

TEST_CASE("conclusion tampering") {
  const Scenario s = scenario("cube");
  const VerdictResult r = cube_t3();
  Derivation root = *r.proof;
  root.conclusion.verdict = Verdict::nontrivial;
  CHECK_FALSE(verify_derivation(std::make_shared<const Derivation>(root), s.facts));
  root = *r.proof;
  root.premises.clear();
  CHECK_FALSE(verify_derivation(std::make_shared<const Derivation>(root), s.facts));
}
