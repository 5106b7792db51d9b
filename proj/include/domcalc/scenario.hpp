#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "domcalc/derivation.hpp"
#include "domcalc/facts.hpp"
#include "domcalc/monomial.hpp"

namespace domcalc {

struct Expectation {
  std::string expr_name;
  int power = 1;
  bool adjoint = false;
  Verdict verdict;
  std::string citation;
};

struct Scenario {
  std::string name;
  std::string facts_text;
  FactBase facts;
  std::map<std::string, Expr> named_exprs;
  std::vector<Expectation> expected;

  /// (expr)' ^ power as configured by the expectation.
  Expr expression_for(const Expectation& x) const;
};

struct ReportRow {
  std::string judgment;
  Verdict expected;
  Verdict derived;
  bool match;
  DerivationPtr derivation;
  std::string error;
};

struct Report {
  std::string scenario;
  std::vector<ReportRow> rows;
  bool pass = false;
  double seconds = 0;
};

const std::vector<std::string>& scenario_names();

/// Throws UnknownScenario.
Scenario scenario(const std::string& name);

/// Facts text of a built-in scenario ("kosaki", "adjoint-trivial", "cube",
/// "fourth", "sixth", "lemma"); throws UnknownScenario.
std::string builtin_facts(const std::string& name);

struct NestedConstruction {
  FactBase facts;
  Expr block_form;             // nested Block2 expression
  MonomialMatrix flat_form;    // built directly by index arithmetic
};

/// 1 <= n <= 10, otherwise OutOfRange.
NestedConstruction nested_construction(int n);
Scenario nested_scenario(int n);

/// Derived verdict refines the expected one (Dense satisfies NonTrivial).
bool verdict_matches(Verdict expected, Verdict derived);

/// Accepts a catalog name or "nested:<n>".
Report run_proposition(const std::string& name);
Report run_scenario(const Scenario& s);

struct ConjectureStatus {
  bool settled = false;
  std::string scenario;
};

/// n >= 2, otherwise OutOfRange.
ConjectureStatus conjecture_status(int n);

nlohmann::ordered_json report_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace domcalc
