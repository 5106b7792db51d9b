#include <doctest.h>

#include "domcalc/errors.hpp"
#include "domcalc/facts.hpp"
#include "domcalc/scenario.hpp"

using namespace domcalc;

namespace {

int line_of(const std::string& text) {
  try {
    load_facts(text);
  } catch (const ParseError& e) {
    return int(e.position);
  }
  return -1;
}

int count_kind(const FactBase& fb, AxiomKind k) {
  int n = 0;
  for (const Axiom& a : fb.axioms()) n += a.kind == k;
  return n;
}

}  // namespace

TEST_CASE("kosaki facts") {
  const FactBase fb = load_facts(builtin_facts("kosaki"));
  // A and B carry the pathology; Ai is the declared bounded inverse of A.
  CHECK(fb.atoms().contains("A"));
  CHECK(fb.atoms().contains("B"));
  CHECK(fb.atoms().inverse_partner("A") == std::optional<std::string>("Ai"));
  CHECK(count_kind(fb, AxiomKind::meet_trivial) + count_kind(fb, AxiomKind::range) + count_kind(fb, AxiomKind::dense) == 3);
  CHECK(fb.meet_trivial("A", "B"));
  CHECK(fb.meet_trivial("B", "A"));
  CHECK(fb.find("meet dom(A) dom(B) = trivial") != nullptr);
  CHECK(fb.dense_axiom("B") != nullptr);
  CHECK(fb.range_axiom("Ai") != nullptr);
}

TEST_CASE("empty and comment-only text") {
  CHECK(load_facts("").axioms().empty());
  const FactBase fb = load_facts("# nothing here\n\n   # still nothing\n");
  CHECK(fb.atoms().size() == 0);
  CHECK(fb.axioms().empty());
}

TEST_CASE("dom axioms") {
  const FactBase fb = load_facts(builtin_facts("cube"));
  Chain ab{Factor{"A"}, Factor{"B"}};
  const Axiom* ax = fb.dom_axiom(ab);
  REQUIRE(ax != nullptr);
  CHECK(ax->rhs_trivial);
  CHECK(ax->id == "dom(A*B) = trivial");
  CHECK(compact_chain(ab) == "A*B");
  const Axiom* ba = fb.dom_axiom({Factor{"B"}, Factor{"A"}});
  REQUIRE(ba != nullptr);
  CHECK_FALSE(ba->rhs_trivial);
  CHECK(to_string(fb.rhs_set(*ba)) == "dom(A)");
}

TEST_CASE("conflicts and malformed lines") {
  const std::string head = "atom A { closed, densely_defined }\natom B { closed, densely_defined }\n";
  CHECK_THROWS_AS(load_facts(head + "axiom dom(A*B) = trivial\naxiom dom(A*B) = dom(A)\n"), ConflictingAxiom);
  // restating the same axiom is harmless
  CHECK_NOTHROW(load_facts(head + "axiom dom(A*B) = trivial\naxiom dom(A * B) = trivial\n"));

  CHECK(line_of(head + "axiom frobnicate\n") == 3);
  CHECK(line_of(head + "atom C { closed, sparkly }\n") == 3);
  CHECK(line_of(head + "axiom dom(A*Z) = trivial\n") == 3);
  CHECK(line_of(head + "link inverse A Q\n") == 3);
  CHECK(line_of("hello\n") == 1);

  CHECK_THROWS_AS(load_facts(head + "atom A { closed, densely_defined }\n"), DuplicateId);
  CHECK_THROWS_AS(load_facts("atom S { self_adjoint }\n"), InconsistentFlags);
  CHECK_THROWS_AS(load_facts_file("/nonexistent/path.facts"), Error);
}
