#include <doctest.h>

#include <random>

#include "domcalc/errors.hpp"
#include "domcalc/normalize.hpp"
#include "domcalc/parser.hpp"
#include "domcalc/scenario.hpp"
#include "support.hpp"

using namespace domcalc;

namespace {

Factor f(std::string a, bool inv = false) {
  Factor x;
  x.atom = std::move(a);
  x.inverse = inv;
  return x;
}

Chain repeat(const Chain& c, int k) {
  Chain out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), c.begin(), c.end());
  return out;
}

MonomialMatrix two(int c0, Chain r0, int c1, Chain r1) {
  MonomialMatrix m = MonomialMatrix::zero(Shape::pair(Shape::base(), Shape::base()));
  m.col_of_row = {c0, c1};
  m.chains = {std::move(r0), std::move(r1)};
  return m;
}

}  // namespace

TEST_CASE("compose_blocks") {
  const FactBase fb = load_facts(builtin_facts("cube"));
  const AtomTable& at = fb.atoms();
  MonomialMatrix t = two(1, {f("A")}, 0, {f("B")});
  CHECK(compose_blocks(t, t, at) == two(0, {f("A"), f("B")}, 1, {f("B"), f("A")}));

  MonomialMatrix d = two(0, {f("B")}, 1, {f("A")});
  MonomialMatrix swap = two(1, {}, 0, {});
  CHECK(compose_blocks(d, swap, at) == two(1, {f("B")}, 0, {f("A")}));

  CHECK(compose_blocks(t, MonomialMatrix::identity(t.shape), at) == t);
  CHECK_THROWS_AS(compose_blocks(t, MonomialMatrix::of_chain({f("A")}), at), ShapeMismatch);
}

TEST_CASE("zero rows only absorb everywhere defined chains") {
  const FactBase fb = load_facts(builtin_facts("cube"));
  // [0, 0; 0, I] * diag(A, B): row 0 of the right factor is never read.
  MonomialMatrix proj = two(-1, {}, 1, {});
  CHECK_THROWS_AS(compose_blocks(proj, two(0, {f("A")}, 1, {f("B")}), fb.atoms()), NonNormalizable);
  // B is bounded and everywhere defined, so dropping it is exact.
  CHECK(compose_blocks(proj, two(0, {f("B")}, 1, {f("A")}), fb.atoms()) == two(-1, {}, 1, {f("A")}));
}

TEST_CASE("expand_power examples") {
  const FactBase fb = load_facts(builtin_facts("cube"));
  MonomialMatrix t = two(1, {f("A")}, 0, {f("B")});
  CHECK(expand_power(t, 3, fb.atoms()) == two(1, {f("A"), f("B"), f("A")}, 0, {f("B"), f("A"), f("B")}));
  CHECK_THROWS_AS(expand_power(t, 0, fb.atoms()), OutOfRange);
}

TEST_CASE("parity law") {
  const FactBase fb = load_facts(builtin_facts("lemma"));
  const Expr t = ex::offdiag(ex::atom("P"), ex::atom("Q"));
  const MonomialMatrix m = normalize(t, fb.atoms());
  for (int k = 1; k <= 16; ++k) {
    CAPTURE(k);
    CHECK(expand_power(m, 2 * k, fb.atoms()) ==
          two(0, repeat({f("P"), f("Q")}, k), 1, repeat({f("Q"), f("P")}, k)));
    Chain odd0 = repeat({f("P"), f("Q")}, k), odd1 = repeat({f("Q"), f("P")}, k);
    odd0.push_back(f("P"));
    odd1.push_back(f("Q"));
    CHECK(expand_power(m, 2 * k + 1, fb.atoms()) == two(1, odd0, 0, odd1));
    CHECK(normalize(ex::power(t, 2 * k + 1), fb.atoms()) == two(1, odd0, 0, odd1));
  }
}

TEST_CASE("oracle equivalence and brute-force products") {
  std::mt19937 rng(7);
  const FactBase fb = load_facts(builtin_facts("kosaki"));
  for (int trial = 0; trial < 40; ++trial) {
    MonomialMatrix m = testsupport::random_monomial(rng, testsupport::uniform(rng, 0, 3), fb.atoms(), false);
    MonomialMatrix fold = m;
    for (int n = 1; n <= 32; ++n) {
      if (n > 1) fold = compose_blocks(fold, m, fb.atoms());
      REQUIRE(expand_power(m, n, fb.atoms()) == fold);
      REQUIRE(testsupport::plain(fold) == testsupport::plain_power(testsupport::plain(m), n));
    }
  }
}

TEST_CASE("push_adjoint examples") {
  const FactBase cube = load_facts(builtin_facts("cube"));
  const FactBase kos = load_facts(builtin_facts("kosaki"));
  Expr a = ex::atom("A"), b = ex::atom("B");

  Expr t = ex::offdiag(a, b);
  CHECK(structurally_equal(push_adjoint(ex::adjoint(t), cube.atoms()), ex::offdiag(b, a)));
  CHECK(structurally_equal(push_adjoint(ex::adjoint(ex::adjoint(t)), cube.atoms()), t));

  Expr ai = ex::atom("Ai");
  CHECK(structurally_equal(push_adjoint(ex::adjoint(ex::compose(ai, b)), kos.atoms()), ex::compose(b, ai)));
  // (A^-1 B)' with A^-1 bounded: B' A^-1' = B A^-1, and A^-1 is the linked Ai
  CHECK(normalize(ex::adjoint(ex::compose(ex::inverse(a), b)), kos.atoms()) ==
        MonomialMatrix::of_chain({f("B"), f("Ai")}));

  // no rule for the adjoint of a product of two unbounded operators
  const FactBase lem = load_facts(builtin_facts("lemma"));
  Expr pq = ex::compose(ex::atom("P"), ex::atom("Q"));
  Expr pushed = push_adjoint(ex::adjoint(pq), lem.atoms());
  CHECK(pushed->kind == ExprKind::adjoint);
}

TEST_CASE("unit law, idempotence, adjoint involution") {
  std::mt19937 rng(99);
  const FactBase fb = load_facts(builtin_facts("lemma"));
  for (int trial = 0; trial < 200; ++trial) {
    MonomialMatrix m = testsupport::random_monomial(rng, testsupport::uniform(rng, 0, 2), fb.atoms(), false, 1);
    Expr e = to_expr(m);
    MonomialMatrix once = normalize(e, fb.atoms());
    CHECK(once == m);
    CHECK(normalize(to_expr(once), fb.atoms()) == once);
    CHECK(normalize(ex::compose(ex::identity(m.shape), e), fb.atoms()) == once);
    // single self-adjoint atoms per entry: every premise holds
    bool plain_atoms = true;
    for (const Chain& c : m.chains)
      for (const Factor& x : c) plain_atoms = plain_atoms && !x.inverse;
    if (plain_atoms) CHECK(normalize(ex::adjoint(ex::adjoint(e)), fb.atoms()) == once);
  }
}

TEST_CASE("n=6 fifth power flattens to CDCDC / DCDCD") {
  Scenario s = scenario("sixth");
  MonomialMatrix t5 = normalize(ex::power(s.named_exprs.at("T"), 5), s.facts.atoms());
  CHECK(t5.dim() == 4);
  MonomialMatrix cdcdc = normalize(s.named_exprs.at("CDCDC"), s.facts.atoms());
  MonomialMatrix dcdcd = normalize(s.named_exprs.at("DCDCD"), s.facts.atoms());
  // off-diagonal: rows 0-1 read columns 2-3 through CDCDC, rows 2-3 read 0-1 through DCDCD
  for (int r = 0; r < 2; ++r) {
    CHECK(t5.col_of_row[r] == cdcdc.col_of_row[r] + 2);
    CHECK(t5.chains[r] == cdcdc.chains[r]);
    CHECK(t5.col_of_row[r + 2] == dcdcd.col_of_row[r]);
    CHECK(t5.chains[r + 2] == dcdcd.chains[r]);
  }
}

TEST_CASE("nested construction: block form matches index arithmetic") {
  for (int n = 1; n <= 6; ++n) {
    NestedConstruction c = nested_construction(n);
    CHECK(normalize(c.block_form, c.facts.atoms()) == c.flat_form);
    MonomialMatrix p = c.flat_form;
    for (int i = 1; i < (1 << n); ++i) p = compose_blocks(p, c.flat_form, c.facts.atoms());
    CHECK(normalize(ex::power(c.block_form, 1 << n), c.facts.atoms()) == p);
  }
  CHECK_THROWS_AS(nested_construction(0), OutOfRange);
  CHECK_THROWS_AS(nested_construction(11), OutOfRange);
}

TEST_CASE("non-monomial sums are rejected") {
  const FactBase fb = load_facts(builtin_facts("lemma"));
  Expr p = ex::atom("P");
  Expr full = ex::block2(p, p, p, p);
  CHECK_THROWS_AS(normalize(full, fb.atoms()), NonNormalizable);
}
