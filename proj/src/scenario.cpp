#include "domcalc/scenario.hpp"

#include <chrono>
#include <sstream>

#include "domcalc/errors.hpp"
#include "domcalc/inference.hpp"
#include "domcalc/parser.hpp"

namespace domcalc {

namespace {

// A is the Gaussian-weight multiplier, B its Fourier conjugate, Ai = A^-1.
constexpr const char* kKosakiFacts = R"(# Gaussian multiplier A and its Fourier conjugate B
atom A { self_adjoint, positive, injective, unbounded, closed, densely_defined }
atom B { self_adjoint, positive, injective, unbounded, closed, densely_defined }
atom Ai { self_adjoint, positive, injective, bounded, everywhere_defined, closed, densely_defined }
link inverse Ai A
axiom meet dom(A) dom(B) = trivial
axiom range Ai = dom(A)
axiom dense dom(B)
)";

// A unbounded, B bounded everywhere defined, D(AB) = {0}, D(BA) = D(A).
constexpr const char* kPairFacts = R"(# self-adjoint pair with trivial D(AB) and dense D(BA)
atom A { self_adjoint, positive, injective, unbounded, closed, densely_defined }
atom B { self_adjoint, positive, injective, bounded, everywhere_defined, closed, densely_defined }
axiom dom(A*B) = trivial
axiom dom(B*A) = dom(A)
)";

// P plays A^-1 and Q plays B for an unbounded self-adjoint pair with
// D(A^-1 B) = D(B A^-1) = {0}.
constexpr const char* kLemmaFacts = R"(# unbounded self-adjoint pair with D(PQ) = D(QP) = {0}
atom P { self_adjoint, injective, unbounded, closed, densely_defined }
atom Q { self_adjoint, injective, unbounded, closed, densely_defined }
axiom dom(P*Q) = trivial
axiom dom(Q*P) = trivial
)";

Scenario make(std::string name, const std::string& facts,
              std::vector<std::pair<std::string, std::string>> exprs,
              std::vector<Expectation> expected) {
  Scenario s;
  s.name = std::move(name);
  s.facts_text = facts;
  s.facts = load_facts(facts);
  for (const auto& [k, text] : exprs) s.named_exprs[k] = parse_expr(text, s.facts.atoms());
  s.expected = std::move(expected);
  return s;
}

using V = Verdict;

}  // namespace

Expr Scenario::expression_for(const Expectation& x) const {
  auto it = named_exprs.find(x.expr_name);
  if (it == named_exprs.end()) throw UnknownScenario("no expression named " + x.expr_name);
  Expr e = it->second;
  if (x.adjoint) e = ex::adjoint(e);
  return ex::power(e, x.power);
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"kosaki", "adjoint-trivial", "cube", "fourth",
                                                 "sixth"};
  return names;
}

std::string builtin_facts(const std::string& name) {
  if (name == "kosaki" || name == "adjoint-trivial") return kKosakiFacts;
  if (name == "cube" || name == "sixth" || name == "pair") return kPairFacts;
  if (name == "fourth" || name == "lemma" || name.rfind("nested", 0) == 0) return kLemmaFacts;
  if (name == "none" || name == "empty") return "";
  throw UnknownScenario("unknown built-in facts: " + name);
}

Scenario scenario(const std::string& name) {
  if (name == "kosaki")
    return make(name, kKosakiFacts, {{"B*A^-1", "B * A^-1"}, {"A^-1*B", "A^-1 * B"}},
                {{"B*A^-1", 1, false, V::trivial, "D(BA^-1) is trivial"},
                 {"A^-1*B", 1, false, V::dense, "D(A^-1 B) = D(B), evidently dense"}});
  if (name == "adjoint-trivial")
    return make(name, kKosakiFacts,
                {{"T", "A^-1 * B"},
                 {"T*T'", "(A^-1 * B) * (A^-1 * B)'"},
                 {"T'*T", "(A^-1 * B)' * (A^-1 * B)"}},
                {{"T", 1, false, V::dense, "T densely defined, D(T) = D(B)"},
                 {"T", 1, true, V::trivial, "D(T*) = D(BA^-1) = {0}"},
                 {"T", 2, false, V::trivial, "D(T^2) = {0} by injectivity of B"},
                 {"T*T'", 1, false, V::trivial, "D(TT*) = {0}"},
                 {"T'*T", 1, false, V::trivial, "D(T*T) = {0}, A^-1 B one-to-one"}});
  if (name == "cube")
    return make(name, kPairFacts, {{"T", "[0, A; B, 0]"}},
                {{"T", 1, false, V::dense, "T densely defined"},
                 {"T", 2, false, V::nontrivial, "D(T^2) = {0} + D(BA) != {0}"},
                 {"T", 3, false, V::trivial, "D(T^3) = {(0,0)}"},
                 {"T", 1, true, V::dense, "T* = [0, B; A, 0]"},
                 {"T", 2, true, V::nontrivial, "D(T*^2) != {0}"},
                 {"T", 3, true, V::trivial, "D(T*^3) = {0}"}});
  if (name == "fourth")
    return make(name, kLemmaFacts,
                {{"S", "[0, P; Q, 0]"},
                 {"C*D", "[P, 0; 0, Q] * [0, I; I, 0]"},
                 {"T", "[0, [P, 0; 0, Q]; [0, I; I, 0], 0]"}},
                {{"S", 2, false, V::trivial, "D(S^2) = {0}"},
                 {"S", 2, true, V::trivial, "D(S*^2) = {0}"},
                 {"C*D", 2, false, V::trivial, "S = CD, D(S^2) = {0}"},
                 {"T", 2, false, V::nontrivial, "D(T^2) = D(S) + D(S*) != {0}"},
                 {"T", 3, false, V::nontrivial, "D(T^3) = D(B) + D(A^-1) + {0} + {0} != {0}"},
                 {"T", 4, false, V::trivial, "D(T^4) = D(S^2) + D(S*^2) = {0}"},
                 {"T", 3, true, V::nontrivial, "D(T*^3) != {0}"},
                 {"T", 4, true, V::trivial, "D(T*^4) = {0}"}});
  if (name == "sixth")
    return make(name, kPairFacts,
                {{"S", "[0, B; A, 0]"},
                 {"CDCDC", "[B, 0; 0, A] * [0, I; I, 0] * [B, 0; 0, A] * [0, I; I, 0] * [B, 0; 0, A]"},
                 {"DCDCD", "[0, I; I, 0] * [B, 0; 0, A] * [0, I; I, 0] * [B, 0; 0, A] * [0, I; I, 0]"},
                 {"T", "[0, [B, 0; 0, A]; [0, I; I, 0], 0]"}},
                {{"S", 3, false, V::trivial, "D(S^3) = {0}"},
                 {"S", 3, true, V::trivial, "D(S*^3) = {0}"},
                 {"CDCDC", 1, false, V::trivial, "D(CDCDC) = {0}"},
                 {"DCDCD", 1, false, V::nontrivial, "D(DCDCD) != {0}"},
                 {"T", 5, false, V::nontrivial, "D(T^5) != {0}"},
                 {"T", 5, true, V::nontrivial, "D(T*^5) != {0}"},
                 {"T", 6, false, V::trivial, "D(T^6) = D(S^3) + D(S*^3) = {0}"},
                 {"T", 6, true, V::trivial, "D(T*^6) = {0}"}});
  if (name.rfind("nested:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(7));
    } catch (const std::exception&) {
      throw UnknownScenario("bad nested scenario name: " + name);
    }
    return nested_scenario(n);
  }
  throw UnknownScenario("unknown scenario: " + name);
}

NestedConstruction nested_construction(int n) {
  if (n < 1 || n > 10) throw OutOfRange("nested construction needs 1 <= n <= 10");
  NestedConstruction out{load_facts(kLemmaFacts)};

  Expr p = ex::atom("P");
  Expr q = ex::atom("Q");
  Expr t = ex::offdiag(p, q);
  for (int k = 1; k < n; ++k) {
    // t = [0, X; Y, 0] = diag(X, Y) * swap; the next level is [0, C; swap, 0].
    Expr c = ex::diag(t->kids[1], t->kids[2]);
    t = ex::offdiag(c, ex::swap(shape_of(t->kids[1])));
  }
  out.block_form = t;

  // Flattened form by index arithmetic.
  MonomialMatrix m;
  m.shape = Shape::pair(Shape::base(), Shape::base());
  m.col_of_row = {1, 0};
  m.chains = {{Factor{"P"}}, {Factor{"Q"}}};
  for (int k = 1; k < n; ++k) {
    const int d = m.dim();
    const int h = d / 2;
    MonomialMatrix next;
    next.shape = Shape::pair(m.shape, m.shape);
    next.col_of_row.assign(2 * d, -1);
    next.chains.resize(2 * d);
    // Upper-right block C = diag(X, Y): X sits in rows [0,h) reading columns
    // [h,d) of m, Y in rows [h,d) reading columns [0,h).
    for (int r = 0; r < d; ++r) {
      int c = m.col_of_row[r];
      int local = r < h ? c - h : c + h;
      next.col_of_row[r] = d + local;
      next.chains[r] = m.chains[r];
    }
    // Lower-left block: the swap of the two halves.
    for (int i = 0; i < d; ++i) next.col_of_row[d + i] = (i + h) % d;
    m = std::move(next);
  }
  out.flat_form = std::move(m);
  return out;
}

Scenario nested_scenario(int n) {
  NestedConstruction nc = nested_construction(n);
  Scenario s;
  s.name = "nested:" + std::to_string(n);
  s.facts_text = kLemmaFacts;
  s.facts = std::move(nc.facts);
  s.named_exprs["T"] = nc.block_form;
  const int top = 1 << n;
  const std::string cite = "D(T^(2^n - 1)) != {0} and D(T^(2^n)) = {0}";
  s.expected = {{"T", top - 1, false, V::nontrivial, cite},
                {"T", top, false, V::trivial, cite},
                {"T", top - 1, true, V::nontrivial, cite},
                {"T", top, true, V::trivial, cite}};
  return s;
}

bool verdict_matches(Verdict expected, Verdict derived) {
  if (expected == derived) return true;
  return expected == Verdict::nontrivial && derived == Verdict::dense;
}

namespace {

std::string label(const Expectation& x) {
  std::string base = x.expr_name.size() == 1 ? x.expr_name : "(" + x.expr_name + ")";
  if (x.adjoint) base += "'";
  if (x.power > 1) base += "^" + std::to_string(x.power);
  return "dom(" + base + ")";
}

}  // namespace

Report run_scenario(const Scenario& s) {
  auto start = std::chrono::steady_clock::now();
  Report r;
  r.scenario = s.name;
  r.pass = true;
  for (const auto& x : s.expected) {
    ReportRow row{label(x), x.verdict, Verdict::unknown, false, nullptr, {}};
    try {
      VerdictResult v = verdict_of(s.expression_for(x), s.facts);
      row.derived = v.verdict;
      row.derivation = v.proof;
      row.match = verdict_matches(x.verdict, v.verdict);
    } catch (const Error& e) {
      row.error = e.what();
    }
    r.pass = r.pass && row.match;
    r.rows.push_back(std::move(row));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report run_proposition(const std::string& name) { return run_scenario(scenario(name)); }

ConjectureStatus conjecture_status(int n) {
  if (n < 2) throw OutOfRange("the conjecture is stated for n >= 2");
  if (n == 3) return {true, "cube"};
  if (n == 4) return {true, "fourth"};
  if (n == 6) return {true, "sixth"};
  for (int k = 1; k <= 10; ++k)
    if (n == (1 << k)) return {true, "nested:" + std::to_string(k)};
  return {false, {}};
}

nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["pass"] = r.pass;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["judgment"] = row.judgment;
    o["expected"] = to_string(row.expected);
    o["derived"] = to_string(row.derived);
    o["match"] = row.match;
    o["derivation_nodes"] = derivation_size(row.derivation);
    if (!row.error.empty()) o["error"] = row.error;
    j["rows"].push_back(o);
  }
  return j;
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << "scenario " << r.scenario << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
  std::size_t w = 8;
  for (const auto& row : r.rows) w = std::max(w, row.judgment.size());
  for (const auto& row : r.rows) {
    out << "  " << row.judgment << std::string(w - row.judgment.size() + 2, ' ')
        << "expected " << to_string(row.expected)
        << std::string(11 - to_string(row.expected).size(), ' ') << "derived "
        << to_string(row.derived) << std::string(11 - to_string(row.derived).size(), ' ')
        << (row.match ? "ok" : "MISMATCH");
    if (!row.error.empty()) out << "  (" << row.error << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace domcalc
