#include "domcalc/derivation.hpp"

#include <functional>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "domcalc/errors.hpp"
#include "domcalc/facts.hpp"
#include "domcalc/normalize.hpp"

namespace domcalc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::unknown: return "Unknown";
    case Verdict::trivial: return "Trivial";
    case Verdict::nontrivial: return "NonTrivial";
    case Verdict::dense: return "Dense";
  }
  return "?";
}

bool contradicts(Verdict a, Verdict b) {
  auto positive = [](Verdict v) { return v == Verdict::nontrivial || v == Verdict::dense; };
  return (a == Verdict::trivial && positive(b)) || (b == Verdict::trivial && positive(a));
}

Verdict more_specific(Verdict a, Verdict b) { return int(a) >= int(b) ? a : b; }

namespace judge {
Judgment dom_eq(Expr e, DomainSet s) { return {JudgmentKind::dom_eq, std::move(e), std::move(s)}; }
Judgment set_eq(DomainSet a, DomainSet b) {
  return {JudgmentKind::set_eq, nullptr, std::move(a), std::move(b)};
}
Judgment injective(Expr e) { return {JudgmentKind::injective, std::move(e)}; }
Judgment dense(DomainSet s) { return {JudgmentKind::dense, nullptr, std::move(s)}; }
Judgment nontrivial(DomainSet s) { return {JudgmentKind::nontrivial, nullptr, std::move(s)}; }
Judgment verdict(Expr e, Verdict v) {
  return {JudgmentKind::verdict, std::move(e), nullptr, nullptr, v};
}
}  // namespace judge

std::string to_string(const Judgment& j) {
  switch (j.kind) {
    case JudgmentKind::dom_eq: return "dom(" + pretty_print(j.expr) + ") = " + to_string(j.lhs);
    case JudgmentKind::set_eq: return to_string(j.lhs) + " = " + to_string(j.rhs);
    case JudgmentKind::injective: return "injective(" + pretty_print(j.expr) + ")";
    case JudgmentKind::dense: return "dense(" + to_string(j.lhs) + ")";
    case JudgmentKind::nontrivial: return "nontrivial(" + to_string(j.lhs) + ")";
    case JudgmentKind::verdict:
      return "dom(" + pretty_print(j.expr) + ") is " + to_string(j.verdict);
  }
  return "?";
}

bool judgment_equal(const Judgment& a, const Judgment& b) {
  if (a.kind != b.kind || a.verdict != b.verdict) return false;
  if (bool(a.expr) != bool(b.expr) || (a.expr && !structurally_equal(a.expr, b.expr))) return false;
  if (bool(a.lhs) != bool(b.lhs) || (a.lhs && !set_equal(a.lhs, b.lhs))) return false;
  if (bool(a.rhs) != bool(b.rhs) || (a.rhs && !set_equal(a.rhs, b.rhs))) return false;
  return true;
}

DerivationPtr derive(std::string rule, Judgment conclusion, std::vector<DerivationPtr> premises,
                     std::vector<std::string> axioms) {
  return std::make_shared<const Derivation>(
      Derivation{std::move(rule), std::move(conclusion), std::move(premises), std::move(axioms)});
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "D-ATOM",     "D-ID",        "D-COMP-WHOLE", "D-COMP",      "D-BLOCK",
      "REGROUP",    "NORM-MONOMIAL", "FACT-MATCH", "DOM-TRANS",   "REFL",
      "TRANS",      "CONG",        "S-INT-TRIV",   "S-INT-WHOLE", "S-INT-SELF",
      "S-INT-PRE",  "MEET-FACT",   "S-PRE-COMP",   "S-PRE-TRIV",  "S-PRE-RANGE",
      "S-KER-INJ",  "RANGE-FACT",  "RANGE-INV",    "S-SUM-TRIV",  "S-SUM-WHOLE",
      "S-PRE-WHOLE", "INJ-FLAG",   "INJ-INV",      "INJ-ID",      "INJ-COMP",
      "INJ-BLOCK",  "DENSE-WHOLE", "DENSE-FLAG",   "DENSE-MARK",  "DENSE-SUM",
      "NT-DENSE",   "NT-SUM",      "V-TRIVIAL",    "V-DENSE",     "V-NONTRIVIAL",
      "V-UNKNOWN"};
  return names;
}

// ---------------------------------------------------------------------------
// Checker. Everything below re-derives rule side conditions from the
// declarations; it never calls the inference engine.

namespace {

struct Reject {
  std::string reason;
};

[[noreturn]] void reject(const std::string& why) { throw Reject{why}; }

void require(bool cond, const std::string& why) {
  if (!cond) reject(why);
}

// Factor-form expression: a, a', a^-1, (a^-1)'.
std::optional<Factor> as_factor(const Expr& e) {
  Factor f;
  Expr cur = e;
  if (cur->kind == ExprKind::adjoint) {
    f.adjoint = true;
    cur = cur->kids[0];
  }
  if (cur->kind == ExprKind::inverse) {
    f.inverse = true;
    cur = cur->kids[0];
  }
  if (cur->kind != ExprKind::atom || !cur->shape.is_base()) return std::nullopt;
  f.atom = cur->atom;
  return f;
}

void flatten_into(const Expr& e, std::vector<std::string>& out) {
  if (e->kind == ExprKind::compose) {
    flatten_into(e->kids[0], out);
    flatten_into(e->kids[1], out);
  } else {
    out.push_back(pretty_print(e));
  }
}

std::vector<std::string> flatten(const Expr& e) {
  std::vector<std::string> out;
  flatten_into(e, out);
  return out;
}

const Derivation& premise(const Derivation& d, std::size_t i, JudgmentKind k) {
  require(d.premises.size() > i && d.premises[i], "missing premise");
  require(d.premises[i]->conclusion.kind == k, "premise has the wrong judgment kind");
  return *d.premises[i];
}

void premise_count(const Derivation& d, std::size_t n) {
  require(d.premises.size() == n, "expected " + std::to_string(n) + " premise(s)");
}

void no_axioms(const Derivation& d) { require(d.axioms.empty(), "rule cites no axioms"); }

const Axiom& one_axiom(const Derivation& d, const FactBase& facts) {
  require(d.axioms.size() == 1, "rule cites exactly one axiom");
  const Axiom* ax = facts.find(d.axioms[0]);
  require(ax != nullptr, "cited axiom not in fact base: " + d.axioms[0]);
  return *ax;
}

bool is_atom_dom(const DomainSet& s, const std::string& atom) {
  return s->kind == SetKind::dom_atom && s->expr->kind == ExprKind::atom && s->expr->atom == atom;
}

// L equals R with every occurrence of a replaced by b at some positions.
bool congruent(const DomainSet& l, const DomainSet& r, const DomainSet& a, const DomainSet& b) {
  if (set_equal(l, r)) return true;
  if (set_equal(l, a) && set_equal(r, b)) return true;
  if (l->kind != r->kind || !(l->shape == r->shape)) return false;
  switch (l->kind) {
    case SetKind::preimage:
      return structurally_equal(l->expr, r->expr) && congruent(l->a, r->a, a, b);
    case SetKind::intersect:
    case SetKind::direct_sum:
      return congruent(l->a, r->a, a, b) && congruent(l->b, r->b, a, b);
    default:
      return false;
  }
}

bool dense_flag(const Expr& e, const AtomTable& atoms) {
  auto f = as_factor(e);
  return f && factor_flags(*f, atoms).has(Flag::densely_defined);
}

void check_node(const Derivation& d, const FactBase& facts) {
  const Judgment& c = d.conclusion;
  const AtomTable& atoms = facts.atoms();
  const std::string& r = d.rule;
  using K = JudgmentKind;

  if (r != "FACT-MATCH" && r != "MEET-FACT" && r != "RANGE-FACT" && r != "DENSE-MARK")
    no_axioms(d);

  if (r == "D-ATOM") {
    premise_count(d, 0);
    require(c.kind == K::dom_eq, "D-ATOM concludes dom(e) = S");
    if (c.lhs->kind == SetKind::dom_atom && structurally_equal(c.lhs->expr, c.expr)) return;
    auto f = as_factor(c.expr);
    require(f && c.lhs->kind == SetKind::whole && c.lhs->shape.is_base() &&
                factor_flags(*f, atoms).has(Flag::everywhere_defined),
            "whole domain needs an everywhere defined factor");
  } else if (r == "D-ID") {
    premise_count(d, 0);
    require(c.kind == K::dom_eq &&
                (c.expr->kind == ExprKind::identity || c.expr->kind == ExprKind::zero),
            "D-ID applies to I and 0");
    require(c.lhs->kind == SetKind::whole && c.lhs->shape == c.expr->shape, "D-ID gives whole");
  } else if (r == "D-COMP-WHOLE" || r == "D-COMP") {
    premise_count(d, 2);
    require(c.kind == K::dom_eq && c.expr->kind == ExprKind::compose, "composition expected");
    const auto& px = premise(d, 0, K::dom_eq).conclusion;
    const auto& py = premise(d, 1, K::dom_eq).conclusion;
    require(structurally_equal(px.expr, c.expr->kids[0]) &&
                structurally_equal(py.expr, c.expr->kids[1]),
            "premises must be about the two factors");
    if (r == "D-COMP-WHOLE") {
      require(px.lhs->kind == SetKind::whole, "left factor must be everywhere defined");
      require(set_equal(c.lhs, py.lhs), "domain must equal the right factor's");
    } else {
      require(set_equal(c.lhs, sets::intersect(py.lhs, sets::preimage(py.expr, px.lhs))),
              "domain must be dom(Y) ∩ pre(Y, dom(X))");
    }
  } else if (r == "D-BLOCK") {
    premise_count(d, 4);
    require(c.kind == K::dom_eq && c.expr->kind == ExprKind::block2, "block expected");
    DomainSet s[4];
    for (int i = 0; i < 4; ++i) {
      const auto& p = premise(d, i, K::dom_eq).conclusion;
      require(structurally_equal(p.expr, c.expr->kids[i]), "premise for the wrong entry");
      s[i] = p.lhs;
    }
    require(set_equal(c.lhs, sets::direct_sum(sets::intersect(s[0], s[2]),
                                              sets::intersect(s[1], s[3]))),
            "block domain is the direct sum of column intersections");
  } else if (r == "REGROUP") {
    premise_count(d, 1);
    const auto& p = premise(d, 0, K::dom_eq).conclusion;
    require(c.kind == K::dom_eq && set_equal(c.lhs, p.lhs), "same domain expected");
    require(flatten(c.expr) == flatten(p.expr), "regrouping must keep the factor sequence");
  } else if (r == "NORM-MONOMIAL") {
    premise_count(d, 1);
    const auto& p = premise(d, 0, K::dom_eq).conclusion;
    require(c.kind == K::dom_eq && set_equal(c.lhs, p.lhs), "same domain expected");
    MonomialMatrix nf;
    try {
      nf = normalize(c.expr, atoms);
    } catch (const Error& e) {
      reject(std::string("expression does not normalize: ") + e.what());
    }
    require(structurally_equal(to_expr(nf), p.expr), "premise is not the monomial normal form");
  } else if (r == "FACT-MATCH") {
    premise_count(d, 0);
    const Axiom& ax = one_axiom(d, facts);
    require(ax.kind == AxiomKind::dom_eq && c.kind == K::dom_eq, "dom axiom expected");
    std::vector<std::string> key;
    for (const Factor& f : ax.key) key.push_back(pretty_print(factor_expr(f)));
    require(flatten(c.expr) == key, "axiom key does not match the expression");
    require(set_equal(c.lhs, facts.rhs_set(ax)), "axiom right-hand side differs");
  } else if (r == "DOM-TRANS") {
    premise_count(d, 2);
    const auto& a = premise(d, 0, K::dom_eq).conclusion;
    const auto& b = premise(d, 1, K::set_eq).conclusion;
    require(c.kind == K::dom_eq && structurally_equal(c.expr, a.expr), "same expression expected");
    require(set_equal(a.lhs, b.lhs) && set_equal(c.lhs, b.rhs), "equalities do not chain");
  } else if (r == "REFL") {
    premise_count(d, 0);
    require(c.kind == K::set_eq && set_equal(c.lhs, c.rhs), "REFL needs identical sides");
  } else if (r == "TRANS") {
    premise_count(d, 2);
    const auto& a = premise(d, 0, K::set_eq).conclusion;
    const auto& b = premise(d, 1, K::set_eq).conclusion;
    require(c.kind == K::set_eq && set_equal(c.lhs, a.lhs) && set_equal(a.rhs, b.lhs) &&
                set_equal(b.rhs, c.rhs),
            "equalities do not chain");
  } else if (r == "CONG") {
    premise_count(d, 1);
    const auto& p = premise(d, 0, K::set_eq).conclusion;
    require(c.kind == K::set_eq && congruent(c.lhs, c.rhs, p.lhs, p.rhs),
            "sides differ by more than the premise");
  } else if (r.rfind("S-", 0) == 0 || r == "MEET-FACT" || r == "RANGE-FACT" || r == "RANGE-INV") {
    require(c.kind == K::set_eq, "set equality expected");
    const DomainSet& l = c.lhs;
    const DomainSet& rr = c.rhs;
    if (r == "S-INT-TRIV") {
      premise_count(d, 0);
      require(l->kind == SetKind::intersect &&
                  (l->a->kind == SetKind::trivial || l->b->kind == SetKind::trivial) &&
                  rr->kind == SetKind::trivial && rr->shape == l->shape,
              "S-INT-TRIV pattern");
    } else if (r == "S-INT-WHOLE") {
      premise_count(d, 0);
      require(l->kind == SetKind::intersect &&
                  ((l->a->kind == SetKind::whole && set_equal(l->b, rr)) ||
                   (l->b->kind == SetKind::whole && set_equal(l->a, rr))),
              "S-INT-WHOLE pattern");
    } else if (r == "S-INT-SELF") {
      premise_count(d, 0);
      require(l->kind == SetKind::intersect && set_equal(l->a, l->b) && set_equal(l->a, rr),
              "S-INT-SELF pattern");
    } else if (r == "S-INT-PRE") {
      premise_count(d, 1);
      const auto& p = premise(d, 0, K::dom_eq).conclusion;
      require(l->kind == SetKind::intersect && l->b->kind == SetKind::preimage &&
                  set_equal(l->b, rr) && structurally_equal(p.expr, l->b->expr) &&
                  set_equal(p.lhs, l->a),
              "S-INT-PRE pattern");
    } else if (r == "MEET-FACT") {
      premise_count(d, 0);
      const Axiom& ax = one_axiom(d, facts);
      require(ax.kind == AxiomKind::meet_trivial && l->kind == SetKind::intersect &&
                  rr->kind == SetKind::trivial,
              "meet axiom pattern");
      require((is_atom_dom(l->a, ax.first) && is_atom_dom(l->b, ax.second)) ||
                  (is_atom_dom(l->a, ax.second) && is_atom_dom(l->b, ax.first)),
              "meet axiom names other atoms");
    } else if (r == "S-PRE-COMP") {
      premise_count(d, 0);
      require(l->kind == SetKind::preimage && l->expr->kind == ExprKind::compose,
              "preimage under a composition expected");
      const Expr& x = l->expr->kids[0];
      const Expr& y = l->expr->kids[1];
      require(set_equal(rr, sets::preimage(y, sets::preimage(x, l->a))), "S-PRE-COMP pattern");
    } else if (r == "S-PRE-TRIV") {
      premise_count(d, 0);
      require(l->kind == SetKind::preimage && l->a->kind == SetKind::trivial &&
                  set_equal(rr, sets::kernel(l->expr)),
              "S-PRE-TRIV pattern");
    } else if (r == "S-PRE-RANGE") {
      premise_count(d, 1);
      const auto& p = premise(d, 0, K::set_eq).conclusion;
      require(l->kind == SetKind::preimage && set_equal(rr, sets::kernel(l->expr)),
              "S-PRE-RANGE pattern");
      require(set_equal(p.lhs, sets::intersect(sets::range(l->expr), l->a)) &&
                  p.rhs->kind == SetKind::trivial,
              "S-PRE-RANGE needs ran(e) ∩ S = {0}");
    } else if (r == "S-KER-INJ") {
      premise_count(d, 1);
      const auto& p = premise(d, 0, K::injective).conclusion;
      require(l->kind == SetKind::kernel && structurally_equal(l->expr, p.expr) &&
                  rr->kind == SetKind::trivial && rr->shape == l->shape,
              "S-KER-INJ pattern");
    } else if (r == "RANGE-FACT") {
      premise_count(d, 0);
      const Axiom& ax = one_axiom(d, facts);
      require((ax.kind == AxiomKind::range || ax.kind == AxiomKind::inverse_link) &&
                  l->kind == SetKind::range && l->expr->kind == ExprKind::atom &&
                  l->expr->atom == ax.first && is_atom_dom(rr, ax.second),
              "range axiom pattern");
    } else if (r == "RANGE-INV") {
      premise_count(d, 0);
      require(l->kind == SetKind::range && l->expr->kind == ExprKind::inverse &&
                  rr->kind == SetKind::dom_atom &&
                  structurally_equal(rr->expr, l->expr->kids[0]),
              "ran(a^-1) = dom(a) pattern");
    } else if (r == "S-SUM-TRIV") {
      premise_count(d, 0);
      require(l->kind == SetKind::direct_sum && l->a->kind == SetKind::trivial &&
                  l->b->kind == SetKind::trivial && rr->kind == SetKind::trivial &&
                  rr->shape == l->shape,
              "S-SUM-TRIV pattern");
    } else if (r == "S-SUM-WHOLE") {
      premise_count(d, 0);
      require(l->kind == SetKind::direct_sum && l->a->kind == SetKind::whole &&
                  l->b->kind == SetKind::whole && rr->kind == SetKind::whole &&
                  rr->shape == l->shape,
              "S-SUM-WHOLE pattern");
    } else if (r == "S-PRE-WHOLE") {
      premise_count(d, 1);
      const auto& p = premise(d, 0, K::dom_eq).conclusion;
      require(l->kind == SetKind::preimage && l->a->kind == SetKind::whole &&
                  structurally_equal(p.expr, l->expr) && set_equal(p.lhs, rr),
              "S-PRE-WHOLE pattern");
    } else {
      reject("unknown rule " + r);
    }
  } else if (r == "INJ-FLAG" || r == "INJ-INV") {
    premise_count(d, 0);
    require(c.kind == K::injective, "injectivity expected");
    auto f = as_factor(c.expr);
    require(bool(f), "factor expected");
    if (r == "INJ-FLAG")
      require(!f->adjoint && !f->inverse && atoms.has_flag(f->atom, Flag::injective),
              "atom not declared injective");
    else
      require(f->inverse && !f->adjoint, "inverse expected");
  } else if (r == "INJ-ID") {
    premise_count(d, 0);
    require(c.kind == K::injective && c.expr->kind == ExprKind::identity, "identity expected");
  } else if (r == "INJ-COMP") {
    premise_count(d, 2);
    require(c.kind == K::injective && c.expr->kind == ExprKind::compose, "composition expected");
    require(structurally_equal(premise(d, 0, K::injective).conclusion.expr, c.expr->kids[0]) &&
                structurally_equal(premise(d, 1, K::injective).conclusion.expr, c.expr->kids[1]),
            "premises must cover both factors");
  } else if (r == "INJ-BLOCK") {
    premise_count(d, 2);
    require(c.kind == K::injective && c.expr->kind == ExprKind::block2, "block expected");
    const auto& k = c.expr->kids;
    const Expr& p0 = premise(d, 0, K::injective).conclusion.expr;
    const Expr& p1 = premise(d, 1, K::injective).conclusion.expr;
    bool diagonal = k[1]->kind == ExprKind::zero && k[2]->kind == ExprKind::zero &&
                    structurally_equal(p0, k[0]) && structurally_equal(p1, k[3]);
    bool anti = k[0]->kind == ExprKind::zero && k[3]->kind == ExprKind::zero &&
                structurally_equal(p0, k[1]) && structurally_equal(p1, k[2]);
    require(diagonal || anti, "INJ-BLOCK needs a diagonal or anti-diagonal block");
  } else if (r == "DENSE-WHOLE") {
    premise_count(d, 0);
    require(c.kind == K::dense && c.lhs->kind == SetKind::whole, "DENSE-WHOLE pattern");
  } else if (r == "DENSE-FLAG") {
    premise_count(d, 0);
    require(c.kind == K::dense && c.lhs->kind == SetKind::dom_atom &&
                dense_flag(c.lhs->expr, atoms),
            "factor not declared densely defined");
  } else if (r == "DENSE-MARK") {
    premise_count(d, 0);
    const Axiom& ax = one_axiom(d, facts);
    require(c.kind == K::dense && ax.kind == AxiomKind::dense && is_atom_dom(c.lhs, ax.first),
            "dense axiom pattern");
  } else if (r == "DENSE-SUM") {
    premise_count(d, 2);
    require(c.kind == K::dense && c.lhs->kind == SetKind::direct_sum &&
                set_equal(premise(d, 0, K::dense).conclusion.lhs, c.lhs->a) &&
                set_equal(premise(d, 1, K::dense).conclusion.lhs, c.lhs->b),
            "DENSE-SUM pattern");
  } else if (r == "NT-DENSE") {
    premise_count(d, 1);
    require(c.kind == K::nontrivial && set_equal(premise(d, 0, K::dense).conclusion.lhs, c.lhs),
            "NT-DENSE pattern");
  } else if (r == "NT-SUM") {
    premise_count(d, 1);
    const auto& p = premise(d, 0, K::nontrivial).conclusion;
    require(c.kind == K::nontrivial && c.lhs->kind == SetKind::direct_sum &&
                (set_equal(p.lhs, c.lhs->a) || set_equal(p.lhs, c.lhs->b)),
            "NT-SUM pattern");
  } else if (r == "V-TRIVIAL" || r == "V-DENSE" || r == "V-NONTRIVIAL" || r == "V-UNKNOWN") {
    require(c.kind == K::verdict, "verdict expected");
    const auto& p = premise(d, 0, K::dom_eq).conclusion;
    require(structurally_equal(p.expr, c.expr), "verdict about another expression");
    if (r == "V-TRIVIAL") {
      premise_count(d, 1);
      require(c.verdict == Verdict::trivial && p.lhs->kind == SetKind::trivial,
              "V-TRIVIAL needs dom = {0}");
    } else if (r == "V-UNKNOWN") {
      premise_count(d, 1);
      require(c.verdict == Verdict::unknown, "V-UNKNOWN concludes Unknown");
    } else {
      premise_count(d, 2);
      auto kind = r == "V-DENSE" ? K::dense : K::nontrivial;
      require(set_equal(premise(d, 1, kind).conclusion.lhs, p.lhs), "property of another set");
      require(c.verdict == (r == "V-DENSE" ? Verdict::dense : Verdict::nontrivial),
              "verdict does not match rule");
    }
  } else {
    reject("unknown rule " + r);
  }
}

}  // namespace

CheckResult verify_derivation(const DerivationPtr& root, const FactBase& facts) {
  CheckResult result;
  if (!root || root->rule.empty()) {
    result.ok = false;
    result.reason = "empty derivation";
    return result;
  }
  std::unordered_set<const Derivation*> done;
  std::function<void(const Derivation&)> walk = [&](const Derivation& d) {
    if (!done.insert(&d).second) return;
    for (const auto& p : d.premises) {
      if (!p) {
        result.ok = false;
        result.failing_rule = d.rule;
        result.failing_conclusion = to_string(d.conclusion);
        result.reason = "null premise";
        throw Reject{};
      }
      walk(*p);
    }
    try {
      check_node(d, facts);
    } catch (const Reject& r) {
      result.ok = false;
      result.failing_rule = d.rule;
      result.failing_conclusion = to_string(d.conclusion);
      result.reason = r.reason;
      throw;
    } catch (const Error& e) {
      result.ok = false;
      result.failing_rule = d.rule;
      result.failing_conclusion = to_string(d.conclusion);
      result.reason = e.what();
      throw Reject{};
    }
  };
  try {
    walk(*root);
  } catch (const Reject&) {
    result.ok = false;
  }
  return result;
}

namespace {

nlohmann::ordered_json to_json(const Derivation& d) {
  nlohmann::ordered_json j;
  j["rule"] = d.rule;
  j["conclusion"] = to_string(d.conclusion);
  j["premises"] = nlohmann::ordered_json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(*p));
  j["axioms"] = d.axioms;
  return j;
}

void to_markdown(const Derivation& d, int depth, std::string& out) {
  out.append(std::size_t(2 * depth), ' ');
  out += "- " + d.rule + ": " + to_string(d.conclusion);
  if (!d.axioms.empty()) {
    out += " [axioms:";
    for (const auto& a : d.axioms) out += " \"" + a + "\"";
    out += "]";
  }
  out += '\n';
  for (const auto& p : d.premises) to_markdown(*p, depth + 1, out);
}

}  // namespace

std::string export_trace(const DerivationPtr& d, const FactBase& facts, TraceFormat format) {
  CheckResult check = verify_derivation(d, facts);
  if (!check) throw UnverifiedDerivation("derivation does not verify: " + check.reason);
  if (format == TraceFormat::json) return to_json(*d).dump(2) + "\n";
  std::string out;
  to_markdown(*d, 0, out);
  return out;
}

std::vector<std::string> cited_axioms(const DerivationPtr& d) {
  std::set<std::string> ids;
  std::unordered_set<const Derivation*> seen;
  std::function<void(const Derivation&)> walk = [&](const Derivation& n) {
    if (!seen.insert(&n).second) return;
    ids.insert(n.axioms.begin(), n.axioms.end());
    for (const auto& p : n.premises)
      if (p) walk(*p);
  };
  if (d) walk(*d);
  return {ids.begin(), ids.end()};
}

std::size_t derivation_size(const DerivationPtr& d) {
  std::unordered_set<const Derivation*> seen;
  std::function<void(const Derivation&)> walk = [&](const Derivation& n) {
    if (!seen.insert(&n).second) return;
    for (const auto& p : n.premises)
      if (p) walk(*p);
  };
  if (d) walk(*d);
  return seen.size();
}

}  // namespace domcalc
