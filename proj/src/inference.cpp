#include "domcalc/inference.hpp"

#include <map>
#include <set>

#include "domcalc/errors.hpp"
#include "domcalc/normalize.hpp"

namespace domcalc {

namespace {

std::optional<Factor> factor_form(const Expr& e) {
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

void leaves(const Expr& e, std::vector<Expr>& out) {
  if (e->kind == ExprKind::compose) {
    leaves(e->kids[0], out);
    leaves(e->kids[1], out);
  } else {
    out.push_back(e);
  }
}

// Chain read off a Base-shaped expression built by chain_expr.
std::optional<Chain> as_chain(const Expr& e) {
  if (!shape_of(e).is_base()) return std::nullopt;
  if (e->kind == ExprKind::identity) return Chain{};
  std::vector<Expr> ls;
  leaves(e, ls);
  Chain c;
  for (const Expr& l : ls) {
    if (auto f = factor_form(l)) {
      c.push_back(*f);
    } else if (l->kind == ExprKind::adjoint || l->kind == ExprKind::inverse) {
      Factor o;
      o.opaque = l;
      o.atom = pretty_print(l);
      c.push_back(o);
    } else {
      return std::nullopt;
    }
  }
  if (!structurally_equal(chain_expr(c), e)) return std::nullopt;
  return c;
}

DerivationPtr trans(DerivationPtr a, DerivationPtr b) {
  if (!a) return b;
  if (!b) return a;
  return derive("TRANS", judge::set_eq(a->conclusion.lhs, b->conclusion.rhs), {a, b});
}

struct Classified {
  Verdict verdict = Verdict::unknown;
  DerivationPtr proof;  // dense(S) or nontrivial(S) when definite and positive
};

struct ChainResult {
  DomainSet set;
  DerivationPtr proof;
  Classified cls;
  std::vector<Verdict> candidates;
};

class Engine {
 public:
  explicit Engine(const FactBase& facts) : facts_(facts), atoms_(facts.atoms()) {}

  // -- chains ---------------------------------------------------------------

  const ChainResult& chain_domain(const Chain& c) {
    std::string key = compact_chain(c);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!in_progress_.insert(key).second) {
      // Re-entrant request: fall back to the tautology.
      static thread_local ChainResult fallback;
      Expr e = chain_expr(c);
      fallback.set = sets::dom(e);
      fallback.proof = derive("D-ATOM", judge::dom_eq(e, fallback.set));
      fallback.cls = {};
      return fallback;
    }
    ChainResult r = compute_chain(c);
    in_progress_.erase(key);
    return memo_.emplace(key, std::move(r)).first->second;
  }

  std::vector<Verdict> top_level_verdicts(const Chain& c) { return chain_domain(c).candidates; }

  // -- structural domains ---------------------------------------------------

  DomainResult domain(const Expr& e) {
    if (auto c = as_chain(e); c && !c->empty()) {
      const ChainResult& r = chain_domain(*c);
      return {r.set, r.proof};
    }
    switch (e->kind) {
      case ExprKind::identity:
      case ExprKind::zero: {
        DomainSet w = sets::whole(e->shape);
        return {w, derive("D-ID", judge::dom_eq(e, w))};
      }
      case ExprKind::atom: {
        DomainSet s = sets::dom(e);
        return {s, derive("D-ATOM", judge::dom_eq(e, s))};
      }
      case ExprKind::compose: {
        DomainResult dx = domain(e->kids[0]);
        DomainResult dy = domain(e->kids[1]);
        if (dx.set->kind == SetKind::whole)
          return {dy.set, derive("D-COMP-WHOLE", judge::dom_eq(e, dy.set), {dx.proof, dy.proof})};
        DomainSet s0 = sets::intersect(dy.set, sets::preimage(e->kids[1], dx.set));
        auto node = derive("D-COMP", judge::dom_eq(e, s0), {dx.proof, dy.proof});
        return finish(e, node);
      }
      case ExprKind::block2: {
        DomainResult d[4];
        for (int i = 0; i < 4; ++i) d[i] = domain(e->kids[i]);
        DomainSet s0 = sets::direct_sum(sets::intersect(d[0].set, d[2].set),
                                        sets::intersect(d[1].set, d[3].set));
        auto node = derive("D-BLOCK", judge::dom_eq(e, s0),
                           {d[0].proof, d[1].proof, d[2].proof, d[3].proof});
        return finish(e, node);
      }
      default:
        break;
    }
    try {
      Expr nf = to_expr(normalize(e, atoms_));
      if (!structurally_equal(nf, e)) {
        DomainResult inner = domain(nf);
        return {inner.set,
                derive("NORM-MONOMIAL", judge::dom_eq(e, inner.set), {inner.proof})};
      }
    } catch (const NonNormalizable&) {
    }
    DomainSet s = sets::dom(e);
    return {s, derive("D-ATOM", judge::dom_eq(e, s))};
  }

  // -- simplification -------------------------------------------------------

  SimplifyResult simplify(const DomainSet& s) {
    // Rewritten subterms recur constantly (S-PRE-COMP rebuilds nested
    // preimages); without the memo the fixpoint is exponential in depth.
    std::string key = set_key(s);
    if (auto it = simplify_memo_.find(key); it != simplify_memo_.end()) return it->second;
    SimplifyResult r = simplify_uncached(s);
    simplify_memo_.emplace(std::move(key), r);
    return r;
  }

  static std::string set_key(const DomainSet& s) {
    std::string k = std::to_string(int(s->kind)) + "|" + s->shape.to_string();
    if (s->expr) k += "|" + pretty_print(s->expr) + "@" + shape_of(s->expr).to_string();
    if (s->a) k += "(" + set_key(s->a) + ")";
    if (s->b) k += "(" + set_key(s->b) + ")";
    return k;
  }

  SimplifyResult simplify_uncached(const DomainSet& s) {
    DomainSet cur = s;
    DerivationPtr proof;
    switch (s->kind) {
      case SetKind::intersect:
      case SetKind::direct_sum: {
        SimplifyResult ra = simplify(s->a);
        if (ra.set != s->a) {
          DomainSet next = rebuild(cur, ra.set, cur->b);
          proof = trans(proof, derive("CONG", judge::set_eq(cur, next), {ra.proof}));
          cur = next;
        }
        SimplifyResult rb = simplify(s->b);
        if (rb.set != s->b) {
          DomainSet next = rebuild(cur, cur->a, rb.set);
          proof = trans(proof, derive("CONG", judge::set_eq(cur, next), {rb.proof}));
          cur = next;
        }
        break;
      }
      case SetKind::preimage: {
        SimplifyResult ri = simplify(s->a);
        if (ri.set != s->a) {
          DomainSet next = sets::preimage(s->expr, ri.set);
          proof = trans(proof, derive("CONG", judge::set_eq(cur, next), {ri.proof}));
          cur = next;
        }
        break;
      }
      default:
        break;
    }
    if (auto step = top_rule(cur)) {
      SimplifyResult rest = simplify(step->set);
      proof = trans(trans(proof, step->proof), rest.set == step->set ? nullptr : rest.proof);
      cur = rest.set;
    }
    if (!proof) return {s, derive("REFL", judge::set_eq(s, s))};
    return {cur, proof};
  }

  // -- injectivity ----------------------------------------------------------

  InjectivityResult injective(const Expr& e) {
    Judgment j = judge::injective(e);
    if (e->kind == ExprKind::identity) return {Injectivity::yes, derive("INJ-ID", j)};
    if (auto f = factor_form(e)) {
      if (f->inverse && !f->adjoint) return {Injectivity::yes, derive("INJ-INV", j)};
      if (!f->inverse && !f->adjoint && atoms_.has_flag(f->atom, Flag::injective))
        return {Injectivity::yes, derive("INJ-FLAG", j)};
      return {};
    }
    if (e->kind == ExprKind::compose) {
      auto a = injective(e->kids[0]);
      if (a.value != Injectivity::yes) return {};
      auto b = injective(e->kids[1]);
      if (b.value != Injectivity::yes) return {};
      return {Injectivity::yes, derive("INJ-COMP", j, {a.proof, b.proof})};
    }
    if (e->kind == ExprKind::block2) {
      const auto& k = e->kids;
      int p = -1, q = -1;
      if (k[1]->kind == ExprKind::zero && k[2]->kind == ExprKind::zero) {
        p = 0;
        q = 3;
      } else if (k[0]->kind == ExprKind::zero && k[3]->kind == ExprKind::zero) {
        p = 1;
        q = 2;
      } else {
        return {};
      }
      auto a = injective(k[p]);
      if (a.value != Injectivity::yes) return {};
      auto b = injective(k[q]);
      if (b.value != Injectivity::yes) return {};
      return {Injectivity::yes, derive("INJ-BLOCK", j, {a.proof, b.proof})};
    }
    return {};
  }

  // -- classification -------------------------------------------------------

  Classified classify(const DomainSet& s) {
    switch (s->kind) {
      case SetKind::trivial:
        return {Verdict::trivial, nullptr};
      case SetKind::whole:
        return {Verdict::dense, derive("DENSE-WHOLE", judge::dense(s))};
      case SetKind::dom_atom: {
        if (s->expr->kind == ExprKind::atom) {
          if (const Axiom* ax = facts_.dense_axiom(s->expr->atom))
            return {Verdict::dense, derive("DENSE-MARK", judge::dense(s), {}, {ax->id})};
        }
        if (auto f = factor_form(s->expr);
            f && factor_flags(*f, atoms_).has(Flag::densely_defined))
          return {Verdict::dense, derive("DENSE-FLAG", judge::dense(s))};
        return {};
      }
      case SetKind::direct_sum: {
        Classified a = classify(s->a);
        Classified b = classify(s->b);
        if (a.verdict == Verdict::dense && b.verdict == Verdict::dense)
          return {Verdict::dense, derive("DENSE-SUM", judge::dense(s), {a.proof, b.proof})};
        for (const Classified* side : {&a, &b}) {
          if (side->verdict == Verdict::dense || side->verdict == Verdict::nontrivial) {
            DerivationPtr nt = side->proof;
            if (side->verdict == Verdict::dense)
              nt = derive("NT-DENSE", judge::nontrivial(nt->conclusion.lhs), {nt});
            return {Verdict::nontrivial, derive("NT-SUM", judge::nontrivial(s), {nt})};
          }
        }
        return {};
      }
      default:
        return {};
    }
  }

  DerivationPtr verdict_node(const Expr& e, const DerivationPtr& dom, const Classified& c) {
    Judgment j = judge::verdict(e, c.verdict);
    switch (c.verdict) {
      case Verdict::trivial: return derive("V-TRIVIAL", j, {dom});
      case Verdict::dense: return derive("V-DENSE", j, {dom, c.proof});
      case Verdict::nontrivial: return derive("V-NONTRIVIAL", j, {dom, c.proof});
      case Verdict::unknown: return derive("V-UNKNOWN", j, {dom});
    }
    return nullptr;
  }

 private:
  struct Step {
    DomainSet set;
    DerivationPtr proof;
  };

  DomainResult finish(const Expr& e, const DerivationPtr& node) {
    SimplifyResult sr = simplify(node->conclusion.lhs);
    if (sr.set == node->conclusion.lhs) return {sr.set, node};
    return {sr.set, derive("DOM-TRANS", judge::dom_eq(e, sr.set), {node, sr.proof})};
  }

  static DomainSet rebuild(const DomainSet& s, DomainSet a, DomainSet b) {
    return s->kind == SetKind::intersect ? sets::intersect(std::move(a), std::move(b))
                                         : sets::direct_sum(std::move(a), std::move(b));
  }

  std::optional<Step> top_rule(const DomainSet& s) {
    auto step = [&](DomainSet next, std::string rule, std::vector<DerivationPtr> premises = {},
                    std::vector<std::string> axioms = {}) {
      return Step{next, derive(std::move(rule), judge::set_eq(s, next), std::move(premises),
                               std::move(axioms))};
    };
    switch (s->kind) {
      case SetKind::intersect: {
        const DomainSet& a = s->a;
        const DomainSet& b = s->b;
        if (is(a, SetKind::trivial) || is(b, SetKind::trivial))
          return step(sets::trivial(s->shape), "S-INT-TRIV");
        if (is(a, SetKind::whole)) return step(b, "S-INT-WHOLE");
        if (is(b, SetKind::whole)) return step(a, "S-INT-WHOLE");
        if (set_equal(a, b)) return step(a, "S-INT-SELF");
        if (is(a, SetKind::dom_atom) && is(b, SetKind::dom_atom) &&
            a->expr->kind == ExprKind::atom && b->expr->kind == ExprKind::atom) {
          if (const Axiom* ax = facts_.meet_axiom(a->expr->atom, b->expr->atom))
            return step(sets::trivial(s->shape), "MEET-FACT", {}, {ax->id});
        }
        if (is(b, SetKind::preimage)) {
          DomainResult dy = domain(b->expr);
          if (set_equal(dy.set, a)) return step(b, "S-INT-PRE", {dy.proof});
        }
        return std::nullopt;
      }
      case SetKind::direct_sum:
        if (is(s->a, SetKind::trivial) && is(s->b, SetKind::trivial))
          return step(sets::trivial(s->shape), "S-SUM-TRIV");
        if (is(s->a, SetKind::whole) && is(s->b, SetKind::whole))
          return step(sets::whole(s->shape), "S-SUM-WHOLE");
        return std::nullopt;
      case SetKind::preimage: {
        const Expr& e = s->expr;
        const DomainSet& inner = s->a;
        if (is(inner, SetKind::trivial)) return step(sets::kernel(e), "S-PRE-TRIV");
        if (is(inner, SetKind::whole)) {
          DomainResult de = domain(e);
          return step(de.set, "S-PRE-WHOLE", {de.proof});
        }
        if (e->kind == ExprKind::compose)
          return step(sets::preimage(e->kids[1], sets::preimage(e->kids[0], inner)),
                      "S-PRE-COMP");
        DomainSet meet = sets::intersect(sets::range(e), inner);
        SimplifyResult sm = simplify(meet);
        if (is(sm.set, SetKind::trivial))
          return step(sets::kernel(e), "S-PRE-RANGE", {sm.proof});
        return std::nullopt;
      }
      case SetKind::kernel: {
        InjectivityResult inj = injective(s->expr);
        if (inj.value == Injectivity::yes)
          return step(sets::trivial(s->shape), "S-KER-INJ", {inj.proof});
        return std::nullopt;
      }
      case SetKind::range: {
        const Expr& e = s->expr;
        if (e->kind == ExprKind::atom) {
          if (const Axiom* ax = facts_.range_axiom(e->atom))
            return step(sets::dom(ex::atom(ax->second)), "RANGE-FACT", {}, {ax->id});
        }
        if (e->kind == ExprKind::inverse && e->kids[0]->kind == ExprKind::atom)
          return step(sets::dom(e->kids[0]), "RANGE-INV");
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }

  ChainResult compute_chain(const Chain& c) {
    const Expr e = chain_expr(c);
    struct Candidate {
      DomainSet set;
      DerivationPtr proof;
      Classified cls;
    };
    std::vector<Candidate> cands;
    auto add = [&](DomainSet set, DerivationPtr proof) {
      Classified cls = classify(set);
      cands.push_back({std::move(set), std::move(proof), std::move(cls)});
    };

    if (c.size() == 1) {
      bool everywhere = factor_flags(c[0], atoms_).has(Flag::everywhere_defined);
      DomainSet s = everywhere ? sets::whole() : sets::dom(e);
      add(s, derive("D-ATOM", judge::dom_eq(e, s)));
    }
    if (const Axiom* ax = facts_.dom_axiom(c)) {
      DomainSet s = facts_.rhs_set(*ax);
      add(s, derive("FACT-MATCH", judge::dom_eq(e, s), {}, {ax->id}));
    }
    if (c.size() >= 2) {
      std::vector<std::size_t> splits;
      if (c.size() <= kMaxRegroupLength) {
        for (std::size_t m = 0; m + 1 < c.size(); ++m) splits.push_back(m);
      } else {
        splits = {0, c.size() - 2};
      }
      for (std::size_t m : splits) {
        Chain x(c.begin(), c.begin() + std::ptrdiff_t(m + 1));
        Chain y(c.begin() + std::ptrdiff_t(m + 1), c.end());
        // Copy: the memo may rehash while computing the other half.
        ChainResult rx = chain_domain(x);
        ChainResult ry = chain_domain(y);
        Expr xe = chain_expr(x);
        Expr ye = chain_expr(y);
        Expr grouped = ex::compose(xe, ye);
        DomainResult dr;
        if (is(rx.set, SetKind::whole)) {
          dr = {ry.set, derive("D-COMP-WHOLE", judge::dom_eq(grouped, ry.set),
                               {rx.proof, ry.proof})};
        } else {
          DomainSet s0 = sets::intersect(ry.set, sets::preimage(ye, rx.set));
          dr = finish(grouped,
                      derive("D-COMP", judge::dom_eq(grouped, s0), {rx.proof, ry.proof}));
        }
        if (m > 0) dr.proof = derive("REGROUP", judge::dom_eq(e, dr.set), {dr.proof});
        add(dr.set, dr.proof);
      }
    }

    ChainResult out;
    const Candidate* best = nullptr;
    for (const Candidate& k : cands) {
      out.candidates.push_back(k.cls.verdict);
      if (best && contradicts(best->cls.verdict, k.cls.verdict))
        throw ContradictionDetected("regroupings of " + pretty_print(e) + " disagree: " +
                                    to_string(best->cls.verdict) + " vs " +
                                    to_string(k.cls.verdict));
      if (!best || int(k.cls.verdict) > int(best->cls.verdict) ||
          (k.cls.verdict == best->cls.verdict && simpler(k.set, best->set)))
        best = &k;
    }
    for (const Candidate& k : cands)
      for (const Candidate& l : cands)
        if (contradicts(k.cls.verdict, l.cls.verdict))
          throw ContradictionDetected("regroupings of " + pretty_print(e) + " disagree");
    out.set = best->set;
    out.proof = best->proof;
    out.cls = best->cls;
    return out;
  }

  static std::size_t weight(const DomainSet& s) {
    std::size_t w = 1;
    if (s->a) w += weight(s->a);
    if (s->b) w += weight(s->b);
    return w;
  }

  static bool simpler(const DomainSet& a, const DomainSet& b) { return weight(a) < weight(b); }

  const FactBase& facts_;
  const AtomTable& atoms_;
  std::map<std::string, ChainResult> memo_;
  std::set<std::string> in_progress_;
  std::map<std::string, SimplifyResult> simplify_memo_;
};

}  // namespace

DomainResult domain_of(const Expr& e, const FactBase& facts) {
  shape_of(e);
  return Engine(facts).domain(e);
}

SimplifyResult simplify_domain(const DomainSet& s, const FactBase& facts) {
  return Engine(facts).simplify(s);
}

InjectivityResult injectivity_of(const Expr& e, const FactBase& facts) {
  return Engine(facts).injective(e);
}

VerdictResult verdict_of(const Expr& e, const FactBase& facts) {
  Engine engine(facts);
  MonomialMatrix nf = normalize(e, facts.atoms());
  Expr ne = to_expr(nf);
  DomainResult dr = engine.domain(ne);
  DerivationPtr dom = dr.proof;
  if (!structurally_equal(ne, e))
    dom = derive("NORM-MONOMIAL", judge::dom_eq(e, dr.set), {dr.proof});
  Classified cls = engine.classify(dr.set);
  return {cls.verdict, dr.set, engine.verdict_node(e, dom, cls)};
}

std::vector<Verdict> grouping_verdicts(const Chain& chain, const FactBase& facts) {
  if (chain.empty()) return {Verdict::dense};
  return Engine(facts).top_level_verdicts(chain);
}

}  // namespace domcalc
