#pragma once

// Random generators and independent oracles shared by the unit tests and the
// acceptance binary. Nothing here calls into the rewriter.

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "domcalc/derivation.hpp"
#include "domcalc/expr.hpp"
#include "domcalc/facts.hpp"
#include "domcalc/monomial.hpp"

namespace testsupport {

using namespace domcalc;

inline int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Shapes of I and 0 cannot be recovered by the parser when nothing around
// them pins the shape; the round-trip property is stated for the rest.
inline bool shape_determined(const Expr& e) {
  switch (e->kind) {
    case ExprKind::atom: return true;
    case ExprKind::identity:
    case ExprKind::zero: return e->shape.is_base();
    case ExprKind::adjoint:
    case ExprKind::inverse:
    case ExprKind::power: return shape_determined(e->kids[0]);
    case ExprKind::compose: return shape_determined(e->kids[0]) || shape_determined(e->kids[1]);
    case ExprKind::block2:
      for (const Expr& k : e->kids)
        if (shape_determined(k)) return true;
      return false;
  }
  return false;
}

/// Random well-shaped expression of shape `s` over Base atoms `names`.
inline Expr random_expr(std::mt19937& rng, const Shape& s, int depth, const std::vector<std::string>& names) {
  const bool leaf = depth <= 0 || coin(rng, 0.3);
  if (leaf) {
    if (!s.is_base()) {
      auto l = s.left();
      return ex::block2(random_expr(rng, l, 0, names), random_expr(rng, l, 0, names), random_expr(rng, l, 0, names),
                        random_expr(rng, l, 0, names));
    }
    int pick = uniform(rng, 0, 9);
    if (pick == 0) return ex::identity(s);
    if (pick == 1) return ex::zero(s);
    return ex::atom(names[uniform(rng, 0, int(names.size()) - 1)]);
  }
  switch (uniform(rng, 0, s.is_base() ? 3 : 4)) {
    case 0: return ex::adjoint(random_expr(rng, s, depth - 1, names));
    case 1: return ex::inverse(random_expr(rng, s, depth - 1, names));
    case 2: return ex::compose(random_expr(rng, s, depth - 1, names), random_expr(rng, s, depth - 1, names));
    case 3: return ex::power(random_expr(rng, s, depth - 1, names), uniform(rng, 2, 5));
    default: {
      auto l = s.left();
      return ex::block2(random_expr(rng, l, depth - 1, names), random_expr(rng, l, depth - 1, names),
                        random_expr(rng, l, depth - 1, names), random_expr(rng, l, depth - 1, names));
    }
  }
}

inline Shape shape_of_depth(int depth) {
  Shape s = Shape::base();
  for (int i = 0; i < depth; ++i) s = Shape::pair(s, s);
  return s;
}

/// Random factor over declared atoms; inverses only of injective atoms.
inline Factor random_factor(std::mt19937& rng, const AtomTable& atoms, bool allow_inverse = true) {
  const auto& all = atoms.all();
  const AtomDecl& d = all[uniform(rng, 0, int(all.size()) - 1)];
  Factor f;
  f.atom = d.id;
  f.inverse = allow_inverse && d.flags.has(Flag::injective) && coin(rng, 0.25);
  return f;
}

/// Random monomial matrix on a balanced shape of depth `depth`. With
/// `zero_rows` some rows are left empty.
inline MonomialMatrix random_monomial(std::mt19937& rng, int depth, const AtomTable& atoms, bool zero_rows,
                                      int max_chain = 2, bool allow_inverse = true) {
  MonomialMatrix m = MonomialMatrix::zero(shape_of_depth(depth));
  const int d = m.dim();
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int r = 0; r < d; ++r) {
    if (zero_rows && coin(rng, 0.2)) continue;
    m.col_of_row[r] = perm[r];
    int len = uniform(rng, 0, max_chain);
    for (int i = 0; i < len; ++i) m.chains[r].push_back(random_factor(rng, atoms, allow_inverse));
  }
  return m;
}

// Independent product oracle on a plain representation: each row is
// (column, factor words), words listed leftmost first.
struct PlainMatrix {
  std::vector<int> col;
  std::vector<std::vector<std::string>> words;
  bool operator==(const PlainMatrix&) const = default;
};

inline std::string factor_word(const Factor& f) {
  return f.atom + (f.inverse ? "^-1" : "") + (f.adjoint ? "'" : "");
}

inline PlainMatrix plain(const MonomialMatrix& m) {
  PlainMatrix p;
  p.col = m.col_of_row;
  for (const Chain& c : m.chains) {
    std::vector<std::string> w;
    for (const Factor& f : c) w.push_back(factor_word(f));
    p.words.push_back(w);
  }
  // Zero rows carry no chain.
  for (std::size_t r = 0; r < p.col.size(); ++r)
    if (p.col[r] < 0) p.words[r].clear();
  return p;
}

/// (after * first) by the definition: entry (r, c) = sum_k after(r,k) first(k,c).
inline PlainMatrix plain_product(const PlainMatrix& after, const PlainMatrix& first) {
  const int d = int(after.col.size());
  PlainMatrix out{std::vector<int>(d, -1), std::vector<std::vector<std::string>>(d)};
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) {
      if (after.col[r] != k) continue;
      for (int c = 0; c < d; ++c) {
        if (first.col[k] != c) continue;
        out.col[r] = c;
        out.words[r] = after.words[r];
        out.words[r].insert(out.words[r].end(), first.words[k].begin(), first.words[k].end());
      }
    }
  return out;
}

inline PlainMatrix plain_power(const PlainMatrix& m, int n) {
  PlainMatrix acc = m;
  for (int i = 1; i < n; ++i) acc = plain_product(acc, m);
  return acc;
}

/// Every node of a derivation DAG in DFS order (shared nodes once).
inline std::vector<const Derivation*> nodes_of(const DerivationPtr& d) {
  std::vector<const Derivation*> out;
  std::vector<const Derivation*> stack{d.get()};
  std::vector<const Derivation*> seen;
  while (!stack.empty()) {
    const Derivation* n = stack.back();
    stack.pop_back();
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    out.push_back(n);
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return out;
}

/// Copy of `d` with `target` replaced by `edit(target)` wherever it occurs.
inline DerivationPtr replace_node(const DerivationPtr& d, const Derivation* target,
                                  const std::function<Derivation(const Derivation&)>& edit) {
  if (d.get() == target) return std::make_shared<const Derivation>(edit(*d));
  Derivation copy = *d;
  bool changed = false;
  for (auto& p : copy.premises) {
    DerivationPtr q = replace_node(p, target, edit);
    if (q != p) {
      p = q;
      changed = true;
    }
  }
  return changed ? std::make_shared<const Derivation>(std::move(copy)) : d;
}

/// Either swaps the rule name of a random node for one concluding another
/// kind of judgment, or tampers with its cited
/// axioms: drops one, substitutes one absent from `facts`, or adds one to a
/// node that cites nothing.
inline DerivationPtr mutate(std::mt19937& rng, const DerivationPtr& d, const FactBase& facts, std::string* what) {
  auto nodes = nodes_of(d);
  const Derivation* target = nodes[uniform(rng, 0, int(nodes.size()) - 1)];
  if (coin(rng)) {
    // Replacement rules conclude a different kind of judgment, so the swap is
    // a corruption by construction (two set rules can both justify a step).
    std::vector<std::string> rules{"NO-SUCH-RULE"};
    for (auto* n : nodes)
      if (n->conclusion.kind != target->conclusion.kind &&
          std::find(rules.begin(), rules.end(), n->rule) == rules.end())
        rules.push_back(n->rule);
    const std::string rule = rules[uniform(rng, 0, int(rules.size()) - 1)];
    *what = "rule " + target->rule + " -> " + rule;
    return replace_node(d, target, [&](const Derivation& n) {
      Derivation m = n;
      m.rule = rule;
      return m;
    });
  }
  // Prefer nodes that cite axioms so the tamper hits a real citation.
  std::vector<const Derivation*> citing;
  for (auto* n : nodes)
    if (!n->axioms.empty()) citing.push_back(n);
  if (!citing.empty() && coin(rng, 0.7)) target = citing[uniform(rng, 0, int(citing.size()) - 1)];
  // Substitutes are ids the fact base does not contain. Swapping in a real
  // axiom is not a corruption in general: a range axiom and an inverse link
  // justify the same RANGE-FACT step.
  std::vector<std::string> ids;
  for (const char* id : {"dom(Z*Z) = trivial", "meet dom(Z) dom(Y) = trivial", "dense dom(Z)", "range Z = dom(Y)",
                         "link inverse Z Y", "dom(B*A*B) = dom(A)"})
    if (!facts.find(id)) ids.push_back(id);
  return replace_node(d, target, [&](const Derivation& n) {
    Derivation m = n;
    if (!m.axioms.empty() && coin(rng, 0.3)) {
      *what = "drop axiom " + m.axioms.back() + " at " + m.rule;
      m.axioms.pop_back();
      return m;
    }
    const std::string id = ids[uniform(rng, 0, int(ids.size()) - 1)];
    if (m.axioms.empty()) {
      *what = "add axiom " + id + " at " + m.rule;
      m.axioms.push_back(id);
    } else {
      *what = "swap axiom " + m.axioms.front() + " -> " + id + " at " + m.rule;
      m.axioms.front() = id;
    }
    return m;
  });
}

}  // namespace testsupport
