#include "domcalc/normalize.hpp"

#include "domcalc/errors.hpp"

namespace domcalc {

namespace {

bool chain_everywhere_defined(const Chain& c, const AtomTable& atoms) {
  for (const Factor& f : c)
    if (!factor_flags(f, atoms).has(Flag::everywhere_defined)) return false;
  return true;
}

Chain concat(const Chain& after, const Chain& first) {
  Chain out;
  out.reserve(after.size() + first.size());
  out.insert(out.end(), after.begin(), after.end());
  out.insert(out.end(), first.begin(), first.end());
  return out;
}

Factor opaque_factor(const Expr& e) {
  Factor f;
  f.opaque = e;
  f.atom = pretty_print(e);
  return f;
}

Factor invert_factor(const Factor& f, const AtomTable& atoms) {
  if (f.opaque || (f.adjoint && !f.inverse))
    return opaque_factor(ex::inverse(factor_expr(f)));
  Factor g = f;
  g.inverse = !f.inverse;
  return canonical_factor(std::move(g), atoms);
}

}  // namespace

Factor canonical_factor(Factor f, const AtomTable& atoms) {
  if (f.opaque) return f;
  for (int guard = 0; guard < 4; ++guard) {
    bool changed = false;
    if (f.inverse && !f.adjoint) {
      if (auto p = atoms.inverse_partner(f.atom)) {
        f.atom = *p;
        f.inverse = false;
        changed = true;
      }
    }
    if (f.adjoint) {
      if (atoms.has_flag(f.atom, Flag::self_adjoint)) {
        // (a^-1)' = a^-1 for self-adjoint injective a.
        f.adjoint = false;
        changed = true;
      } else if (!f.inverse) {
        if (auto p = atoms.adjoint_partner(f.atom)) {
          f.atom = *p;
          f.adjoint = false;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return f;
}

MonomialMatrix compose_blocks(const MonomialMatrix& after, const MonomialMatrix& first,
                              const AtomTable& atoms) {
  if (!(after.shape == first.shape))
    throw ShapeMismatch("compose_blocks: " + after.shape.to_string() + " vs " +
                        first.shape.to_string());
  const int d = after.dim();
  MonomialMatrix out = MonomialMatrix::zero(after.shape);
  std::vector<bool> consumed(d, false);
  for (int r = 0; r < d; ++r) {
    int k = after.col_of_row[r];
    if (k < 0) continue;
    consumed[k] = true;
    int c = first.col_of_row[k];
    if (c < 0) continue;
    out.col_of_row[r] = c;
    out.chains[r] = concat(after.chains[r], first.chains[k]);
  }
  for (int k = 0; k < d; ++k) {
    if (consumed[k] || first.col_of_row[k] < 0) continue;
    if (!chain_everywhere_defined(first.chains[k], atoms))
      throw NonNormalizable("zero block would absorb the domain of " +
                            chain_string(first.chains[k]));
  }
  return out;
}

MonomialMatrix flatten_block(const MonomialMatrix& m11, const MonomialMatrix& m12,
                             const MonomialMatrix& m21, const MonomialMatrix& m22) {
  const Shape& s = m11.shape;
  if (!(m12.shape == s && m21.shape == s && m22.shape == s))
    throw ShapeMismatch("block entries on different shapes");
  const int h = m11.dim();
  MonomialMatrix out = MonomialMatrix::zero(Shape::pair(s, s));
  auto place = [&](const MonomialMatrix& q, int row0, int col0) {
    for (int r = 0; r < h; ++r) {
      int c = q.col_of_row[r];
      if (c < 0) continue;
      if (out.col_of_row[row0 + r] >= 0)
        throw NonNormalizable("block row has two nonzero entries");
      out.col_of_row[row0 + r] = col0 + c;
      out.chains[row0 + r] = q.chains[r];
    }
  };
  place(m11, 0, 0);
  place(m12, 0, h);
  place(m21, h, 0);
  place(m22, h, h);
  check_monomial(out);
  return out;
}

MonomialMatrix expand_power(const MonomialMatrix& m, int n, const AtomTable& atoms) {
  if (n < 1) throw OutOfRange("power exponent must be positive");
  MonomialMatrix result = m;
  MonomialMatrix square = m;
  bool have = false;
  while (n > 0) {
    if (n & 1) {
      result = have ? compose_blocks(result, square, atoms) : square;
      have = true;
    }
    n >>= 1;
    if (n > 0) square = compose_blocks(square, square, atoms);
  }
  return result;
}

bool provably_bounded_everywhere(const Expr& e, const AtomTable& atoms) {
  switch (e->kind) {
    case ExprKind::atom:
      return atoms.has_flag(e->atom, Flag::bounded) &&
             atoms.has_flag(e->atom, Flag::everywhere_defined);
    case ExprKind::identity:
    case ExprKind::zero:
      return true;
    case ExprKind::adjoint:
    case ExprKind::power:
      return provably_bounded_everywhere(e->kids[0], atoms);
    case ExprKind::inverse:
      if (e->kids[0]->kind == ExprKind::atom) {
        auto p = atoms.inverse_partner(e->kids[0]->atom);
        return p && provably_bounded_everywhere(ex::atom(*p), atoms);
      }
      return false;
    case ExprKind::compose:
    case ExprKind::block2:
      for (const Expr& k : e->kids)
        if (k && !provably_bounded_everywhere(k, atoms)) return false;
      return true;
  }
  return false;
}

namespace {

bool is_zero(const Expr& e) { return e->kind == ExprKind::zero; }

// Bounded, everywhere defined, with bounded everywhere defined inverse.
bool provably_boundedly_invertible(const Expr& e, const AtomTable& atoms) {
  switch (e->kind) {
    case ExprKind::identity:
      return true;
    case ExprKind::atom: {
      auto p = atoms.inverse_partner(e->atom);
      return p && provably_bounded_everywhere(e, atoms) &&
             provably_bounded_everywhere(ex::atom(*p), atoms);
    }
    case ExprKind::inverse:
    case ExprKind::adjoint:
      return provably_boundedly_invertible(e->kids[0], atoms);
    case ExprKind::compose:
      return provably_boundedly_invertible(e->kids[0], atoms) &&
             provably_boundedly_invertible(e->kids[1], atoms);
    case ExprKind::power:
      return provably_boundedly_invertible(e->kids[0], atoms);
    case ExprKind::block2: {
      const auto& k = e->kids;
      if (is_zero(k[1]) && is_zero(k[2]))
        return provably_boundedly_invertible(k[0], atoms) &&
               provably_boundedly_invertible(k[3], atoms);
      if (is_zero(k[0]) && is_zero(k[3]))
        return provably_boundedly_invertible(k[1], atoms) &&
               provably_boundedly_invertible(k[2], atoms);
      return false;
    }
    case ExprKind::zero:
      return false;
  }
  return false;
}

}  // namespace

bool provably_closed_dense(const Expr& e, const AtomTable& atoms) {
  switch (e->kind) {
    case ExprKind::atom:
      return atoms.has_flag(e->atom, Flag::closed) &&
             atoms.has_flag(e->atom, Flag::densely_defined);
    case ExprKind::identity:
    case ExprKind::zero:
      return true;
    case ExprKind::adjoint:
      return provably_closed_dense(e->kids[0], atoms);
    case ExprKind::inverse:
      return e->kids[0]->kind == ExprKind::atom &&
             atoms.has_flag(e->kids[0]->atom, Flag::self_adjoint) &&
             atoms.has_flag(e->kids[0]->atom, Flag::injective);
    case ExprKind::block2: {
      const auto& k = e->kids;
      bool diagonal = is_zero(k[1]) && is_zero(k[2]);
      bool anti = is_zero(k[0]) && is_zero(k[3]);
      if (!diagonal && !anti) return false;
      for (const Expr& x : k)
        if (!provably_closed_dense(x, atoms)) return false;
      return true;
    }
    case ExprKind::compose:
      // Bounded everywhere-defined left factor keeps closedness only if also
      // boundedly invertible; the right factor keeps density when bounded.
      return provably_boundedly_invertible(e->kids[0], atoms) &&
             provably_closed_dense(e->kids[1], atoms);
    case ExprKind::power:
      return provably_boundedly_invertible(e->kids[0], atoms);
  }
  return false;
}

namespace {

Expr adjoint_of(const Expr& e, const AtomTable& atoms);

Expr push(const Expr& e, const AtomTable& atoms) {
  switch (e->kind) {
    case ExprKind::atom:
    case ExprKind::identity:
    case ExprKind::zero:
      return e;
    case ExprKind::adjoint:
      return adjoint_of(push(e->kids[0], atoms), atoms);
    case ExprKind::inverse:
      return ex::inverse(push(e->kids[0], atoms));
    case ExprKind::power:
      return ex::power(push(e->kids[0], atoms), e->exponent);
    case ExprKind::compose:
      return ex::compose(push(e->kids[0], atoms), push(e->kids[1], atoms));
    case ExprKind::block2:
      return ex::block2(push(e->kids[0], atoms), push(e->kids[1], atoms),
                        push(e->kids[2], atoms), push(e->kids[3], atoms));
  }
  return e;
}

// `e` has already been pushed.
Expr adjoint_of(const Expr& e, const AtomTable& atoms) {
  switch (e->kind) {
    case ExprKind::identity:
    case ExprKind::zero:
      return e;
    case ExprKind::atom:
      // ADJ-ATOM
      if (atoms.has_flag(e->atom, Flag::self_adjoint)) return e;
      if (auto p = atoms.adjoint_partner(e->atom)) {
        const AtomDecl* d = atoms.find(*p);
        return ex::atom(*p, d ? d->shape : e->shape);
      }
      return ex::adjoint(e);
    case ExprKind::adjoint:
      // e'' = e for closed densely defined e
      if (provably_closed_dense(e->kids[0], atoms)) return e->kids[0];
      return ex::adjoint(e);
    case ExprKind::inverse: {
      // ADJ-INV
      const Expr& a = e->kids[0];
      if (a->kind == ExprKind::atom && atoms.has_flag(a->atom, Flag::self_adjoint) &&
          atoms.has_flag(a->atom, Flag::injective))
        return e;
      return ex::adjoint(e);
    }
    case ExprKind::compose: {
      // ADJ-COMP-BDD
      const Expr& after = e->kids[0];
      const Expr& first = e->kids[1];
      if (provably_bounded_everywhere(after, atoms) ||
          provably_boundedly_invertible(first, atoms))
        return ex::compose(adjoint_of(first, atoms), adjoint_of(after, atoms));
      return ex::adjoint(e);
    }
    case ExprKind::block2: {
      // ADJ-BLOCK
      const auto& k = e->kids;
      for (const Expr& x : k)
        if (!provably_closed_dense(x, atoms)) return ex::adjoint(e);
      if (is_zero(k[1]) && is_zero(k[2]))
        return ex::block2(adjoint_of(k[0], atoms), k[1], k[2], adjoint_of(k[3], atoms));
      if (is_zero(k[0]) && is_zero(k[3]))
        return ex::block2(k[0], adjoint_of(k[2], atoms), adjoint_of(k[1], atoms), k[3]);
      return ex::adjoint(e);
    }
    case ExprKind::power:
      return ex::adjoint(e);
  }
  return ex::adjoint(e);
}

MonomialMatrix invert(const MonomialMatrix& m, const AtomTable& atoms) {
  if (!m.is_full_permutation()) throw NonNormalizable("inverse of a singular block matrix");
  MonomialMatrix out = MonomialMatrix::zero(m.shape);
  for (int r = 0; r < m.dim(); ++r) {
    int c = m.col_of_row[r];
    Chain inv;
    for (auto it = m.chains[r].rbegin(); it != m.chains[r].rend(); ++it)
      inv.push_back(invert_factor(*it, atoms));
    out.col_of_row[c] = r;
    out.chains[c] = std::move(inv);
  }
  return out;
}

MonomialMatrix norm(const Expr& e, const AtomTable& atoms);

// A monomial matrix is a partial permutation (bounded, everywhere defined)
// after a diagonal of its entries, so its adjoint is the transpose with
// adjointed entries once every entry is closed and densely defined.
MonomialMatrix transpose_adjoint(const MonomialMatrix& m, const AtomTable& atoms, const Expr& source) {
  MonomialMatrix out = MonomialMatrix::zero(m.shape);
  for (int r = 0; r < m.dim(); ++r) {
    const int c = m.col_of_row[r];
    if (c < 0) continue;
    const Expr entry = chain_expr(m.chains[r]);
    if (!provably_closed_dense(entry, atoms))
      throw NonNormalizable("adjoint of " + pretty_print(source) + " has no applicable rule");
    const Expr pushed = adjoint_of(entry, atoms);
    out.col_of_row[c] = r;
    out.chains[c] = norm(pushed, atoms).chains[0];
  }
  return out;
}

MonomialMatrix norm(const Expr& e, const AtomTable& atoms) {
  switch (e->kind) {
    case ExprKind::atom: {
      if (!e->shape.is_base())
        throw NonNormalizable("atom " + e->atom + " acts on a compound shape");
      return MonomialMatrix::of_chain({canonical_factor(Factor{e->atom}, atoms)});
    }
    case ExprKind::identity:
      return MonomialMatrix::identity(e->shape);
    case ExprKind::zero:
      return MonomialMatrix::zero(e->shape);
    case ExprKind::adjoint: {
      const Expr& k = e->kids[0];
      if (k->kind == ExprKind::atom && k->shape.is_base()) {
        Factor f{k->atom, true, false};
        return MonomialMatrix::of_chain({canonical_factor(f, atoms)});
      }
      if (k->kind == ExprKind::inverse && k->kids[0]->kind == ExprKind::atom &&
          k->kids[0]->shape.is_base()) {
        Factor f{k->kids[0]->atom, true, true};
        return MonomialMatrix::of_chain({canonical_factor(f, atoms)});
      }
      if (shape_of(e).is_base()) return MonomialMatrix::of_chain({opaque_factor(e)});
      return transpose_adjoint(norm(k, atoms), atoms, k);
    }
    case ExprKind::inverse:
      return invert(norm(e->kids[0], atoms), atoms);
    case ExprKind::compose:
      return compose_blocks(norm(e->kids[0], atoms), norm(e->kids[1], atoms), atoms);
    case ExprKind::block2:
      return flatten_block(norm(e->kids[0], atoms), norm(e->kids[1], atoms),
                           norm(e->kids[2], atoms), norm(e->kids[3], atoms));
    case ExprKind::power:
      return expand_power(norm(e->kids[0], atoms), e->exponent, atoms);
  }
  throw NonNormalizable("unknown expression kind");
}

}  // namespace

Expr push_adjoint(const Expr& e, const AtomTable& atoms) { return push(e, atoms); }

MonomialMatrix normalize(const Expr& e, const AtomTable& atoms) {
  shape_of(e);
  return norm(push_adjoint(e, atoms), atoms);
}

}  // namespace domcalc
