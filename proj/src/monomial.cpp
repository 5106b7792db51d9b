#include "domcalc/monomial.hpp"

#include <set>

#include "domcalc/errors.hpp"

namespace domcalc {

bool MonomialMatrix::is_full_permutation() const {
  for (int c : col_of_row)
    if (c < 0) return false;
  return true;
}

int MonomialMatrix::row_of_col(int c) const {
  for (int r = 0; r < dim(); ++r)
    if (col_of_row[r] == c) return r;
  return -1;
}

MonomialMatrix MonomialMatrix::identity(const Shape& s) {
  MonomialMatrix m;
  m.shape = s;
  int d = s.dim();
  m.col_of_row.resize(d);
  m.chains.resize(d);
  for (int r = 0; r < d; ++r) m.col_of_row[r] = r;
  return m;
}

MonomialMatrix MonomialMatrix::zero(const Shape& s) {
  MonomialMatrix m;
  m.shape = s;
  m.col_of_row.assign(s.dim(), -1);
  m.chains.resize(s.dim());
  return m;
}

MonomialMatrix MonomialMatrix::of_chain(Chain c) {
  MonomialMatrix m;
  m.col_of_row = {0};
  m.chains = {std::move(c)};
  return m;
}

Expr factor_expr(const Factor& f) {
  if (f.opaque) return f.opaque;
  Expr e = ex::atom(f.atom);
  if (f.inverse) e = ex::inverse(e);
  if (f.adjoint) e = ex::adjoint(e);
  return e;
}

Expr chain_expr(const Chain& c) {
  if (c.empty()) return ex::identity();
  Expr e = factor_expr(c.back());
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) e = ex::compose(factor_expr(*it), e);
  return e;
}

namespace {

MonomialMatrix quadrant(const MonomialMatrix& m, int row0, int col0) {
  int half = m.dim() / 2;
  MonomialMatrix q;
  q.shape = m.shape.left();
  q.col_of_row.assign(half, -1);
  q.chains.resize(half);
  for (int r = 0; r < half; ++r) {
    int c = m.col_of_row[row0 + r];
    if (c >= col0 && c < col0 + half) {
      q.col_of_row[r] = c - col0;
      q.chains[r] = m.chains[row0 + r];
    }
  }
  return q;
}

bool all_zero(const MonomialMatrix& m) {
  for (int c : m.col_of_row)
    if (c >= 0) return false;
  return true;
}

bool is_identity(const MonomialMatrix& m) {
  for (int r = 0; r < m.dim(); ++r)
    if (m.col_of_row[r] != r || !m.chains[r].empty()) return false;
  return true;
}

}  // namespace

Expr to_expr(const MonomialMatrix& m) {
  if (all_zero(m)) return ex::zero(m.shape);
  if (m.shape.is_base()) return chain_expr(m.chains[0]);
  if (is_identity(m)) return ex::identity(m.shape);
  int half = m.dim() / 2;
  return ex::block2(to_expr(quadrant(m, 0, 0)), to_expr(quadrant(m, 0, half)),
                    to_expr(quadrant(m, half, 0)), to_expr(quadrant(m, half, half)));
}

std::string chain_string(const Chain& c) { return pretty_print(chain_expr(c)); }

FlagSet factor_flags(const Factor& f, const AtomTable& atoms) {
  FlagSet out;
  const AtomDecl* d = f.opaque ? nullptr : atoms.find(f.atom);
  if (!d) return out;
  const FlagSet& a = d->flags;
  if (!f.adjoint && !f.inverse) return a;
  if (f.inverse && !f.adjoint) {
    out.set(Flag::injective);
    if (a.has(Flag::closed)) out.set(Flag::closed);
    if (a.has(Flag::self_adjoint)) {
      out.set(Flag::self_adjoint);
      out.set(Flag::densely_defined);
    }
    return out;
  }
  if (f.adjoint && !f.inverse) {
    if (a.has(Flag::closed) && a.has(Flag::densely_defined)) {
      out.set(Flag::closed);
      out.set(Flag::densely_defined);
      if (a.has(Flag::unbounded)) out.set(Flag::unbounded);
    }
    if (a.has(Flag::bounded) && a.has(Flag::everywhere_defined)) {
      out.set(Flag::bounded);
      out.set(Flag::everywhere_defined);
      out.set(Flag::densely_defined);
      out.set(Flag::closed);
    }
    if (a.has(Flag::positive) && a.has(Flag::self_adjoint)) out.set(Flag::positive);
  }
  return out;
}

void check_monomial(const MonomialMatrix& m) {
  if (m.dim() != m.shape.dim() || m.chains.size() != m.col_of_row.size())
    throw ShapeMismatch("monomial matrix size does not match its shape");
  std::set<int> seen;
  for (int c : m.col_of_row) {
    if (c < -1 || c >= m.dim()) throw ShapeMismatch("column index out of range");
    if (c >= 0 && !seen.insert(c).second)
      throw NonNormalizable("two nonzero entries in one column");
  }
}

}  // namespace domcalc
