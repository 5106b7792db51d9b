#pragma once

#include "domcalc/atoms.hpp"
#include "domcalc/expr.hpp"
#include "domcalc/monomial.hpp"

namespace domcalc {

/// Formal product `after ∘ first`. A chain of `first` feeding a column that
/// `after` never reads is dropped only if every factor is everywhere defined;
/// otherwise its domain constraint would vanish and NonNormalizable is thrown.
MonomialMatrix compose_blocks(const MonomialMatrix& after, const MonomialMatrix& first,
                              const AtomTable& atoms);

/// [[m11, m12], [m21, m22]] flattened; NonNormalizable if not monomial.
MonomialMatrix flatten_block(const MonomialMatrix& m11, const MonomialMatrix& m12,
                             const MonomialMatrix& m21, const MonomialMatrix& m22);

/// m^n by repeated squaring.
MonomialMatrix expand_power(const MonomialMatrix& m, int n, const AtomTable& atoms);

/// Pushes adjoints inward with premise-guarded rules; anything no rule
/// matches stays wrapped in Adjoint.
Expr push_adjoint(const Expr& e, const AtomTable& atoms);

/// Monomial normal form of `e`. Throws NonNormalizable or ShapeMismatch.
MonomialMatrix normalize(const Expr& e, const AtomTable& atoms);

/// Factor with adjoint/inverse markers resolved through declared links and
/// self-adjointness.
Factor canonical_factor(Factor f, const AtomTable& atoms);

bool provably_bounded_everywhere(const Expr& e, const AtomTable& atoms);
bool provably_closed_dense(const Expr& e, const AtomTable& atoms);

}  // namespace domcalc
