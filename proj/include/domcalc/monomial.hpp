#pragma once

#include <string>
#include <vector>

#include "domcalc/atoms.hpp"
#include "domcalc/expr.hpp"

namespace domcalc {

/// One factor of a composition chain. `inverse` applies before `adjoint`, so
/// a factor with both set reads (a^-1)'. Opaque factors stand for a Base-shaped
/// expression the rewriter could not open up; `atom` then holds its printed form.
struct Factor {
  std::string atom;
  bool adjoint = false;
  bool inverse = false;
  Expr opaque;

  friend bool operator==(const Factor& a, const Factor& b) {
    return a.atom == b.atom && a.adjoint == b.adjoint && a.inverse == b.inverse &&
           (a.opaque == nullptr) == (b.opaque == nullptr);
  }
};

/// Index 0 is the leftmost factor, applied last. Empty means identity.
using Chain = std::vector<Factor>;

/// Block matrix with at most one nonzero entry per row and per column, over
/// Base components. col_of_row[r] == -1 marks a zero row.
struct MonomialMatrix {
  Shape shape = Shape::base();
  std::vector<int> col_of_row;
  std::vector<Chain> chains;

  int dim() const { return int(col_of_row.size()); }
  bool is_full_permutation() const;
  /// Row reading column c, or -1.
  int row_of_col(int c) const;

  static MonomialMatrix identity(const Shape& s);
  static MonomialMatrix zero(const Shape& s);
  static MonomialMatrix of_chain(Chain c);

  friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;
};

Expr factor_expr(const Factor& f);
/// Right-associated composition; identity for the empty chain.
Expr chain_expr(const Chain& c);
/// Nested Block2 form of the matrix; Zero(s) for empty quadrants.
Expr to_expr(const MonomialMatrix& m);
std::string chain_string(const Chain& c);

/// Flags provable for a single factor from the declarations.
FlagSet factor_flags(const Factor& f, const AtomTable& atoms);

/// Throws ShapeMismatch / NonNormalizable when the invariants fail.
void check_monomial(const MonomialMatrix& m);

}  // namespace domcalc
