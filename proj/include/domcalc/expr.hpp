#pragma once

#include <array>
#include <memory>
#include <string>

#include "domcalc/atoms.hpp"
#include "domcalc/shape.hpp"

namespace domcalc {

enum class ExprKind { atom, identity, zero, adjoint, inverse, compose, block2, power };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Immutable operator expression node. Compose(after, first) applies `first`
/// and then `after`, matching the written product `after * first`.
struct ExprNode {
  ExprKind kind;
  std::string atom;               // atom
  Shape shape = Shape::base();    // atom, identity, zero
  std::array<Expr, 4> kids{};     // unary: [0]; compose: [0]=after, [1]=first
  int exponent = 0;               // power
};

namespace ex {
Expr atom(std::string id, Shape shape = Shape::base());
Expr atom(const AtomDecl& decl);
Expr identity(Shape shape = Shape::base());
Expr zero(Shape shape = Shape::base());
Expr adjoint(Expr e);
Expr inverse(Expr e);
Expr compose(Expr after, Expr first);
Expr block2(Expr e11, Expr e12, Expr e21, Expr e22);
/// n >= 1; n == 1 returns `e` itself.
Expr power(Expr e, int n);
/// [[0, upper], [lower, 0]]
Expr offdiag(Expr upper, Expr lower);
/// [[first, 0], [0, second]]
Expr diag(Expr first, Expr second);
/// [[0, I], [I, 0]] on Pair(s, s).
Expr swap(Shape s);
}  // namespace ex

/// Registers `decl` and returns a reference expression to the new atom.
Expr declare_atom(AtomTable& table, AtomDecl decl);

/// Throws ShapeMismatch on ill-formed Compose or Block2.
Shape shape_of(const Expr& e);

std::string pretty_print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace domcalc
