#pragma once

#include <memory>
#include <string>

#include "domcalc/expr.hpp"
#include "domcalc/shape.hpp"

namespace domcalc {

enum class SetKind { whole, trivial, dom_atom, range, kernel, preimage, intersect, direct_sum };

struct SetNode;
using DomainSet = std::shared_ptr<const SetNode>;

/// Symbolic subset of a (nested) Hilbert space. `expr` is the operator of
/// dom_atom / range / kernel / preimage; `a`, `b` are operand sets.
struct SetNode {
  SetKind kind;
  Shape shape = Shape::base();
  Expr expr;
  DomainSet a;
  DomainSet b;
};

namespace sets {
DomainSet whole(Shape s = Shape::base());
DomainSet trivial(Shape s = Shape::base());
DomainSet dom(Expr e);
DomainSet range(Expr e);
DomainSet kernel(Expr e);
DomainSet preimage(Expr e, DomainSet s);
DomainSet intersect(DomainSet a, DomainSet b);
DomainSet direct_sum(DomainSet a, DomainSet b);
}  // namespace sets

bool set_equal(const DomainSet& a, const DomainSet& b);
std::string to_string(const DomainSet& s);

inline bool is(const DomainSet& s, SetKind k) { return s->kind == k; }

}  // namespace domcalc
