#include "domcalc/domain_set.hpp"

namespace domcalc {

namespace {
DomainSet make(SetNode n) { return std::make_shared<const SetNode>(std::move(n)); }
}  // namespace

namespace sets {
DomainSet whole(Shape s) { return make({SetKind::whole, std::move(s)}); }
DomainSet trivial(Shape s) { return make({SetKind::trivial, std::move(s)}); }
DomainSet dom(Expr e) { return make({SetKind::dom_atom, shape_of(e), std::move(e)}); }
DomainSet range(Expr e) { return make({SetKind::range, shape_of(e), std::move(e)}); }
DomainSet kernel(Expr e) { return make({SetKind::kernel, shape_of(e), std::move(e)}); }
DomainSet preimage(Expr e, DomainSet s) {
  Shape sh = shape_of(e);
  return make({SetKind::preimage, std::move(sh), std::move(e), std::move(s)});
}
DomainSet intersect(DomainSet a, DomainSet b) {
  Shape sh = a->shape;
  return make({SetKind::intersect, std::move(sh), nullptr, std::move(a), std::move(b)});
}
DomainSet direct_sum(DomainSet a, DomainSet b) {
  Shape sh = Shape::pair(a->shape, b->shape);
  return make({SetKind::direct_sum, std::move(sh), nullptr, std::move(a), std::move(b)});
}
}  // namespace sets

bool set_equal(const DomainSet& a, const DomainSet& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || !(a->shape == b->shape)) return false;
  switch (a->kind) {
    case SetKind::whole:
    case SetKind::trivial:
      return true;
    case SetKind::dom_atom:
    case SetKind::range:
    case SetKind::kernel:
      return structurally_equal(a->expr, b->expr);
    case SetKind::preimage:
      return structurally_equal(a->expr, b->expr) && set_equal(a->a, b->a);
    case SetKind::intersect:
    case SetKind::direct_sum:
      return set_equal(a->a, b->a) && set_equal(a->b, b->b);
  }
  return false;
}

namespace {

void print(const DomainSet& s, std::string& out) {
  switch (s->kind) {
    case SetKind::whole: out += "whole"; break;
    case SetKind::trivial: out += "{0}"; break;
    case SetKind::dom_atom: out += "dom(" + pretty_print(s->expr) + ")"; break;
    case SetKind::range: out += "ran(" + pretty_print(s->expr) + ")"; break;
    case SetKind::kernel: out += "ker(" + pretty_print(s->expr) + ")"; break;
    case SetKind::preimage:
      out += "pre(" + pretty_print(s->expr) + ", ";
      print(s->a, out);
      out += ")";
      break;
    case SetKind::intersect:
    case SetKind::direct_sum:
      out += "(";
      print(s->a, out);
      out += s->kind == SetKind::intersect ? " ∩ " : " ⊕ ";
      print(s->b, out);
      out += ")";
      break;
  }
}

}  // namespace

std::string to_string(const DomainSet& s) {
  std::string out;
  print(s, out);
  return out;
}

}  // namespace domcalc
