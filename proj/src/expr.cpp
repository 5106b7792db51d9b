#include "domcalc/expr.hpp"

#include "domcalc/errors.hpp"

namespace domcalc {

namespace {

Expr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

Expr unary(ExprKind k, Expr e) {
  ExprNode n{k};
  n.kids[0] = std::move(e);
  return make(std::move(n));
}

}  // namespace

namespace ex {

Expr atom(std::string id, Shape shape) {
  ExprNode n{ExprKind::atom};
  n.atom = std::move(id);
  n.shape = std::move(shape);
  return make(std::move(n));
}

Expr atom(const AtomDecl& decl) { return atom(decl.id, decl.shape); }

Expr identity(Shape shape) {
  ExprNode n{ExprKind::identity};
  n.shape = std::move(shape);
  return make(std::move(n));
}

Expr zero(Shape shape) {
  ExprNode n{ExprKind::zero};
  n.shape = std::move(shape);
  return make(std::move(n));
}

Expr adjoint(Expr e) { return unary(ExprKind::adjoint, std::move(e)); }
Expr inverse(Expr e) { return unary(ExprKind::inverse, std::move(e)); }

Expr compose(Expr after, Expr first) {
  ExprNode n{ExprKind::compose};
  n.kids[0] = std::move(after);
  n.kids[1] = std::move(first);
  return make(std::move(n));
}

Expr block2(Expr e11, Expr e12, Expr e21, Expr e22) {
  ExprNode n{ExprKind::block2};
  n.kids = {std::move(e11), std::move(e12), std::move(e21), std::move(e22)};
  return make(std::move(n));
}

Expr power(Expr e, int n) {
  if (n < 1) throw OutOfRange("power exponent must be positive");
  if (n == 1) return e;
  ExprNode node{ExprKind::power};
  node.kids[0] = std::move(e);
  node.exponent = n;
  return make(std::move(node));
}

Expr offdiag(Expr upper, Expr lower) {
  Shape s = shape_of(upper);
  return block2(zero(s), std::move(upper), std::move(lower), zero(s));
}

Expr diag(Expr first, Expr second) {
  Shape s = shape_of(first);
  return block2(std::move(first), zero(s), zero(s), std::move(second));
}

Expr swap(Shape s) { return block2(zero(s), identity(s), identity(s), zero(s)); }

}  // namespace ex

Expr declare_atom(AtomTable& table, AtomDecl decl) {
  Expr ref = ex::atom(decl);
  table.declare(std::move(decl));
  return ref;
}

Shape shape_of(const Expr& e) {
  switch (e->kind) {
    case ExprKind::atom:
    case ExprKind::identity:
    case ExprKind::zero:
      return e->shape;
    case ExprKind::adjoint:
    case ExprKind::inverse:
    case ExprKind::power:
      return shape_of(e->kids[0]);
    case ExprKind::compose: {
      Shape a = shape_of(e->kids[0]);
      Shape b = shape_of(e->kids[1]);
      if (!(a == b))
        throw ShapeMismatch("composition of " + a.to_string() + " with " + b.to_string());
      return a;
    }
    case ExprKind::block2: {
      Shape s = shape_of(e->kids[0]);
      for (int i = 1; i < 4; ++i)
        if (!(shape_of(e->kids[i]) == s))
          throw ShapeMismatch("block entries on different shapes");
      return Shape::pair(s, s);
    }
  }
  throw ShapeMismatch("unknown expression kind");
}

namespace {

bool is_primary(const Expr& e) {
  switch (e->kind) {
    case ExprKind::atom:
    case ExprKind::identity:
    case ExprKind::zero:
    case ExprKind::block2:
    case ExprKind::adjoint:
    case ExprKind::inverse:
    case ExprKind::power:
      return true;
    default:
      return false;
  }
}

void print(const Expr& e, std::string& out);

void print_operand(const Expr& e, std::string& out) {
  if (is_primary(e)) {
    print(e, out);
  } else {
    out += '(';
    print(e, out);
    out += ')';
  }
}

void print(const Expr& e, std::string& out) {
  switch (e->kind) {
    case ExprKind::atom: out += e->atom; break;
    case ExprKind::identity: out += 'I'; break;
    case ExprKind::zero: out += '0'; break;
    case ExprKind::adjoint:
      print_operand(e->kids[0], out);
      out += '\'';
      break;
    case ExprKind::inverse:
      print_operand(e->kids[0], out);
      out += "^-1";
      break;
    case ExprKind::power:
      print_operand(e->kids[0], out);
      out += '^' + std::to_string(e->exponent);
      break;
    case ExprKind::compose:
      print(e->kids[0], out);
      out += " * ";
      if (e->kids[1]->kind == ExprKind::compose) {
        out += '(';
        print(e->kids[1], out);
        out += ')';
      } else {
        print(e->kids[1], out);
      }
      break;
    case ExprKind::block2:
      out += '[';
      print(e->kids[0], out);
      out += ", ";
      print(e->kids[1], out);
      out += "; ";
      print(e->kids[2], out);
      out += ", ";
      print(e->kids[3], out);
      out += ']';
      break;
  }
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::atom:
      return a->atom == b->atom && a->shape == b->shape;
    case ExprKind::identity:
    case ExprKind::zero:
      return a->shape == b->shape;
    case ExprKind::power:
      return a->exponent == b->exponent && structurally_equal(a->kids[0], b->kids[0]);
    default:
      for (int i = 0; i < 4; ++i)
        if (!structurally_equal(a->kids[i], b->kids[i])) return false;
      return true;
  }
}

}  // namespace domcalc
