#include "domcalc/shape.hpp"

#include "domcalc/errors.hpp"

namespace domcalc {

struct Shape::PairNode {
  Shape left;
  Shape right;
  int depth;
};

Shape Shape::base() { return Shape(nullptr); }

Shape Shape::pair(const Shape& left, const Shape& right) {
  int d = 1 + std::max(left.depth(), right.depth());
  if (d > kMaxShapeDepth) throw ShapeMismatch("shape nesting deeper than 16");
  return Shape(std::make_shared<const PairNode>(PairNode{left, right, d}));
}

const Shape& Shape::left() const {
  if (!node_) throw ShapeMismatch("Base shape has no halves");
  return node_->left;
}

const Shape& Shape::right() const {
  if (!node_) throw ShapeMismatch("Base shape has no halves");
  return node_->right;
}

int Shape::depth() const { return node_ ? node_->depth : 0; }

int Shape::dim() const {
  return node_ ? node_->left.dim() + node_->right.dim() : 1;
}

std::string Shape::to_string() const {
  if (!node_) return "Base";
  return "Pair(" + node_->left.to_string() + "," + node_->right.to_string() + ")";
}

bool operator==(const Shape& a, const Shape& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

}  // namespace domcalc
