#pragma once

#include <memory>
#include <string>

namespace domcalc {

/// Nested direct-sum shape: Base is the ambient L^2 space, Pair(s, s) its
/// doubling. Shapes are immutable and shared.
class Shape {
 public:
  static Shape base();
  static Shape pair(const Shape& left, const Shape& right);

  bool is_base() const { return node_ == nullptr; }
  const Shape& left() const;
  const Shape& right() const;

  int depth() const;
  /// Number of Base components, 2^depth for balanced shapes.
  int dim() const;

  std::string to_string() const;

  friend bool operator==(const Shape& a, const Shape& b);

 private:
  struct PairNode;
  explicit Shape(std::shared_ptr<const PairNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const PairNode> node_;
};

inline constexpr int kMaxShapeDepth = 16;

}  // namespace domcalc
