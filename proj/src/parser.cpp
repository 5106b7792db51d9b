#include "domcalc/parser.hpp"

#include <cctype>
#include <vector>

#include "domcalc/errors.hpp"

namespace domcalc {

namespace {

// Shape unification over union-find variables.
class ShapeSolver {
 public:
  int fresh() {
    terms_.push_back({int(terms_.size()), Tag::free, -1, -1});
    return int(terms_.size()) - 1;
  }

  int base() {
    int v = fresh();
    terms_[v].tag = Tag::base;
    return v;
  }

  int pair(int l, int r) {
    int v = fresh();
    terms_[v] = {v, Tag::pair, l, r};
    return v;
  }

  int of_shape(const Shape& s) {
    return s.is_base() ? base() : pair(of_shape(s.left()), of_shape(s.right()));
  }

  void unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    Term& ta = terms_[a];
    Term& tb = terms_[b];
    if (ta.tag == Tag::free) {
      if (occurs(a, b)) throw ShapeMismatch("expression would act on an infinite shape");
      ta.parent = b;
      return;
    }
    if (tb.tag == Tag::free) {
      if (occurs(b, a)) throw ShapeMismatch("expression would act on an infinite shape");
      tb.parent = a;
      return;
    }
    if (ta.tag != tb.tag) throw ShapeMismatch("Base and Pair shapes do not match");
    if (ta.tag == Tag::pair) {
      int al = ta.left, ar = ta.right, bl = tb.left, br = tb.right;
      terms_[a].parent = b;
      unify(al, bl);
      unify(ar, br);
    }
  }

  Shape resolve(int v, int depth = 0) {
    if (depth > kMaxShapeDepth) throw ShapeMismatch("shape nesting deeper than 16");
    v = find(v);
    if (terms_[v].tag != Tag::pair) return Shape::base();
    return Shape::pair(resolve(terms_[v].left, depth + 1), resolve(terms_[v].right, depth + 1));
  }

 private:
  enum class Tag { free, base, pair };
  struct Term {
    int parent;
    Tag tag;
    int left, right;
  };

  int find(int v) {
    while (terms_[v].parent != v) {
      terms_[v].parent = terms_[terms_[v].parent].parent;
      v = terms_[v].parent;
    }
    return v;
  }

  bool occurs(int var, int in) {
    in = find(in);
    if (in == var) return true;
    if (terms_[in].tag != Tag::pair) return false;
    return occurs(var, terms_[in].left) || occurs(var, terms_[in].right);
  }

  std::vector<Term> terms_;
};

struct Raw {
  ExprKind kind;
  std::string atom;
  int exponent = 0;
  std::vector<int> kids;
  int var = -1;
};

class Parser {
 public:
  Parser(std::string_view text, const AtomTable& atoms) : text_(text), atoms_(atoms) {}

  Expr run() {
    int root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("expected '*' or end of input");
    return build(root);
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("parse error at " + std::to_string(pos_) + ": " + what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  int add(Raw r) {
    nodes_.push_back(std::move(r));
    return int(nodes_.size()) - 1;
  }

  int parse_expr() {
    int left = parse_factor();
    while (accept('*')) {
      int right = parse_factor();
      solver_.unify(nodes_[left].var, nodes_[right].var);
      int var = nodes_[left].var;
      left = add({ExprKind::compose, {}, 0, {left, right}, var});
    }
    return left;
  }

  int parse_factor() {
    int e = parse_primary();
    for (;;) {
      if (accept('\'')) {
        e = add({ExprKind::adjoint, {}, 0, {e}, nodes_[e].var});
      } else if (accept('^')) {
        skip_ws();
        if (accept('-')) {
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == '1' &&
              (pos_ + 1 == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            e = add({ExprKind::inverse, {}, 0, {e}, nodes_[e].var});
          } else {
            fail("expected '1' after '^-'");
          }
        } else {
          int n = parse_nat();
          if (n > 1) e = add({ExprKind::power, {}, n, {e}, nodes_[e].var});
        }
      } else {
        return e;
      }
    }
  }

  int parse_nat() {
    skip_ws();
    std::size_t start = pos_;
    long long n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + (text_[pos_] - '0');
      if (n > (1 << 20)) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected exponent");
    if (n < 1) fail("exponent must be positive");
    return int(n);
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected identifier, 'I', '0', '(' or '['");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int e = parse_expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      int a = parse_expr();
      expect(',');
      int b = parse_expr();
      expect(';');
      int d = parse_expr();
      expect(',');
      int w = parse_expr();
      expect(']');
      int s = nodes_[a].var;
      for (int k : {b, d, w}) solver_.unify(s, nodes_[k].var);
      return add({ExprKind::block2, {}, 0, {a, b, d, w}, solver_.pair(s, s)});
    }
    if (c == '0' && !(pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return add({ExprKind::zero, {}, 0, {}, solver_.fresh()});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string id(text_.substr(start, pos_ - start));
      if (id == "I") return add({ExprKind::identity, {}, 0, {}, solver_.fresh()});
      const AtomDecl* d = atoms_.find(id);
      int var = d ? solver_.of_shape(d->shape) : solver_.base();
      return add({ExprKind::atom, id, 0, {}, var});
    }
    fail("expected identifier, 'I', '0', '(' or '['");
  }

  Expr build(int i) {
    const Raw& r = nodes_[i];
    switch (r.kind) {
      case ExprKind::atom: return ex::atom(r.atom, solver_.resolve(r.var));
      case ExprKind::identity: return ex::identity(solver_.resolve(r.var));
      case ExprKind::zero: return ex::zero(solver_.resolve(r.var));
      case ExprKind::adjoint: return ex::adjoint(build(r.kids[0]));
      case ExprKind::inverse: return ex::inverse(build(r.kids[0]));
      case ExprKind::power: return ex::power(build(r.kids[0]), r.exponent);
      case ExprKind::compose: return ex::compose(build(r.kids[0]), build(r.kids[1]));
      case ExprKind::block2:
        return ex::block2(build(r.kids[0]), build(r.kids[1]), build(r.kids[2]), build(r.kids[3]));
    }
    fail("internal parser error");
  }

  std::string_view text_;
  const AtomTable& atoms_;
  std::size_t pos_ = 0;
  std::vector<Raw> nodes_;
  ShapeSolver solver_;
};

}  // namespace

Expr parse_expr(std::string_view text, const AtomTable& atoms) {
  Expr e = Parser(text, atoms).run();
  shape_of(e);
  return e;
}

}  // namespace domcalc
