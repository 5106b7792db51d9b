#pragma once

#include <string_view>

#include "domcalc/atoms.hpp"
#include "domcalc/expr.hpp"

namespace domcalc {

/// Parses the operator DSL:
///
///   expr    := factor {"*" factor}
///   factor  := primary {"'" | "^-1" | "^" nat}
///   primary := ident | "I" | "0" | "(" expr ")" | "[" expr "," expr ";" expr "," expr "]"
///
/// `X * Y` applies Y first. Shapes of I and 0 are inferred from context and
/// default to Base; undeclared atoms act on Base. Throws ParseError or
/// ShapeMismatch.
Expr parse_expr(std::string_view text, const AtomTable& atoms);

}  // namespace domcalc
