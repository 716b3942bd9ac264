#pragma once

#include <string_view>

#include "detflow/polyalg/rational_fn.hpp"

namespace detflow {

/// Parses an expression over the coordinates of M_{m,n}.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' ['-'] integer)?
///   primary := number ['i'] | 'i' | 'x' '[' int ']' '[' int ']'
///            | 'det' '(' ints ';' ints ')' | '(' expr ')'
///   number  := digits ['.' digits]
///
/// `det(r1,r2,..; c1,c2,..)` is the minor on the listed rows and columns.
/// Returns a Poly unless a division by a non-constant occurs.
/// Throws ParseError (with a 0-based position) or IndexOutOfRange.
Expression parse_expr(std::string_view src, Shape shape);

/// Same, always as a rational function.
RationalFn parse_rational(std::string_view src, Shape shape);

}  // namespace detflow
