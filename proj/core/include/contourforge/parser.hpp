#pragma once

#include <string_view>

#include "contourforge/expr.hpp"

namespace contourforge {

// Grammar (loosest to tightest binding):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-' factor) | power
//   power  := atom ('^' integer)?
//   atom   := number | 'i' | identifier | identifier '(' expr ')' | '(' expr ')'
// Identifiers: z, t, theta, exp, sin, cos, sinh, cosh, sinc. Numbers are
// decimal literals with optional exponent. 'i' is the imaginary unit; 'I' and
// 'j' are rejected. Error offsets are 1-based.
//
// Throws SyntaxError, UnknownIdentifier, ArityError.
ExprPtr parse_expr(std::string_view source);

}  // namespace contourforge
