#pragma once

#include <string_view>

#include "pn/poly.hpp"

namespace pn {

/// Parses an expression over the chart's coordinates into canonical form.
///
///   EXPR     := ['-'] TERM (('+'|'-') TERM)*
///   TERM     := FACTOR ('*' FACTOR)*
///   FACTOR   := BASE ('^' UINT)?
///   BASE     := RATIONAL | COORD | '(' EXPR ')'
///   RATIONAL := '-'? UINT ('/' UINT)?
///
/// Whitespace is insignificant. Throws ParseError with a byte offset on
/// syntax errors, unknown identifiers, and non-literal exponents.
Poly parse_expr(std::string_view text, const ChartPtr& space);

}  // namespace pn
