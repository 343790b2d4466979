#ifndef DIRAC_PARSER_HPP
#define DIRAC_PARSER_HPP

#include <string>

#include "dirac/ring.hpp"

namespace dirac {

/// Parses an expression into a fully expanded canonical polynomial.
///
/// Grammar (whitespace insensitive, no implicit multiplication):
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := base ('^' uint)?
///   base     := rational | ident | 'dot' '(' ident ')' | '(' expr ')' | '-' base
///   rational := uint ('/' uint)?
///   ident    := [A-Za-z][A-Za-z0-9_]*
///
/// A '/' divisor must be a nonzero expression in numbers and parameters only.
/// `dot(x)` resolves to the velocity symbol of coordinate x. All errors carry
/// a 1-based line/column.
PhasePoly parse_expression(const std::string& text, const RingPtr& ring, const OrderPtr& order);

} // namespace dirac

#endif
