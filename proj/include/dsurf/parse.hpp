#pragma once

#include <string_view>

#include "dsurf/poly.hpp"

namespace dsurf {

/// Parses a polynomial expression.
///
/// Grammar: identifiers `[A-Za-z][A-Za-z0-9]*`, integer literals, rational
/// literals `a/b`, binary `+ - *`, division by a nonzero constant, `^` with a
/// nonnegative integer exponent, parentheses and unary minus. Multiplication
/// must be explicit.
///
/// Throws ParseError (with byte offset) on malformed text, UnknownVariable for
/// identifiers outside `vars`, NonInvertible for a literal denominator that
/// vanishes in the prime field.
Poly parse_poly(std::string_view text, FieldSpec field, const VarList& vars);

}  // namespace dsurf
