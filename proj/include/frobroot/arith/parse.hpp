#pragma once

#include <string>

#include "frobroot/arith/ratfunc.hpp"

namespace frobroot::arith {

/// Parses the scalar text syntax: integers for the prime field, `g^k` for
/// powers of the field generator, the variable with integer (possibly
/// negative) exponents, `+`, `-`, `*`, parentheses and `^` on parenthesized
/// groups. Examples: `t^-1 + 2*t^3`, `g^3*t^2`, `x^3 + x`, `(1+t)^2`.
/// Throws InvalidInput with the offending position on malformed text.
RatFunc parse_scalar(const Field* F, const std::string& text, char var = 't');
/// Like parse_scalar but requires a polynomial.
Poly parse_poly(const Field* F, const std::string& text, char var = 'x');
/// A constant field element.
Fe parse_element(const Field* F, const std::string& text);

}  // namespace frobroot::arith
