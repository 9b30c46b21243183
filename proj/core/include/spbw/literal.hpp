#pragma once

#include <string>
#include <string_view>

#include "spbw/polymodule.hpp"
#include "spbw/skewpbw.hpp"

namespace spbw {

// Polynomial literals:
//   poly   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := name | var
//   var    := 'x' digit+ ('^' digit+)?
// Whitespace is ignored. A term is read as a word in A and normalized, so
// "x1*y" means the product x1 * y, not y * x1.

/// Throws ParseError (with column) or UnknownName.
SkewPoly parse_poly(const Presentation& p, std::string_view text);
/// Each term starts with a module element name followed by a word in A.
ModulePoly parse_module_poly(const RightModule& M, const Presentation& p, std::string_view text);
/// A relation tail r0 + r1*x1 + ... ; HigherOrderRelation on degree >= 2 terms.
AffinePart parse_affine(const FiniteRing& R, std::size_t n, std::string_view text);

/// Descending order, unit coefficients omitted, zero printed as the zero name.
std::string to_string(const SkewPoly& f);
std::string to_string(const ModulePoly& m);
std::string to_string(const MultiIndex& alpha);
std::string to_string(const GenWord& w, const FiniteRing& R);

}  // namespace spbw
