#pragma once

#include <string_view>

#include "padic_tate/element.hpp"

namespace padic_tate {

/// Evaluates an element literal exactly and reduces it mod pi^prec.
///
///   expr     := ["+"|"-"] term (("+"|"-") term)*
///   term     := rational ("*" atom)? | atom
///   atom     := "pi" ("^" int)? | "t" ("^" int)? | int "^" int
///   rational := int ("/" int)?
///
/// "t" names the generator of an unramified extension. Exponents may be
/// negative. Denominators whose p-adic valuation exceeds the precision budget
/// raise DenominatorNotInvertible.
Element parse_element(std::string_view text, const Field& field, long prec);

}  // namespace padic_tate
