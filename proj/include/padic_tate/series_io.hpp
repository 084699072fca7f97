#pragma once

#include <string>
#include <string_view>

#include "padic_tate/weierstrass.hpp"

namespace padic_tate {

/// Reads {"nvars": m, "degree_cap": D, "terms": [{"exp": [...], "coeff": literal}]}.
/// Coefficients are parsed at absolute precision prec.
StrictSeries series_from_json(std::string_view text, const Field& field, long prec);

/// Writes the same record on one line; coefficients as element literals.
std::string series_to_json(const StrictSeries& s);

}  // namespace padic_tate
